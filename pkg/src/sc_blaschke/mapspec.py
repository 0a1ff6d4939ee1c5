"""Map specifications and the boundary function they induce.

An interior map is described by ``f''/f' = 2 (B1/B2) / (1 - z B1/B2)`` and an
exterior map (``f(0) = inf``) by ``z f''/f' = 2 / (z^2 B1/B2 - 1)``. Both are
governed by the circle map ``w = z^m B1/B2`` with ``m = 1`` or ``m = 2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .blaschke import (
    BlaschkeProduct,
    boundary_arc_increment,
    boundary_derivative_magnitude,
    common_zero_check,
    evaluate,
)


class Kind(str, enum.Enum):
    INTERIOR = "interior"
    EXTERIOR = "exterior"

    @property
    def power(self) -> int:
        """Exponent ``m`` of ``z`` in the circle map ``z^m B1/B2``."""
        return 1 if self is Kind.INTERIOR else 2


@dataclass(frozen=True)
class MapSpec:
    kind: Kind
    b1: BlaschkeProduct
    b2: BlaschkeProduct

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if not common_zero_check(self.b1, self.b2):
            raise ValueError("B1 and B2 have a common zero")

    @classmethod
    def interior(cls, b1=None, b2=None) -> "MapSpec":
        return cls(Kind.INTERIOR, b1 or BlaschkeProduct(), b2 or BlaschkeProduct())

    @classmethod
    def exterior(cls, b1=None, b2=None) -> "MapSpec":
        return cls(Kind.EXTERIOR, b1 or BlaschkeProduct(), b2 or BlaschkeProduct())

    @property
    def m(self) -> int:
        return self.kind.power

    @property
    def d1(self) -> int:
        return self.b1.degree

    @property
    def d2(self) -> int:
        return self.b2.degree

    @property
    def n(self) -> int:
        return self.d1 + self.d2

    @property
    def vertex_count(self) -> int:
        return self.n + self.m

    @property
    def degree_of_circle_map(self) -> int:
        """Topological degree ``m + d1 - d2`` of ``z^m B1/B2`` on the circle."""
        return self.m + self.d1 - self.d2

    @property
    def max_zero_modulus(self) -> float:
        zs = self.b1.zeros + self.b2.zeros
        return max((abs(a) for a in zs), default=0.0)

    def rotated(self, sigma: float) -> "MapSpec":
        """Spec of ``z -> f(exp(i*sigma) z)``; pre-vertex arguments shift by ``-sigma``."""
        return MapSpec(self.kind, self.b1.rotated(sigma, extra=self.m * sigma), self.b2.rotated(sigma))


def circle_map(spec: MapSpec, z):
    """``w(z) = z^m B1(z) / B2(z)``."""
    zz = np.asarray(z, dtype=complex)
    return zz**spec.m * evaluate(spec.b1, zz) / evaluate(spec.b2, zz)


def phi_prime(spec: MapSpec, t):
    """Derivative of the continuous argument of ``w(e^{it})``.

    ``m + |B1'(e^{it})| - |B2'(e^{it})|``; positive at convex pre-vertices and
    negative at concave ones.
    """
    return (
        spec.m
        + boundary_derivative_magnitude(spec.b1, t)
        - boundary_derivative_magnitude(spec.b2, t)
    )


def phase_increments(spec: MapSpec, t0, h: float):
    """Exact change of ``arg w(e^{it})`` over each ``[t0, t0 + h]`` (``h < pi``)."""
    return spec.m * h + boundary_arc_increment(spec.b1, t0, h) - boundary_arc_increment(spec.b2, t0, h)


def wrap_angle(x):
    """Map angles to ``(-pi, pi]``."""
    y = np.mod(np.asarray(x) + math.pi, 2.0 * math.pi) - math.pi
    return np.where(y == -math.pi, math.pi, y)
