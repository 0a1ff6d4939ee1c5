"""Finite Blaschke products on the unit disk."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import PoleEvaluation

TWO_PI = 2.0 * math.pi

#: zeros closer than this to the unit circle are rejected
DISK_MARGIN = 1e-12
#: evaluation points closer than this to a pole raise ``PoleEvaluation``
POLE_GUARD = 1e-14
#: two zeros closer than this count as a common zero
COMMON_ZERO_TOL = 1e-12


def _as_zero(value) -> complex:
    a = complex(value)
    if not (math.isfinite(a.real) and math.isfinite(a.imag)):
        raise ValueError(f"zero must be finite, got {value!r}")
    if abs(a) >= 1.0 - DISK_MARGIN:
        raise ValueError(f"zero {a} is not strictly inside the unit disk")
    return a


@dataclass(frozen=True)
class BlaschkeProduct:
    """``c * prod (z - a_k) / (1 - conj(a_k) z)`` with ``c = exp(i*rotation)``.

    The rotation is kept as an angle in ``[0, 2*pi)`` so that ``|c| = 1`` holds
    exactly. Zeros are stored in the order given.
    """

    rotation: float = 0.0
    zeros: tuple[complex, ...] = field(default_factory=tuple)

    def __post_init__(self):
        rot = float(self.rotation)
        if not math.isfinite(rot):
            raise ValueError("rotation must be finite")
        object.__setattr__(self, "rotation", rot % TWO_PI)
        object.__setattr__(self, "zeros", tuple(_as_zero(a) for a in self.zeros))

    @classmethod
    def from_zeros(cls, zeros: Iterable = (), rotation: float = 0.0) -> "BlaschkeProduct":
        return cls(rotation=rotation, zeros=tuple(zeros))

    @property
    def degree(self) -> int:
        return len(self.zeros)

    @property
    def constant(self) -> complex:
        """The unimodular factor ``c``."""
        return complex(math.cos(self.rotation), math.sin(self.rotation))

    @property
    def zeros_array(self) -> np.ndarray:
        return np.asarray(self.zeros, dtype=complex)

    def __call__(self, z):
        return evaluate(self, z)

    def __mul__(self, other: "BlaschkeProduct") -> "BlaschkeProduct":
        if not isinstance(other, BlaschkeProduct):
            return NotImplemented
        return BlaschkeProduct(self.rotation + other.rotation, self.zeros + other.zeros)

    def rotated(self, sigma: float, extra: float = 0.0) -> "BlaschkeProduct":
        """Return ``z -> exp(i*extra) * B(exp(i*sigma) z)`` as a Blaschke product."""
        shift = complex(math.cos(sigma), -math.sin(sigma))
        return BlaschkeProduct(
            self.rotation + extra + sigma * self.degree,
            tuple(a * shift for a in self.zeros),
        )


def evaluate(b: BlaschkeProduct, z):
    """Evaluate ``b`` at ``z`` (scalar or array), factor by factor.

    Raises
    ------
    PoleEvaluation
        If ``z`` lies within ``POLE_GUARD`` of a pole ``1/conj(a_k)``.
    """
    zz = np.asarray(z, dtype=complex)
    out = np.full(zz.shape, b.constant, dtype=complex)
    for a in b.zeros:
        if a != 0:
            pole = 1.0 / a.conjugate()
            if np.any(np.abs(zz - pole) <= POLE_GUARD):
                raise PoleEvaluation(f"evaluation at the pole {pole} of factor {a}")
        out *= (zz - a) / (1.0 - a.conjugate() * zz)
    if np.ndim(z) == 0:
        return complex(out)
    return out


def boundary_derivative_magnitude(b: BlaschkeProduct, t):
    """``|B'(e^{it})| = sum_k (1 - |a_k|^2) / |e^{it} - a_k|^2``.

    Each term is the Poisson kernel of one zero, so the result is also the
    derivative of the continuous argument of ``B(e^{it})``.
    """
    tt = np.asarray(t, dtype=float)
    z = np.exp(1j * tt)
    out = np.zeros(tt.shape)
    for a in b.zeros:
        out += (1.0 - abs(a) ** 2) / np.abs(z - a) ** 2
    if np.ndim(t) == 0:
        return float(out)
    return out


def boundary_arc_increment(b: BlaschkeProduct, t0, h: float):
    """Exact change of ``arg B(e^{it})`` over ``[t0, t0 + h]`` for ``0 <= h < pi``.

    Per zero ``a = r e^{i theta}`` the Poisson kernel integrates to
    ``2 atan2(lam sin(x/2), cos(x/2))`` with ``x = t - theta`` and
    ``lam = (1 + r)/(1 - r)``.
    """
    t0 = np.asarray(t0, dtype=float)
    out = np.zeros(t0.shape)
    for a in b.zeros:
        r, theta = abs(a), np.angle(a)
        lam = (1.0 + r) / (1.0 - r)
        x0 = np.mod(t0 - theta + math.pi, TWO_PI) - math.pi
        x1 = x0 + h
        out += 2.0 * (
            np.arctan2(lam * np.sin(0.5 * x1), np.cos(0.5 * x1))
            - np.arctan2(lam * np.sin(0.5 * x0), np.cos(0.5 * x0))
        )
    return out


def common_zero_check(b1: BlaschkeProduct, b2: BlaschkeProduct, tol: float = COMMON_ZERO_TOL) -> bool:
    """True when ``b1`` and ``b2`` share no zero (up to ``tol``)."""
    for a in b1.zeros:
        for b in b2.zeros:
            if abs(a - b) <= tol:
                return False
    return True


def linear_factor_coefficients(zeros: Sequence[complex], reflected: bool) -> np.ndarray:
    """Ascending coefficients of ``prod (z - a)`` or, if ``reflected``, ``prod (1 - conj(a) z)``."""
    coeffs = np.array([1.0 + 0j])
    for a in zeros:
        factor = np.array([1.0, -np.conj(a)]) if reflected else np.array([-a, 1.0])
        coeffs = np.convolve(coeffs, factor)
    return coeffs
