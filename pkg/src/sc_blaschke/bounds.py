"""Separation of pre-vertices and location of Blaschke zeros.

All transcendental equations here have a right-hand side that is monotone in
the unknown, so they are solved by plain bisection.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .blaschke import BlaschkeProduct, evaluate
from .errors import PreconditionFailure
from .mapspec import Kind, MapSpec

BISECT_TOL = 1e-12
BISECT_MAXITER = 200
#: constant used for the unspecified O(eps^2) remainder of the concentration window
COROLLARY7_C = 10.0
CONVEXITY_RADIUS = 2.0 - math.sqrt(3.0)


class Extremum(str, enum.Enum):
    MIN_SEP = "min"
    MAX_SEP = "max"


class Pair(str, enum.Enum):
    CONVEX_CONVEX = "convex-convex"
    CONCAVE_CONCAVE = "concave-concave"


@dataclass(frozen=True)
class SeparationBound:
    kind: Kind
    n: int
    r: float
    two_theta_min: float
    two_psi_max: float


@dataclass(frozen=True)
class RadiusBound:
    kind: Kind
    d1: int
    d2: int
    r_min: float


def _check_nr(n, r):
    if int(n) != n or n < 1:
        raise PreconditionFailure(f"n must be a positive integer, got {n!r}")
    if not 0.0 <= r < 1.0:
        raise PreconditionFailure(f"r must lie in [0, 1), got {r!r}")


def _bisect(func, lo, hi, tol=BISECT_TOL, maxiter=BISECT_MAXITER):
    """Root of an increasing function with ``func(lo) < 0 < func(hi)``."""
    for _ in range(maxiter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if func(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def separation_residual(kind, n, r, angle, extremum=Extremum.MIN_SEP) -> float:
    """``m x + 2 n arctan(lam^{+-1} tan(x/2)) - pi``, zero at the half-separation."""
    m = Kind(kind).power
    lam = (1.0 + r) / (1.0 - r)
    if Extremum(extremum) is Extremum.MAX_SEP:
        lam = 1.0 / lam
    return m * angle + 2.0 * n * math.atan(lam * math.tan(0.5 * angle)) - math.pi


def min_separation(kind, n: int, r: float) -> float:
    """Smallest possible gap ``2 theta`` between consecutive pre-vertices of a
    convex map whose Blaschke zeros satisfy ``|a_k| <= r``."""
    _check_nr(n, r)
    m = Kind(kind).power
    theta = _bisect(lambda x: separation_residual(kind, n, r, x, Extremum.MIN_SEP), 0.0, math.pi / m)
    return 2.0 * theta


def max_separation(kind, n: int, r: float) -> float:
    """Largest possible gap ``2 psi``; see :func:`min_separation`."""
    _check_nr(n, r)
    m = Kind(kind).power
    psi = _bisect(lambda x: separation_residual(kind, n, r, x, Extremum.MAX_SEP), 0.0, math.pi / m)
    return 2.0 * psi


def separation_bound(kind, n: int, r: float) -> SeparationBound:
    return SeparationBound(Kind(kind), n, r, min_separation(kind, n, r), max_separation(kind, n, r))


def corollary7_window(kind, n: int, eps: float) -> tuple[float, float]:
    """``(pi/(m + (1+2 eps) n), pi/(m + (1-2 eps) n))``, the leading-order window
    for the half-separations when all zeros satisfy ``|a_k| <= eps``."""
    if not 0.0 <= eps <= 0.05:
        raise PreconditionFailure("eps must lie in [0, 0.05]")
    _check_nr(n, 0.0)
    m = Kind(kind).power
    return math.pi / (m + (1.0 + 2.0 * eps) * n), math.pi / (m + (1.0 - 2.0 * eps) * n)


def unimodular_root(rhs: complex, degree: int) -> complex:
    """Principal ``degree``-th root of a unimodular number."""
    return complex(np.exp(1j * np.angle(rhs) / degree))


def extremal_configuration(kind, n: int, r: float, which=Extremum.MIN_SEP) -> BlaschkeProduct:
    """Degree-``n`` product (rotation 1) with every zero at ``r u`` that attains the bound.

    ``u`` solves ``u^(n+m) = -1`` for the minimum and ``u^(n+m) = (-1)^(n+m-1)``
    for the maximum separation.
    """
    _check_nr(n, r)
    m = Kind(kind).power
    if Extremum(which) is Extremum.MIN_SEP:
        u = unimodular_root(-1.0, n + m)
    else:
        u = unimodular_root((-1.0) ** (n + m - 1), n + m)
    return BlaschkeProduct(0.0, (r * u,) * n)


def extremal_pair(kind, n: int, r: float, which=Extremum.MIN_SEP) -> tuple[complex, complex]:
    """The two pre-vertices of the extremal configuration that realise the bound."""
    m = Kind(kind).power
    b = extremal_configuration(kind, n, r, which)
    u = b.zeros[0] / r if r > 0 else (
        unimodular_root(-1.0, n + m) if Extremum(which) is Extremum.MIN_SEP
        else unimodular_root((-1.0) ** (n + m - 1), n + m)
    )
    if Extremum(which) is Extremum.MIN_SEP:
        half = 0.5 * min_separation(kind, n, r)
        return u * np.exp(1j * half), u * np.exp(-1j * half)
    half = 0.5 * max_separation(kind, n, r)
    return -u * np.exp(1j * half), -u * np.exp(-1j * half)


def mixed_separation_sides(d1: int, d2: int, r: float, two_delta: float, kind=Kind.INTERIOR) -> tuple[float, float]:
    """Lower and upper sides of the separation inequality for a gap ``2 delta``.

    ``delta + 2 d1 arctan(x/lam) - 2 d2 arctan(lam x)`` and
    ``delta + 2 d1 arctan(lam x) - 2 d2 arctan(x/lam)`` with
    ``x = tan(delta/2)``, ``lam = (1+r)/(1-r)``; exterior maps use ``2 delta``
    in place of the lone ``delta``.
    """
    if not 0.0 <= r < 1.0:
        raise PreconditionFailure("r must lie in [0, 1)")
    if not 0.0 < two_delta < 2.0 * math.pi:
        raise PreconditionFailure("two_delta must lie in (0, 2 pi)")
    delta = 0.5 * two_delta
    lead = Kind(kind).power * delta
    x = math.tan(0.5 * delta)
    lam = (1.0 + r) / (1.0 - r)
    lower = lead + 2 * d1 * math.atan(x / lam) - 2 * d2 * math.atan(lam * x)
    upper = lead + 2 * d1 * math.atan(lam * x) - 2 * d2 * math.atan(x / lam)
    return lower, upper


def mixed_separation_check(d1, d2, r, two_delta, pair=Pair.CONVEX_CONVEX, kind=Kind.INTERIOR, tol=1e-12) -> bool:
    """``True`` when ``lower <= T <= upper`` with ``T = pi`` (convex pair) or ``-pi`` (concave pair)."""
    lower, upper = mixed_separation_sides(d1, d2, r, two_delta, kind)
    target = math.pi if Pair(pair) is Pair.CONVEX_CONVEX else -math.pi
    return lower - tol <= target <= upper + tol


def zero_radius_lower_bound(kind, d1: int, d2: int) -> RadiusBound:
    """Smallest radius that can contain all zeros of ``B1`` and ``B2`` when ``d2 >= 1``.

    Both terms come from ``phi'`` at one concave (``phi' <= -2``) and one
    convex (``phi' > 0``) pre-vertex.
    """
    kind = Kind(kind)
    if d2 < 1:
        raise PreconditionFailure("the zero-location bound needs d2 >= 1")
    if d1 < 0:
        raise PreconditionFailure("d1 must be non-negative")
    if kind is Kind.INTERIOR:
        s1 = math.sqrt(4 * d1 * d2 + 9)
        s2 = math.sqrt(1 + 4 * d1 * d2)
        first = (s1 + 3 - 2 * d2) / (s1 + 3 + 2 * d2)
        second = (2 * d2 - 1 - s2) / (2 * d2 + 1 + s2)
    else:
        s1 = math.sqrt(d1 * d2 + 4)
        s2 = math.sqrt(1 + d1 * d2)
        first = (s1 + 2 - d2) / (s1 + 2 + d2)
        second = (d2 - 1 - s2) / (d2 + 1 + s2)
    return RadiusBound(kind, d1, d2, max(first, second))


def convexity_radius_check(spec: MapSpec, samples: int = 512, rel_tol: float = 1e-12) -> bool:
    """Necessary condition ``|z B1(z)| < |B2(z)|`` on ``|z| <= 2 - sqrt(3)``.

    Checked on ``samples`` points of the circle ``|z| = 2 - sqrt(3)`` (where
    equality is allowed up to ``rel_tol``; the Koebe function attains it)
    and strictly on a polar grid inside it.
    """
    if spec.kind is not Kind.INTERIOR:
        raise PreconditionFailure("the convexity-radius test applies to interior maps")
    if samples < 512:
        raise PreconditionFailure("samples must be at least 512")
    t = 2.0 * math.pi * np.arange(samples) / samples
    rim = CONVEXITY_RADIUS * np.exp(1j * t)
    lhs = np.abs(rim * evaluate(spec.b1, rim))
    rhs = np.abs(evaluate(spec.b2, rim))
    if np.any(lhs > rhs * (1.0 + rel_tol)):
        return False
    radii = CONVEXITY_RADIUS * np.linspace(0.0, 1.0, 17)[1:-1]
    thetas = 2.0 * math.pi * np.arange(64) / 64
    inner = np.concatenate([[0j], np.outer(radii, np.exp(1j * thetas)).ravel()])
    lhs = np.abs(inner * evaluate(spec.b1, inner))
    rhs = np.abs(evaluate(spec.b2, inner))
    return bool(np.all(lhs < rhs))
