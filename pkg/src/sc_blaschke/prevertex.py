"""Pre-vertices as unimodular roots of ``z^m B1(z) = B2(z)``.

The main route clears denominators to a polynomial and finds all of its roots
by Aberth-Ehrlich simultaneous iteration. ``oracle_prevertices`` is an
independent check that only samples the argument of ``w(e^{it})`` on the
circle and bisects its crossings of multiples of ``2 pi``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .blaschke import TWO_PI, linear_factor_coefficients
from .errors import DegenerateAngle, DegreeCollapse, Inadmissible, OracleMiss
from .mapspec import Kind, MapSpec, circle_map, phase_increments, phi_prime, wrap_angle

DEFAULT_TOL = 1e-8
#: ``|phi'|`` below this is reported as a degenerate angle instead of a label
DEGENERATE_PHI = 1e-10
LEADING_COEFF_TOL = 1e-12


class Label(str, enum.Enum):
    CONVEX = "convex"
    CONCAVE = "concave"


@dataclass(frozen=True)
class Prevertex:
    t: float
    beta: float
    phi_prime: float | None = None

    @property
    def z(self) -> complex:
        return complex(math.cos(self.t), math.sin(self.t))

    @property
    def label(self) -> Label:
        return Label.CONVEX if self.beta > 0 else Label.CONCAVE


@dataclass(frozen=True)
class PrevertexSet:
    """Pre-vertices sorted by argument, with their exterior angles ``2 pi beta``.

    ``spec`` is ``None`` for formal configurations built directly from
    arguments and angles (see :meth:`from_angles`).
    """

    kind: Kind
    points: tuple[Prevertex, ...]
    spec: MapSpec | None = None
    roots: np.ndarray | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_angles(cls, ts, betas, kind=Kind.INTERIOR) -> "PrevertexSet":
        ts = np.mod(np.asarray(ts, dtype=float), TWO_PI)
        betas = np.asarray(betas, dtype=float)
        if ts.shape != betas.shape:
            raise ValueError("ts and betas must have the same length")
        order = np.argsort(ts)
        pts = tuple(Prevertex(float(ts[i]), float(betas[i])) for i in order)
        return cls(Kind(kind), pts)

    def __len__(self):
        return len(self.points)

    @property
    def ts(self) -> np.ndarray:
        return np.array([p.t for p in self.points])

    @property
    def zs(self) -> np.ndarray:
        return np.exp(1j * self.ts)

    @property
    def betas(self) -> np.ndarray:
        return np.array([p.beta for p in self.points])

    @property
    def labels(self) -> list[Label]:
        return [p.label for p in self.points]

    def gaps(self) -> np.ndarray:
        """Arguments ``t_{k+1} - t_k`` of consecutive pre-vertices, cyclically."""
        ts = self.ts
        return np.diff(np.append(ts, ts[0] + TWO_PI))


def to_polynomial(spec: MapSpec) -> np.ndarray:
    """Ascending coefficients of ``z^m c1 A(z) B~(z) - c2 B(z) A~(z)``.

    ``A``/``B`` are the numerators of ``B1``/``B2`` and ``A~``/``B~`` the
    reflected denominators. Trailing (numerically zero) coefficients are
    not trimmed; a vanishing leading coefficient raises ``DegreeCollapse``.
    """
    a, b = spec.b1.zeros, spec.b2.zeros
    left = spec.b1.constant * np.convolve(
        linear_factor_coefficients(a, reflected=False), linear_factor_coefficients(b, reflected=True)
    )
    left = np.concatenate([np.zeros(spec.m, dtype=complex), left])
    right = spec.b2.constant * np.convolve(
        linear_factor_coefficients(b, reflected=False), linear_factor_coefficients(a, reflected=True)
    )
    coeffs = left.copy()
    coeffs[: right.size] -= right
    if abs(coeffs[-1]) < LEADING_COEFF_TOL:
        raise DegreeCollapse(
            f"leading coefficient {abs(coeffs[-1]):.3g} vanishes; B2 has a zero at the origin"
        )
    return coeffs


def _horner(coeffs, z):
    """Values of the polynomial and its derivative (ascending coefficients)."""
    p = np.zeros_like(z) + coeffs[-1]
    dp = np.zeros_like(z)
    for c in coeffs[-2::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def aberth_roots(coeffs, maxiter: int = 500, polish: int = 5) -> np.ndarray:
    """All roots of a polynomial by Aberth-Ehrlich iteration.

    Starting points sit on the unit circle with a small index-dependent radial
    perturbation, which suits polynomials whose roots are (mostly) unimodular.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    deg = coeffs.size - 1
    if deg < 1:
        return np.empty(0, dtype=complex)
    if deg == 1:
        return np.array([-coeffs[0] / coeffs[1]])
    k = np.arange(deg)
    z = (1.0 + 1e-3 * np.exp(2.1j * k)) * np.exp(1j * (TWO_PI * k / deg + 0.4))
    for _ in range(maxiter):
        p, dp = _horner(coeffs, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            step = ratio / (1.0 - ratio * inv.sum(axis=1))
        step = np.where(np.isfinite(step), step, 0.0)
        z = z - step
        # roundoff floor; the Newton polish below takes care of the last digits
        if np.max(np.abs(step)) <= 1e-14 * max(1.0, np.max(np.abs(z))):
            break
    for _ in range(polish):
        p, dp = _horner(coeffs, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(dp != 0, p / dp, 0.0)
        z = z - step
    return z


def _normalise_t(t, snap=1e-13):
    t = np.mod(t, TWO_PI)
    return np.where(t >= TWO_PI - snap, 0.0, t)


def solve_prevertices(spec: MapSpec, tol: float = DEFAULT_TOL) -> PrevertexSet:
    """Pre-vertices of ``spec`` with exterior angles and convex/concave labels.

    Raises
    ------
    Inadmissible
        When a root leaves the circle by more than ``tol``, two roots are
        closer than ``10 tol``, or a root is numerically multiple.
    DegreeCollapse
        Propagated from :func:`to_polynomial`.
    """
    if not 1e-12 <= tol <= 1e-6:
        raise ValueError("tol must lie in [1e-12, 1e-6]")
    coeffs = to_polynomial(spec)
    roots = aberth_roots(coeffs)
    off = np.abs(np.abs(roots) - 1.0)
    if np.any(off > tol):
        raise Inadmissible(
            f"{int(np.sum(off > tol))} of {roots.size} roots are off the unit circle "
            f"(max deviation {off.max():.3g})",
            roots=roots,
        )
    if roots.size > 1:
        sep = np.abs(roots[:, None] - roots[None, :])
        np.fill_diagonal(sep, np.inf)
        if sep.min() <= 10 * tol:
            raise Inadmissible(f"root cluster detected (separation {sep.min():.3g})", roots=roots)
    _, dp = _horner(coeffs, roots)
    if np.any(np.abs(dp) <= 1e-8 * np.max(np.abs(coeffs))):
        raise Inadmissible("multiple root detected", roots=roots)
    ts = np.sort(_normalise_t(np.angle(roots)))
    return exterior_angles(spec, ts, roots=roots)


def exterior_angles(spec: MapSpec, ts, roots=None) -> PrevertexSet:
    """Fill ``beta_k = 1/phi'(t_k)`` and labels for pre-vertex arguments ``ts``."""
    ts = np.asarray(ts, dtype=float)
    dphi = np.atleast_1d(phi_prime(spec, ts))
    bad = np.abs(dphi) < DEGENERATE_PHI
    if np.any(bad):
        raise DegenerateAngle(f"phi' vanishes at t = {ts[bad][0]:.12g}")
    pts = tuple(Prevertex(float(t), float(1.0 / d), float(d)) for t, d in zip(ts, dphi))
    return PrevertexSet(spec.kind, pts, spec, roots)


def oracle_prevertices(spec: MapSpec, samples: int = 4096, xtol: float = 1e-12) -> np.ndarray:
    """Arguments ``t`` with ``w(e^{it}) = 1`` found by sampling and bisection.

    ``arg w(e^{it})`` is sampled on a uniform grid, unwrapped, and every
    crossing of a multiple of ``2 pi`` is bisected down to ``xtol``.

    Raises
    ------
    OracleMiss
        If the grid is too coarse: the argument moves by more than ``pi``
        between samples, or two crossings are closer than ``2 pi / samples``.
    """
    if samples < 1024:
        raise ValueError("samples must be at least 1024")
    h = TWO_PI / samples
    t = h * np.arange(samples + 1)
    ang = np.angle(circle_map(spec, np.exp(1j * t)))
    step = wrap_angle(np.diff(ang))
    if np.any(np.abs(phase_increments(spec, t[:-1], h)) >= math.pi):
        raise OracleMiss("argument moves by more than pi between samples")
    phase = np.concatenate([[ang[0]], ang[0] + np.cumsum(step)]) / TWO_PI
    # t = 2 pi is t = 0: close the loop on an exact integer winding, in integer
    # arithmetic (phase[0] + winding may round onto an integer)
    winding = round(phase[-1] - phase[0])
    phase[-1] = phase[0] + winding
    ceil = np.ceil(phase).astype(int)
    floor = np.floor(phase).astype(int)
    ceil[-1] = ceil[0] + winding
    floor[-1] = floor[0] + winding

    found = []
    for i in range(samples):
        g0, g1 = phase[i], phase[i + 1]
        if g1 >= g0:
            js = np.arange(ceil[i], ceil[i + 1])
        else:
            js = np.arange(floor[i], floor[i + 1], -1)
        if js.size > 1:
            raise OracleMiss(f"{js.size} crossings inside one sampling interval")
        if js.size == 1:
            found.append(_bisect_crossing(spec, t[i], t[i + 1], g0 * TWO_PI, int(js[0]), xtol))
    ts = np.sort(_normalise_t(np.array(found), snap=2 * xtol))
    if ts.size > 1:
        gaps = np.diff(np.append(ts, ts[0] + TWO_PI))
        if gaps.min() < h:
            raise OracleMiss("consecutive crossings closer than the sampling step")
    return ts


def _bisect_crossing(spec, lo, hi, phase_lo, j, xtol):
    target = TWO_PI * j

    def f(t):
        a = float(np.angle(circle_map(spec, np.exp(1j * t))))
        return phase_lo + float(wrap_angle(a - phase_lo)) - target

    flo = f(lo)
    if flo == 0.0:
        return lo
    for _ in range(200):
        if hi - lo <= xtol:
            break
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)
