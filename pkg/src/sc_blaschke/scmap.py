"""Boundary function, vertex classification, univalence tests and polygon tracing.

The map itself is never needed in closed form. Given pre-vertices ``z_k`` and
exterior angles ``2 pi beta_k`` the derivative is

* interior: ``f'(z) = a * prod (1 - z/z_k)^(-2 beta_k)``, normalised by ``f(0) = 0``;
* exterior: ``f'(z) = a * z^-2 * prod (1 - z/z_k)^(2 beta_k)``, normalised by
  ``f(z) + a/z -> 0`` as ``z -> 0``.

``(1 - z/z_k)`` differs from ``(z - z_k)`` by a constant, so these are the usual
Schwarz-Christoffel formulas up to the choice of ``a``; principal logarithms of
``1 - z/z_k`` are continuous on the closed disk minus ``z_k``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate
from shapely.geometry import LinearRing, LineString
from shapely.ops import polygonize, unary_union

from .blaschke import TWO_PI
from .errors import CountMismatch, DivergentEdge, UnwrapFailure, AsymmetricInput
from .mapspec import Kind, MapSpec, circle_map, phase_increments, phi_prime, wrap_angle
from .prevertex import Label, PrevertexSet, exterior_angles
from .quadrature import adaptive, gauss_legendre, jacobi_interval, legendre_interval

__all__ = [
    "phi_prime",
    "exterior_angles",
    "VertexCounts",
    "vertex_counts",
    "winding_degree",
    "arc_increments",
    "univalence_bound",
    "theorem5_threshold",
    "univalence_bound_symmetric",
    "PolygonTrace",
    "trace_polygon",
    "Injectivity",
    "grid_injectivity",
    "boundary_curve",
    "symmetry_condition",
]

#: parameter distance at which edges running to a vertex at infinity are cut
INFINITE_CUTOFF = 1e-3


# ---------------------------------------------------------------- counting


@dataclass(frozen=True)
class VertexCounts:
    convex: int
    concave: int
    a_runs: int
    b_switches: int
    c_runs: int


def vertex_counts(pvs: PrevertexSet, check: bool = True) -> VertexCounts:
    """Count convex/concave pre-vertices and the label pairs of consecutive ones.

    With ``check`` the degree identities ``concave == d2`` and
    ``convex == d1 + m`` are enforced (``CountMismatch`` otherwise).
    """
    labels = pvs.labels
    convex = sum(lab is Label.CONVEX for lab in labels)
    concave = len(labels) - convex
    a = b = c = 0
    for lab, nxt in zip(labels, labels[1:] + labels[:1]):
        if lab is not nxt:
            b += 1
        elif lab is Label.CONVEX:
            a += 1
        else:
            c += 1
    counts = VertexCounts(convex, concave, a, b, c)
    if check and pvs.spec is not None:
        spec = pvs.spec
        if concave != spec.d2 or convex != spec.d1 + spec.m:
            raise CountMismatch(
                f"{convex} convex / {concave} concave vertices, expected "
                f"{spec.d1 + spec.m} / {spec.d2}"
            )
    return counts


def winding_degree(spec: MapSpec, samples: int = 4096) -> int:
    """Winding number of ``t -> z^m B1/B2 (e^{it})`` by sampled unwrapping.

    Raises ``UnwrapFailure`` when the argument can move by more than ``pi``
    between neighbouring samples.
    """
    if samples < 1024:
        raise ValueError("samples must be at least 1024")
    h = TWO_PI / samples
    t = h * np.arange(samples + 1)
    ang = np.angle(circle_map(spec, np.exp(1j * t)))
    if np.any(np.abs(phase_increments(spec, t[:-1], h)) >= math.pi):
        raise UnwrapFailure(f"{samples} samples are too coarse for this spec")
    total = np.sum(wrap_angle(np.diff(ang)))
    return int(round(total / TWO_PI))


def arc_increments(pvs: PrevertexSet) -> np.ndarray:
    """``int phi'`` over each arc between consecutive pre-vertices (adaptive quadrature)."""
    spec = pvs.spec
    if spec is None:
        raise ValueError("arc increments need a spec")
    ts = pvs.ts
    ends = np.append(ts[1:], ts[0] + TWO_PI)
    out = []
    for lo, hi in zip(ts, ends):
        # peaks of the Poisson kernels sit at the arguments of the zeros
        peaks = [
            (np.angle(a) - lo) % TWO_PI + lo for a in spec.b1.zeros + spec.b2.zeros if a != 0
        ]
        pts = sorted(p for p in peaks if lo < p < hi)
        val, _ = integrate.quad(
            lambda s: phi_prime(spec, s), lo, hi, points=pts or None, limit=400, epsabs=1e-11, epsrel=1e-11
        )
        out.append(val)
    return np.array(out)


# ---------------------------------------------------------------- univalence


def univalence_bound(betas, tol: float = 1e-12) -> bool:
    """Sufficient univalence test ``sum |beta_k| <= 2`` (for ``sum beta_k = 1``).

    ``False`` is inconclusive.
    """
    betas = np.asarray(betas, dtype=float)
    if abs(betas.sum() - 1.0) > 1e-9:
        raise ValueError(f"exterior angles must sum to 1, got {betas.sum():.12g}")
    return bool(np.abs(betas).sum() <= 2.0 + tol)


def theorem5_threshold(beta_plus: float, beta_minus: float) -> float:
    """``3 + max(theta_+ - pi, 0)/pi + max(theta_- - pi, 0)/pi`` with ``theta = pi (1 - 2 beta)``."""
    th_p = math.pi * (1.0 - 2.0 * beta_plus)
    th_m = math.pi * (1.0 - 2.0 * beta_minus)
    return 3.0 + max(th_p - math.pi, 0.0) / math.pi + max(th_m - math.pi, 0.0) / math.pi


def is_conjugate_symmetric(values, ts=None, tol=1e-10) -> bool:
    if ts is None:
        vals = np.sort(np.asarray(values, dtype=float))
        if vals.size % 2:
            return False
        return bool(np.all(np.abs(vals[0::2] - vals[1::2]) <= tol))
    ts = np.mod(np.asarray(ts, dtype=float), TWO_PI)
    values = np.asarray(values, dtype=float)
    for t, v in zip(ts, values):
        mirror = np.abs(wrap_angle(ts + t)) <= 1e-8
        if not np.any(mirror) or np.min(np.abs(values[mirror] - v)) > tol:
            return False
    return True


def univalence_bound_symmetric(betas, beta_plus: float, beta_minus: float, ts=None, tol: float = 1e-12) -> bool:
    """Univalence test for configurations symmetric about the real axis.

    ``betas`` are the angles of the pre-vertices other than ``+1`` and ``-1``,
    which carry ``beta_plus`` and ``beta_minus`` (``0`` when the point is not a
    vertex). If ``ts`` is given the pairing ``t <-> -t`` is checked as well.
    The caller is responsible for the positivity hypothesis
    ``Im f(z) / Im z > 0`` (see :func:`symmetry_condition`).
    """
    betas = np.asarray(betas, dtype=float)
    if max(abs(beta_plus), abs(beta_minus)) > 0.5 + 1e-12:
        raise ValueError("|beta_plus|, |beta_minus| must not exceed 1/2")
    if not is_conjugate_symmetric(betas, ts):
        raise AsymmetricInput("angles are not symmetric under conjugation")
    total = betas.sum() + beta_plus + beta_minus
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"exterior angles must sum to 1, got {total:.12g}")
    lhs = np.abs(betas).sum() + abs(beta_plus) + abs(beta_minus)
    return bool(lhs <= theorem5_threshold(beta_plus, beta_minus) + tol)


# ---------------------------------------------------------------- the map


class _Derivative:
    """``f'`` for a pre-vertex configuration, in forms suited to each quadrature."""

    def __init__(self, pvs: PrevertexSet, scale: complex = 1.0):
        self.kind = pvs.kind
        self.ts = pvs.ts
        self.zs = np.exp(1j * self.ts)
        sign = -2.0 if self.kind is Kind.INTERIOR else 2.0
        self.exps = sign * pvs.betas
        self.scale = complex(scale)
        self.log_scale = np.log(self.scale) if self.scale != 0 else -np.inf

    @property
    def exterior(self) -> bool:
        return self.kind is Kind.EXTERIOR

    # interior points -------------------------------------------------
    def _log_product(self, z):
        return np.log(1.0 - np.multiply.outer(z, self.zs.conj())) @ self.exps

    def fprime(self, z):
        z = np.asarray(z, dtype=complex)
        val = self.scale * np.exp(self._log_product(z))
        return val / z**2 if self.exterior else val

    def regular_part(self, z):
        """Exterior maps: ``f' - a/z^2``, analytic at the origin."""
        return self.scale * np.expm1(self._log_product(z)) / z**2

    # the unit circle -------------------------------------------------
    def circle_integrand(self, t, strip=None):
        """``d/dt f(e^{it})``, optionally divided by ``dist^e`` for one pre-vertex.

        ``strip=(k, side)`` divides out ``(t - t_k)^{e_k}`` (side ``"left"``) or
        ``(t_k - t)^{e_k}`` (side ``"right"``).
        """
        t = np.asarray(t, dtype=float)
        delta = np.mod(np.subtract.outer(t, self.ts), TWO_PI)
        logs = np.log(2.0 * np.sin(0.5 * delta)) + 1j * (0.5 * delta - 0.5 * math.pi)
        if strip is not None:
            k, side = strip
            d = delta[..., k] if side == "left" else TWO_PI - delta[..., k]
            logs[..., k] = np.log(np.sinc(d / TWO_PI)) + 1j * (0.5 * delta[..., k] - 0.5 * math.pi)
        expo = logs @ self.exps + self.log_scale
        rot = np.exp(-1j * t) if self.exterior else np.exp(1j * t)
        return 1j * rot * np.exp(expo)

    # radial paths ----------------------------------------------------
    def radial_integrand(self, u, strip_k=None):
        def g(s):
            s = np.asarray(s, dtype=float)
            z = s * u
            terms = np.log(1.0 - np.multiply.outer(z, self.zs.conj()))
            if strip_k is not None:
                terms[..., strip_k] = 0.0
            val = self.scale * np.exp(terms @ self.exps) * u
            return val / z**2 if self.exterior else val

        return g


def _graded(func, a, b, left=None, right=None, left_clear=math.inf, right_clear=math.inf, n=32, tol=1e-8):
    """Integrate over ``[a, b]`` with geometric grading toward both ends.

    ``left``/``right`` are ``(exponent, stripped_func)`` for algebraic endpoint
    singularities, integrated by Gauss-Jacobi; the remaining pieces use
    Gauss-Legendre on intervals no longer than their distance to the nearest
    singularity. ``*_clear`` is the distance from an end to the nearest other
    singular point. Returns ``(value, converged)``.
    """
    length = b - a
    mid = a + 0.5 * length
    lead_l = min(0.5 * length, 0.5 * left_clear) if left is not None or left_clear < math.inf else 0.5 * length
    lead_r = min(0.5 * length, 0.5 * right_clear) if right is not None or right_clear < math.inf else 0.5 * length
    lo_pts = [a]
    step = lead_l
    while lo_pts[-1] + step < mid:
        lo_pts.append(lo_pts[-1] + step)
        step = lo_pts[-1] - a
    hi_pts = [b]
    step = lead_r
    while hi_pts[-1] - step > mid:
        hi_pts.append(hi_pts[-1] - step)
        step = b - hi_pts[-1]
    pts = lo_pts + [mid] + hi_pts[::-1]
    total = 0j
    ok = True
    last = len(pts) - 2
    for i, (p, q) in enumerate(zip(pts[:-1], pts[1:])):
        if q <= p:
            continue
        if i == 0 and left is not None:
            val, conv = adaptive(jacobi_interval, left[1], p, q, left=left[0], n=n, tol=tol)
        elif i == last and right is not None:
            val, conv = adaptive(jacobi_interval, right[1], p, q, right=right[0], n=n, tol=tol)
        else:
            val, conv = legendre_interval(func, p, q, n=n), True
        total += val
        ok = ok and conv
    return total, ok


@dataclass
class _Integrator:
    deriv: _Derivative
    nodes: int = 32
    tol: float = 1e-8
    converged: bool = True

    def _acc(self, res):
        val, ok = res
        self.converged = self.converged and ok
        return val

    def neighbour_distance(self, k):
        d = np.abs(self.deriv.zs - self.deriv.zs[k])
        d[k] = np.inf
        return float(d.min()) if d.size > 1 else 2.0

    def value(self, z):
        """``f(z)`` for ``|z| <= 1`` (not at a pre-vertex) along the radius."""
        z = complex(z)
        return self._radial(z, None)

    def vertex(self, k):
        """``f(z_k)`` for a finite vertex (exponent ``> -1``)."""
        return self._radial(complex(self.deriv.zs[k]), k)

    def _radial(self, z, k):
        der = self.deriv
        r = abs(z)
        if r == 0.0:
            if der.exterior:
                raise ValueError("exterior maps have a pole at the origin")
            return 0j
        u = z / r
        s0 = min(0.5, r)
        if der.exterior:
            base = -der.scale / (s0 * u) + legendre_interval(
                lambda s: der.regular_part(s * u) * u, 0.0, s0, n=self.nodes
            )
        else:
            base = legendre_interval(der.radial_integrand(u), 0.0, s0, n=self.nodes)
        if r <= s0:
            return base
        g = der.radial_integrand(u)
        if k is not None:
            clear = 0.7 * self.neighbour_distance(k)
            right = (der.exps[k], der.radial_integrand(u, strip_k=k))
        else:
            clear = float(np.min(np.abs(der.zs - z)))
            right = None
        return base + self._acc(
            _graded(g, s0, r, right=right, right_clear=clear, n=self.nodes, tol=self.tol)
        )

    def arc(self, t0, t1, k0=None, k1=None, clear0=math.inf, clear1=math.inf):
        """``f(e^{i t1}) - f(e^{i t0})`` along the circle; ``k0``/``k1`` mark pre-vertex ends."""
        der = self.deriv
        g = der.circle_integrand
        left = right = None
        if k0 is not None:
            left = (der.exps[k0], lambda t: der.circle_integrand(t, strip=(k0, "left")))
        if k1 is not None:
            right = (der.exps[k1], lambda t: der.circle_integrand(t, strip=(k1, "right")))
        return self._acc(
            _graded(g, t0, t1, left=left, right=right, left_clear=clear0, right_clear=clear1,
                    n=self.nodes, tol=self.tol)
        )


@dataclass
class PolygonTrace:
    """Image polygon of a pre-vertex configuration.

    ``vertices[k]`` is ``None`` for a vertex at infinity. ``edges[k]`` samples
    the side from vertex ``k`` to vertex ``k+1``; sides touching a vertex at
    infinity stop at parameter distance ``INFINITE_CUTOFF`` and carry a unit
    direction in ``rays[k]`` (pointing toward the infinite end(s)).
    """

    vertices: list
    edge_samples: list
    scale: complex
    rays: list = field(default_factory=list)
    interior_angles: list = field(default_factory=list)
    turning_angles: list = field(default_factory=list)
    path_error: float = 0.0
    closure_gap: float | None = None
    converged: bool = True

    @property
    def finite(self) -> bool:
        return all(v is not None for v in self.vertices)

    def finite_vertices(self) -> np.ndarray:
        return np.array([v for v in self.vertices if v is not None], dtype=complex)

    def diameter(self) -> float:
        pts = np.concatenate([np.atleast_1d(e) for e in self.edge_samples] + [self.finite_vertices()])
        if pts.size == 0:
            return 0.0
        return float(np.max(np.abs(pts[:, None] - pts[None, :])))


def _is_infinite(kind: Kind, beta: float) -> bool:
    # the edge integral diverges when the exponent of (z - z_k) is <= -1
    return beta >= 0.5 if kind is Kind.INTERIOR else beta <= -0.5


def trace_polygon(pvs: PrevertexSet, scale: complex = 1.0, nodes: int = 32, samples_per_edge: int = 16) -> PolygonTrace:
    """Trace the boundary polygon of the map defined by ``pvs``.

    Finite vertices are located by integrating ``f'`` along radii from the
    normalisation point; each side is then integrated along its arc with
    Gauss-Jacobi rules whose weights carry the endpoint exponents, and the
    difference to the radial positions is reported as ``path_error``.
    """
    if nodes < 8:
        raise ValueError("nodes must be at least 8")
    der = _Derivative(pvs, scale)
    integ = _Integrator(der, nodes=nodes)
    kind = pvs.kind
    ts = pvs.ts
    betas = pvs.betas
    npts = len(ts)
    gaps = pvs.gaps()
    infinite = [_is_infinite(kind, b) for b in betas]

    vertices = [None if inf else integ.vertex(k) for k, inf in enumerate(infinite)]

    edges, rays = [], []
    path_err = 0.0
    closure = 0j
    for k in range(npts):
        j = (k + 1) % npts
        t0, t1 = ts[k], ts[k] + gaps[k]
        prev_gap = gaps[k - 1]
        next_gap = gaps[j]
        cut = min(INFINITE_CUTOFF, 0.25 * gaps[k])
        u = np.linspace(0.0, 1.0, samples_per_edge)
        if not infinite[k] and not infinite[j]:
            d = integ.arc(t0, t1, k0=k, k1=j, clear0=prev_gap, clear1=next_gap)
            closure += d
            path_err = max(path_err, abs(vertices[k] + d - vertices[j]))
            inner = t0 + u[1:-1] * (t1 - t0)
            pts = [vertices[k]] + [
                vertices[k] + integ.arc(t0, s, k0=k, clear0=prev_gap, clear1=t1 - s) for s in inner
            ] + [vertices[j]]
            rays.append(None)
        elif not infinite[k]:
            stop = t1 - cut
            inner = t0 + u[1:] * (stop - t0)
            pts = [vertices[k]] + [
                vertices[k] + integ.arc(t0, s, k0=k, clear0=prev_gap, clear1=t1 - s) for s in inner
            ]
            rays.append(_unit(pts[-1] - pts[0]))
        elif not infinite[j]:
            start = t0 + cut
            inner = start + u[:-1] * (t1 - start)
            pts = [
                vertices[j] - integ.arc(s, t1, k1=j, clear0=s - t0, clear1=next_gap) for s in inner
            ] + [vertices[j]]
            rays.append(_unit(pts[0] - pts[-1]))
        else:
            tm = 0.5 * (t0 + t1)
            anchor = integ.value(np.exp(1j * tm))
            pts = []
            for s in t0 + cut + u * (t1 - t0 - 2 * cut):
                if s < tm:
                    pts.append(anchor - integ.arc(s, tm, clear0=s - t0, clear1=t1 - tm))
                elif s > tm:
                    pts.append(anchor + integ.arc(tm, s, clear0=tm - t0, clear1=t1 - s))
                else:
                    pts.append(anchor)
            if not np.all(np.isfinite(pts)):
                raise DivergentEdge(f"side {k} joins two vertices at infinity and could not be anchored")
            rays.append(_unit(pts[-1] - pts[0]))
        edges.append(np.array(pts, dtype=complex))

    turning, angles = [], []
    for k in range(npts):
        if infinite[k]:
            turning.append(None)
            angles.append(None)
            continue
        # sides are straight: the tangent argument is constant on each arc
        t_in = ts[k - 1] + 0.5 * gaps[k - 1]
        t_out = ts[k] + 0.5 * gaps[k]
        d_in = der.circle_integrand(np.array([t_in % TWO_PI]))[0]
        d_out = der.circle_integrand(np.array([t_out % TWO_PI]))[0]
        turn = float(np.angle(d_out / d_in))
        expected = TWO_PI * betas[k] if kind is Kind.INTERIOR else -TWO_PI * betas[k]
        turn = expected + float(wrap_angle(turn - expected))
        turning.append(turn)
        ext = turn if kind is Kind.INTERIOR else -turn
        angles.append(math.pi - ext)

    gap = abs(closure) if all(not i for i in infinite) else None
    return PolygonTrace(
        vertices=vertices,
        edge_samples=edges,
        scale=complex(scale),
        rays=rays,
        interior_angles=angles,
        turning_angles=turning,
        path_error=path_err,
        closure_gap=gap,
        converged=integ.converged,
    )


def _unit(v):
    v = complex(v)
    return v / abs(v) if v != 0 else 0j


# ---------------------------------------------------------------- injectivity


class Injectivity(str, enum.Enum):
    INJECTIVE = "injective"
    SELF_INTERSECTING = "self_intersecting"


def boundary_curve(pvs: PrevertexSet, scale: complex = 1.0, rho: float = 0.99, samples: int = 2048, nodes: int = 8):
    """Samples of ``f(rho e^{it})`` by cumulative Gauss-Legendre quadrature of ``f'``.

    The curve starts at an arbitrary base point (only its shape matters).
    Returns ``(points, closure_gap)``.
    """
    if not 0.0 < rho < 1.0:
        raise ValueError("rho must lie in (0, 1)")
    der = _Derivative(pvs, scale)
    h = TWO_PI / samples
    x, w = gauss_legendre(nodes)
    t = h * (np.arange(samples)[:, None] + 0.5 * (x[None, :] + 1.0))
    z = rho * np.exp(1j * t)
    integrand = der.fprime(z) * 1j * z
    steps = 0.5 * h * (integrand @ w)
    pts = np.concatenate([[0j], np.cumsum(steps)])
    return pts[:-1], abs(pts[-1])


def _self_intersects(points: np.ndarray) -> bool:
    coords = np.column_stack([points.real, points.imag])
    return not LinearRing(coords).is_simple


def grid_injectivity(pvs: PrevertexSet, scale: complex = 1.0, rho: float = 0.99, samples: int = 2048) -> Injectivity:
    """Heuristic univalence oracle: is the image of ``|z| = rho`` a simple curve?

    Resolution-limited; a self-crossing at some other radius is not detected.
    """
    if samples < 2048:
        raise ValueError("samples must be at least 2048")
    pts, _ = boundary_curve(pvs, scale, rho, samples)
    if not np.all(np.isfinite(pts)):
        return Injectivity.SELF_INTERSECTING
    return Injectivity.SELF_INTERSECTING if _self_intersects(pts) else Injectivity.INJECTIVE


def polygon_self_intersects(trace: PolygonTrace) -> bool:
    """Does the traced (all-finite) polygon cross itself?"""
    if not trace.finite:
        raise ValueError("only closed polygons can be tested")
    return _self_intersects(np.asarray(trace.vertices, dtype=complex))


def symmetry_condition(pvs: PrevertexSet, scale: complex = 1.0, radii=(0.2, 0.5, 0.8, 0.95), angles: int = 24) -> bool:
    """Grid check of ``Im f(z) / Im z > 0`` on the upper half disk (approximate)."""
    if pvs.kind is not Kind.INTERIOR:
        return False
    integ = _Integrator(_Derivative(pvs, scale))
    thetas = np.linspace(0.0, math.pi, angles + 2)[1:-1]
    for r in radii:
        for th in thetas:
            if integ.value(r * np.exp(1j * th)).imag <= 0.0:
                return False
    return True


def winding_number(vertices, point: complex) -> int:
    """Winding number of the closed polygon ``vertices`` around ``point``."""
    d = np.asarray(vertices, dtype=complex) - point
    return int(round(np.angle(np.roll(d, -1) / d).sum() / TWO_PI))


def covering_numbers(trace: PolygonTrace) -> list[tuple[float, int]]:
    """``(area, winding)`` for every face cut out by the traced polygon.

    A face with winding number 2 or more is covered at least twice by the
    map, which is then not injective.
    """
    v = np.asarray(trace.finite_vertices(), dtype=complex)
    if not trace.finite:
        raise ValueError("only closed polygons can be tested")
    coords = np.column_stack([v.real, v.imag])
    noded = unary_union(LineString(np.vstack([coords, coords[:1]])))
    out = []
    for face in polygonize(noded):
        p = face.representative_point()
        out.append((float(face.area), winding_number(v, complex(p.x, p.y))))
    return out
