"""Seeded random Blaschke pairs that come from genuine Schwarz-Christoffel maps."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .blaschke import TWO_PI, BlaschkeProduct
from .errors import SCError
from .mapspec import Kind, MapSpec
from .prevertex import PrevertexSet, solve_prevertices
from .scmap import Injectivity, grid_injectivity

log = logging.getLogger(__name__)

MAX_DEGREE_1 = 6
MAX_DEGREE_2 = 3
REDRAWS = 50


class NotRealizable(SCError):
    """An admissible pair whose angles or univalence rule out a polygon map."""


@dataclass(frozen=True)
class SampledSpec:
    index: int
    spec: MapSpec
    prevertices: PrevertexSet
    route: str
    attempts: int


def _disk(rng, count, rho):
    r = rho * np.sqrt(rng.uniform(size=count))
    return r * np.exp(1j * rng.uniform(0.0, TWO_PI, size=count))


def spec_from_zeros(rng, kind, d1, d2, rho) -> MapSpec:
    """Zeros of ``B1`` and ``B2`` uniform in the disk of radius ``rho``; random rotations."""
    b1 = BlaschkeProduct(rng.uniform(0.0, TWO_PI), tuple(_disk(rng, d1, rho)))
    b2 = BlaschkeProduct(rng.uniform(0.0, TWO_PI), tuple(_disk(rng, d2, rho)))
    return MapSpec(kind, b1, b2)


def spec_from_angles(ts, betas, kind=Kind.INTERIOR) -> MapSpec:
    """Blaschke pair of the Schwarz-Christoffel map with pre-vertices ``e^{i ts}``.

    With ``S(z) = sum beta_k / (z - z_k) = N/D`` one has ``B1/B2 = N / (zN - D)``
    (interior) or ``N / (z (zN - D))`` (exterior, which needs
    ``sum beta_k conj(z_k) = 0``). Both are unimodular on the circle; zeros
    inside the disk give ``B1``, poles inside the disk give ``B2``.
    """
    kind = Kind(kind)
    ts = np.asarray(ts, dtype=float)
    betas = np.asarray(betas, dtype=float)
    if abs(betas.sum() - 1.0) > 1e-9:
        raise ValueError("angles must sum to 1")
    zs = np.exp(1j * ts)
    P = np.polynomial.polynomial
    den = P.polyfromroots(zs)
    num = np.zeros(len(zs), dtype=complex)
    for k in range(len(zs)):
        num = P.polyadd(num, betas[k] * P.polyfromroots(np.delete(zs, k)))[: len(zs)]
    q = P.polysub(P.polymulx(num), den)
    if kind is Kind.EXTERIOR:
        if abs(np.dot(betas, zs.conj())) > 1e-9:
            raise ValueError("exterior configurations need sum beta_k conj(z_k) = 0")
        num = num[1:]
    num = np.trim_zeros(num, "b")
    q = np.trim_zeros(np.where(np.abs(q) < 1e-13, 0, q), "b")
    zeros1 = [a for a in P.polyroots(num) if abs(a) < 1] if num.size > 1 else []
    zeros2 = [b for b in P.polyroots(q) if abs(b) < 1] if q.size > 1 else []
    b1 = BlaschkeProduct(0.0, tuple(zeros1))
    b2 = BlaschkeProduct(0.0, tuple(zeros2))
    z0 = 0.3 + 0.2j
    u = P.polyval(z0, num) / P.polyval(z0, q)
    c = u * b2(z0) / b1(z0)
    if abs(abs(c) - 1.0) > 1e-6:
        raise ValueError("configuration does not give a unimodular ratio")
    return MapSpec(kind, BlaschkeProduct(float(np.angle(c)), b1.zeros), b2)


def _draw_angles(rng, kind, d1, d2):
    m = Kind(kind).power
    count = d1 + d2 + m
    while True:
        ts = np.sort(rng.uniform(0.0, TWO_PI, size=count))
        if count == 1 or np.min(np.diff(np.append(ts, ts[0] + TWO_PI))) > 0.05:
            break
    concave = np.zeros(count, dtype=bool)
    concave[rng.choice(count, size=d2, replace=False)] = True
    betas = np.empty(count)
    betas[concave] = -rng.uniform(0.05, 0.5, size=d2)
    positive = 1.0 - betas[concave].sum()
    betas[~concave] = positive * rng.dirichlet(np.full(count - d2, 2.0))
    if kind is Kind.EXTERIOR:
        # least-norm correction onto sum beta = 1, sum beta conj(z) = 0
        a = np.vstack([np.ones(count), np.cos(ts), np.sin(ts)])
        resid = a @ betas - np.array([1.0, 0.0, 0.0])
        betas = betas - a.T @ np.linalg.solve(a @ a.T, resid)
    return ts, betas


def check_realizable(spec: MapSpec, tol: float = 1e-8) -> PrevertexSet:
    """Pre-vertices of ``spec`` if it comes from a univalent polygon map.

    Beyond admissibility this asks for concave angles ``beta >= -1/2``,
    ``|beta| < 1`` on exterior maps, and evidence of univalence: the
    angle-sum bound for interior maps, otherwise the grid-injectivity oracle.
    """
    pvs = solve_prevertices(spec, tol)
    betas = pvs.betas
    if np.any(betas[betas < 0] < -0.5):
        raise NotRealizable("concave exterior angle beyond -pi")
    if spec.kind is Kind.EXTERIOR and np.any(np.abs(betas) >= 1.0):
        raise NotRealizable("exterior map with |beta| >= 1")
    if spec.d2 == 0:
        return pvs
    if spec.kind is Kind.INTERIOR and np.abs(betas).sum() <= 2.0:
        return pvs
    if grid_injectivity(pvs) is not Injectivity.INJECTIVE:
        raise NotRealizable("boundary curve self-intersects")
    return pvs


def _draw_for_degrees(rng, index, kind, d1, d2):
    rho = float(rng.uniform(0.3, 0.99))
    for attempt in range(1, REDRAWS + 1):
        spec = spec_from_zeros(rng, kind, d1, d2, rho)
        try:
            return SampledSpec(index, spec, check_realizable(spec), "zeros", attempt)
        except SCError:
            continue
    log.warning("trial %d: sampler starvation for %s d1=%d d2=%d; drawing angles", index, kind.value, d1, d2)
    for attempt in range(1, REDRAWS + 1):
        ts, betas = _draw_angles(rng, kind, d1, d2)
        try:
            spec = spec_from_angles(ts, betas, kind)
        except (ValueError, SCError):
            continue
        # the exterior closure projection may flip signs, and with them the degrees
        if spec.d1 > MAX_DEGREE_1 or spec.d2 > MAX_DEGREE_2:
            continue
        try:
            return SampledSpec(index, spec, check_realizable(spec), "angles", REDRAWS + attempt)
        except SCError:
            continue
    return None


def draw_spec(rng, index: int = 0, degree_draws: int = 5) -> SampledSpec | None:
    """One trial: kind and degrees, then up to ``REDRAWS`` zero draws, then angle draws.

    If both routes starve the degrees are drawn again (at most ``degree_draws`` times).
    """
    for _ in range(degree_draws):
        kind = Kind.INTERIOR if rng.uniform() < 0.5 else Kind.EXTERIOR
        d1 = int(rng.integers(0, MAX_DEGREE_1 + 1))
        d2 = int(rng.integers(0, MAX_DEGREE_2 + 1))
        sample = _draw_for_degrees(rng, index, kind, d1, d2)
        if sample is not None:
            return sample
        log.warning("trial %d: no realizable spec for %s d1=%d d2=%d", index, kind.value, d1, d2)
    return None


def sample_specs(seed: int, trials: int) -> list[SampledSpec | None]:
    """Deterministic list of ``trials`` samples; trial ``i`` has its own stream."""
    children = np.random.SeedSequence(seed).spawn(trials)
    return [draw_spec(np.random.default_rng(child), i) for i, child in enumerate(children)]
