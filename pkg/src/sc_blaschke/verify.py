"""Property suites run over seeded random specs and over the extremal configurations."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .blaschke import TWO_PI, BlaschkeProduct
from .bounds import (
    CONVEXITY_RADIUS,
    Extremum,
    convexity_radius_check,
    corollary7_window,
    extremal_configuration,
    max_separation,
    min_separation,
    zero_radius_lower_bound,
)
from .errors import OracleMiss, SCError, UnwrapFailure
from .mapspec import Kind, MapSpec
from .prevertex import oracle_prevertices, solve_prevertices
from .sampling import SampledSpec, sample_specs
from .scmap import Injectivity, arc_increments, grid_injectivity, vertex_counts, winding_degree

log = logging.getLogger(__name__)

SUM_TOL = 1e-9
ARC_TOL = 1e-6
ORACLE_TOL = 1e-7
RADIUS_TOL = 1e-9
SHARPNESS_TOL = 1e-7
SHARPNESS_N = range(1, 7)
SHARPNESS_R = (0.1, 0.5, 0.9)
COROLLARY7_EPS = (0.005, 0.01, 0.02)
COROLLARY7_N = range(1, 11)

SUITES = ("theorem2_3", "oracle", "theorem9_10", "theorem4", "theorem6_8", "corollary7")


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, subject=None, reason: str = ""):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append((subject, reason))

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _refined(func, spec, miss, samples=4096, rounds=5):
    """``func(spec, samples)`` with 4x more samples after each ``miss``."""
    for _ in range(rounds):
        try:
            return func(spec, samples)
        except miss:
            samples *= 4
    return None


def check_counts(sample: SampledSpec) -> str | None:
    """Reason for failure of the count/angle-sum/winding/arc checks, or ``None``."""
    spec, pvs = sample.spec, sample.prevertices
    try:
        counts = vertex_counts(pvs)
    except SCError as exc:
        return str(exc)
    if counts.concave != spec.d2:
        return f"concave count {counts.concave} != d2 = {spec.d2}"
    total = float(pvs.betas.sum())
    if abs(total - 1.0) > SUM_TOL:
        return f"sum of beta is {total!r}"
    expected = spec.m + spec.d1 - spec.d2
    wind = _refined(winding_degree, spec, UnwrapFailure)
    if wind is None:
        return "winding unwrap failed at every resolution"
    if wind != expected:
        return f"winding {wind} != {expected}"
    inc = arc_increments(pvs)
    nearest = TWO_PI * np.round(inc / TWO_PI)
    if np.any(np.abs(inc - nearest) > ARC_TOL) or np.any(np.abs(nearest) > TWO_PI + 1e-9):
        return "arc increment outside {-2pi, 0, 2pi}"
    if abs(inc.sum() - TWO_PI * expected) > ARC_TOL * len(inc):
        return "arc increments do not add up to the winding"
    return None


def check_oracle(sample: SampledSpec) -> str | None:
    ts = sample.prevertices.ts
    ref = _refined(oracle_prevertices, sample.spec, OracleMiss)
    if ref is None:
        return "oracle missed crossings at every resolution"
    if ref.size != ts.size:
        return f"oracle found {ref.size} pre-vertices, solver {ts.size}"
    diff = np.abs(np.angle(np.exp(1j * (ref - ts))))
    if diff.max() > ORACLE_TOL:
        return f"oracle disagreement {diff.max():.3g}"
    return None


def check_radius(sample: SampledSpec) -> str | None:
    spec = sample.spec
    bound = zero_radius_lower_bound(spec.kind, spec.d1, spec.d2).r_min
    if spec.max_zero_modulus < bound - RADIUS_TOL:
        return f"max |zero| {spec.max_zero_modulus:.12g} < r_min {bound:.12g}"
    if spec.kind is Kind.INTERIOR:
        small = np.abs(spec.b2.zeros_array)
        if np.any(small <= CONVEXITY_RADIUS):
            return "B2 zero inside the convexity radius"
        if not convexity_radius_check(spec):
            return "convexity-radius check failed"
    return None


def check_injective(sample: SampledSpec) -> str | None:
    if grid_injectivity(sample.prevertices) is not Injectivity.INJECTIVE:
        return "boundary curve self-intersects although sum |beta| <= 2"
    return None


def check_separation(sample: SampledSpec) -> str | None:
    """Consecutive gaps of a convex spec lie between the bounds for ``r = max |a_k|``."""
    spec = sample.spec
    r = spec.max_zero_modulus
    gaps = sample.prevertices.gaps()
    lo = min_separation(spec.kind, spec.d1, r)
    hi = max_separation(spec.kind, spec.d1, r)
    if gaps.min() < lo - SHARPNESS_TOL or gaps.max() > hi + SHARPNESS_TOL:
        return f"gaps [{gaps.min():.12g}, {gaps.max():.12g}] outside [{lo:.12g}, {hi:.12g}]"
    return None


def extremal_gap(kind, n: int, r: float, which=Extremum.MIN_SEP) -> float:
    """Smallest (or largest) pre-vertex gap of the extremal configuration."""
    b1 = extremal_configuration(kind, n, r, which)
    spec = MapSpec(Kind(kind), b1, BlaschkeProduct())
    gaps = solve_prevertices(spec).gaps()
    return float(gaps.min() if Extremum(which) is Extremum.MIN_SEP else gaps.max())


def sharpness_cases():
    for kind in Kind:
        for n in SHARPNESS_N:
            for r in SHARPNESS_R:
                yield kind, n, r


def sharpness_error(kind, n, r) -> float:
    """Largest deviation between measured extremal gaps and the bound solver."""
    lo = abs(extremal_gap(kind, n, r, Extremum.MIN_SEP) - min_separation(kind, n, r))
    hi = abs(extremal_gap(kind, n, r, Extremum.MAX_SEP) - max_separation(kind, n, r))
    return max(lo, hi)


def corollary7_inside(kind, n: int, eps: float, c: float = 10.0) -> bool:
    """Exact half-separations at ``r = eps`` inside the widened leading-order window."""
    lo, hi = corollary7_window(kind, n, eps)
    theta = 0.5 * min_separation(kind, n, eps)
    psi = 0.5 * max_separation(kind, n, eps)
    slack = c * eps * eps
    return all(lo - slack <= x <= hi + slack for x in (theta, psi))


def run_suites(seed: int, trials: int, samples: list | None = None) -> tuple[dict, list]:
    """Run every suite; returns ``({name: SuiteResult}, samples)``."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if samples is None:
        samples = sample_specs(seed, trials)
    res = {name: SuiteResult(name) for name in SUITES}
    for i, sample in enumerate(samples):
        if sample is None:
            res["theorem2_3"].record(False, None, f"trial {i}: sampler starvation")
            continue
        res["theorem2_3"].record(*_outcome(sample, check_counts(sample)))
        res["oracle"].record(*_outcome(sample, check_oracle(sample)))
        if sample.spec.d2 >= 1:
            res["theorem9_10"].record(*_outcome(sample, check_radius(sample)))
        else:
            res["theorem9_10"].skipped += 1
        if np.abs(sample.prevertices.betas).sum() <= 2.0 + 1e-12:
            res["theorem4"].record(*_outcome(sample, check_injective(sample)))
        else:
            res["theorem4"].skipped += 1
        if sample.spec.d2 == 0 and sample.spec.d1 >= 1:
            res["theorem6_8"].record(*_outcome(sample, check_separation(sample)))
    for kind, n, r in sharpness_cases():
        err = sharpness_error(kind, n, r)
        res["theorem6_8"].record(err <= SHARPNESS_TOL, None, f"{kind.value} n={n} r={r}: error {err:.3g}")
    for kind in Kind:
        for n in COROLLARY7_N:
            for eps in COROLLARY7_EPS:
                ok = corollary7_inside(kind, n, eps)
                res["corollary7"].record(ok, None, f"{kind.value} n={n} eps={eps}")
    return res, samples


def _outcome(sample, reason):
    return reason is None, sample, reason or ""


def summary_lines(results: dict) -> list[str]:
    lines = []
    for name in SUITES:
        r = results[name]
        status = "PASS" if r.ok else "FAIL"
        lines.append(f"{name:12s} {status}  passed={r.passed} failed={r.failed} skipped={r.skipped}")
    return lines


def all_passed(results: dict) -> bool:
    return all(r.ok for r in results.values())


def expected_half_gap(kind, n):
    """Uniform half-gap ``pi/(n+m)`` of the ``r = 0`` configuration."""
    return math.pi / (n + Kind(kind).power)
