"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import math
import time

import numpy as np

from conftest import ACCEPTANCE_LINES
from sc_blaschke.bounds import (
    Pair,
    max_separation,
    min_separation,
    mixed_separation_check,
    mixed_separation_sides,
    zero_radius_lower_bound,
)
from sc_blaschke.configs import FAMILY_R0, FAMILY_R1, family_spec, koebe_spec, non_univalent_configuration
from sc_blaschke.errors import Inadmissible
from sc_blaschke.mapspec import Kind, phi_prime
from sc_blaschke.prevertex import Label, solve_prevertices
from sc_blaschke.scmap import (
    Injectivity,
    grid_injectivity,
    polygon_self_intersects,
    trace_polygon,
    univalence_bound,
    vertex_counts,
    winding_degree,
)
from sc_blaschke.verify import COROLLARY7_EPS, COROLLARY7_N, corollary7_inside, sharpness_cases, sharpness_error


def report(number, title, checks, elapsed=None, limit=None):
    """Record one line for the criterion and fail with the first broken check."""
    if limit is not None:
        checks = [*checks, (f"runtime {elapsed:.2f}s < {limit}s", elapsed < limit)]
    broken = [name for name, ok in checks if not ok]
    status = "FAIL" if broken else "PASS"
    timing = f" ({elapsed:.2f}s)" if elapsed is not None else ""
    line = f"criterion {number} {status}: {title}{timing}"
    if broken:
        line += " -- " + "; ".join(broken)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert not broken, line


def test_criterion_1_koebe():
    start = time.perf_counter()
    spec = koebe_spec()
    pvs = solve_prevertices(spec)
    counts = vertex_counts(pvs)
    wind = winding_degree(spec)
    tr = trace_polygon(pvs)
    finite = [v for v in tr.vertices if v is not None]
    bound = zero_radius_lower_bound(Kind.INTERIOR, 0, 1).r_min
    elapsed = time.perf_counter() - start
    checks = [
        ("pre-vertices {1, -1}", np.allclose(pvs.zs, [1, -1], atol=1e-10)),
        ("beta {3/2, -1/2}", np.allclose(pvs.betas, [1.5, -0.5], atol=1e-10)),
        ("one convex, one concave", (counts.convex, counts.concave) == (1, 1)),
        ("winding 0", wind == 0),
        ("finite vertex -1/4", len(finite) == 1 and abs(finite[0] + 0.25) < 1e-6),
        ("sum |beta| = 2", abs(np.abs(pvs.betas).sum() - 2.0) < 1e-10),
        ("angle-sum univalence test", univalence_bound(pvs.betas)),
        ("r_min = 1/2", abs(bound - 0.5) < 1e-15),
        ("bound attained", abs(spec.max_zero_modulus - bound) < 1e-15),
    ]
    report(1, "Koebe reproduction", checks, elapsed, 1.0)


def _admissible(r):
    try:
        solve_prevertices(family_spec(r))
        return True
    except Inadmissible:
        return False


def test_criterion_2_worked_example():
    start = time.perf_counter()
    lo, hi = 0.1, 0.5
    ends = (_admissible(lo), _admissible(hi))
    while hi - lo > 1e-7:
        mid = 0.5 * (lo + hi)
        if _admissible(mid):
            hi = mid
        else:
            lo = mid
    r0 = 0.5 * (lo + hi)

    def excess(r):
        return phi_prime(family_spec(r), 0.0) + 2.0

    a, b = r0 + 1e-3, 0.9
    signs = (excess(a) > 0, excess(b) < 0)
    while b - a > 1e-12:
        mid = 0.5 * (a + b)
        if excess(mid) > 0:
            a = mid
        else:
            b = mid
    r1 = 0.5 * (a + b)

    pvs = solve_prevertices(family_spec(0.6))
    counts = vertex_counts(pvs)
    concave = [p.beta for p in pvs.points if p.label is Label.CONCAVE]
    convex = [p.beta for p in pvs.points if p.label is Label.CONVEX]
    gaps, labels = pvs.gaps(), pvs.labels
    n = len(labels)
    cc = [gaps[k] for k in range(n) if labels[k] is Label.CONVEX and labels[(k + 1) % n] is Label.CONVEX]
    upper = mixed_separation_sides(1, 1, 0.6, cc[0])[1] if len(cc) == 1 else math.nan
    elapsed = time.perf_counter() - start
    checks = [
        ("bracket ends", ends == (False, True)),
        (f"r0 = {r0:.9f} vs sqrt5-2", abs(r0 - FAMILY_R0) < 1e-6),
        ("phi' sign change", all(signs)),
        (f"r1 = {r1:.12f}", abs(r1 - FAMILY_R1) < 1e-9),
        ("2 convex + 1 concave", (counts.convex, counts.concave) == (2, 1)),
        ("beta3 in (-1/2, 0)", len(concave) == 1 and -0.5 < concave[0] < 0),
        ("beta1 = beta2 in (1/2, 3/4)", len(convex) == 2 and abs(convex[0] - convex[1]) < 1e-10
         and all(0.5 < b < 0.75 for b in convex)),
        ("right side attained", abs(upper - math.pi) < 1e-7),
        ("mixed check consistent", len(cc) == 1 and mixed_separation_check(1, 1, 0.6, cc[0], Pair.CONVEX_CONVEX)),
    ]
    report(2, "worked example with d1 = d2 = 1", checks, elapsed, 1.0)


def test_criterion_3_sharpness():
    start = time.perf_counter()
    errors = {case: sharpness_error(*case) for case in sharpness_cases()}
    elapsed = time.perf_counter() - start
    worst = max(errors.values())
    checks = [
        ("36 cases", len(errors) == 36),
        (f"worst error {worst:.2e} <= 1e-7", worst <= 1e-7),
        ("interior n=1 r=1/2 min", abs(min_separation(Kind.INTERIOR, 1, 0.5) - 2 * math.pi / 3) < 1e-10),
        ("interior n=1 r=1/2 max", abs(max_separation(Kind.INTERIOR, 1, 0.5) - 4 * math.pi / 3) < 1e-10),
    ]
    for n in range(1, 7):
        for kind, m in ((Kind.INTERIOR, 1), (Kind.EXTERIOR, 2)):
            uniform = 2 * math.pi / (n + m)
            ok = abs(min_separation(kind, n, 0.0) - uniform) < 1e-10 and abs(max_separation(kind, n, 0.0) - uniform) < 1e-10
            checks.append((f"{kind.value} n={n} r=0 uniform", ok))
    report(3, "separation sharpness", checks, elapsed, 10.0)


def test_criterion_4_window():
    start = time.perf_counter()
    checks = [
        (f"{kind.value} n={n} eps={eps}", corollary7_inside(kind, n, eps, c=10.0))
        for kind in Kind
        for n in COROLLARY7_N
        for eps in COROLLARY7_EPS
    ]
    elapsed = time.perf_counter() - start
    report(4, "concentration window", checks, elapsed, 5.0)


def _suite_checks(result, expected=None):
    checks = [(f"{len(result.failures)} failures: {result.failures[:1]}", result.ok)]
    if expected is not None:
        checks.append((f"{result.passed} of {expected} checked", result.passed == expected))
    else:
        checks.append(("non-empty", result.passed > 0))
    return checks


def test_criterion_5_counts(suite_run):
    results, samples, elapsed = suite_run
    checks = [("200 specs drawn", len(samples) == 200 and all(s is not None for s in samples))]
    checks += _suite_checks(results["theorem2_3"], 200)
    kinds = {s.spec.kind for s in samples if s is not None}
    checks.append(("both kinds", kinds == set(Kind)))
    report(5, "counts, angle sum, winding and arc increments", checks, elapsed, 60.0)


def test_criterion_6_necessity(suite_run):
    results, samples, _ = suite_run
    expected = sum(1 for s in samples if s is not None and s.spec.d2 >= 1)
    report(6, "zero-location necessity", _suite_checks(results["theorem9_10"], expected))


def test_criterion_7_angle_sum(suite_run):
    results, samples, suite_time = suite_run
    start = time.perf_counter()
    pvs = non_univalent_configuration()
    total = float(np.abs(pvs.betas).sum())
    tr = trace_polygon(pvs)
    crossing = grid_injectivity(pvs) is Injectivity.SELF_INTERSECTING
    elapsed = time.perf_counter() - start
    checks = _suite_checks(results["theorem4"])
    checks += [
        (f"sum |beta| = {total:.4f} in (2, 2.3]", 2.0 < total <= 2.3),
        ("sum beta = 1", abs(pvs.betas.sum() - 1.0) < 1e-12),
        ("traced polygon self-intersects", tr.finite and polygon_self_intersects(tr)),
        ("boundary curve self-intersects", crossing),
    ]
    report(7, "angle-sum univalence and a near counterexample", checks, elapsed, 60.0)


def test_criterion_8_oracle(suite_run):
    results, _, _ = suite_run
    report(8, "solver and oracle agree", _suite_checks(results["oracle"], 200))
