import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sc_blaschke.blaschke import BlaschkeProduct
from sc_blaschke.bounds import (
    CONVEXITY_RADIUS,
    Extremum,
    Pair,
    convexity_radius_check,
    corollary7_window,
    extremal_configuration,
    extremal_pair,
    max_separation,
    min_separation,
    mixed_separation_check,
    mixed_separation_sides,
    separation_bound,
    separation_residual,
    zero_radius_lower_bound,
)
from sc_blaschke.configs import FAMILY_R1, family_spec, koebe_spec
from sc_blaschke.errors import PreconditionFailure, SCError
from sc_blaschke.mapspec import Kind, MapSpec
from sc_blaschke.prevertex import Label, solve_prevertices
from sc_blaschke.sampling import check_realizable, spec_from_zeros
from sc_blaschke.verify import extremal_gap

# Computed once with mpmath.findroot at 30 digits, independently of the bisection.
FROZEN = [
    (Kind.INTERIOR, 3, 0.9, 0.11875042868211465, 4.7384549823272577),
    (Kind.EXTERIOR, 2, 0.5, 0.84806207898148101, 2.2935305746083122),
    (Kind.INTERIOR, 6, 0.1, 0.75785404622153553, 1.056561646064682),
    (Kind.EXTERIOR, 6, 0.9, 0.055367007300470196, 2.6493321170332849),
]


# ---------------------------------------------------------------- separation


@pytest.mark.parametrize("n", range(1, 9))
def test_r_zero(n):
    assert min_separation(Kind.INTERIOR, n, 0.0) == pytest.approx(2 * math.pi / (n + 1), abs=1e-11)
    assert max_separation(Kind.INTERIOR, n, 0.0) == pytest.approx(2 * math.pi / (n + 1), abs=1e-11)
    assert min_separation(Kind.EXTERIOR, n, 0.0) == pytest.approx(2 * math.pi / (n + 2), abs=1e-11)
    assert max_separation(Kind.EXTERIOR, n, 0.0) == pytest.approx(2 * math.pi / (n + 2), abs=1e-11)


def test_interior_half():
    assert min_separation(Kind.INTERIOR, 1, 0.5) == pytest.approx(2 * math.pi / 3, abs=1e-11)
    assert max_separation(Kind.INTERIOR, 1, 0.5) == pytest.approx(4 * math.pi / 3, abs=1e-11)


@pytest.mark.parametrize("kind, n, r, lo, hi", FROZEN)
def test_frozen_values(kind, n, r, lo, hi):
    b = separation_bound(kind, n, r)
    assert b.two_theta_min == pytest.approx(lo, abs=1e-10)
    assert b.two_psi_max == pytest.approx(hi, abs=1e-10)
    assert b.two_theta_min <= b.two_psi_max


@pytest.mark.parametrize("kind, n, r, lo, hi", FROZEN)
def test_frozen_values_against_extremal(kind, n, r, lo, hi):
    assert extremal_gap(kind, n, r, Extremum.MIN_SEP) == pytest.approx(lo, abs=1e-7)
    assert extremal_gap(kind, n, r, Extremum.MAX_SEP) == pytest.approx(hi, abs=1e-7)


@given(
    st.sampled_from(list(Kind)),
    st.integers(1, 10),
    st.floats(0.0, 0.99),
    st.sampled_from(list(Extremum)),
)
def test_bisection_residual(kind, n, r, which):
    func = min_separation if which is Extremum.MIN_SEP else max_separation
    half = 0.5 * func(kind, n, r)
    assert abs(separation_residual(kind, n, r, half, which)) < 1e-10


@pytest.mark.parametrize("kind", list(Kind))
def test_monotonicity(kind):
    rs = np.round(np.arange(0.0, 1.0, 0.1), 12)
    lo = np.array([[min_separation(kind, n, r) for r in rs] for n in range(1, 9)])
    hi = np.array([[max_separation(kind, n, r) for r in rs] for n in range(1, 9)])
    assert np.all(np.diff(lo, axis=1) < 0)
    assert np.all(np.diff(lo, axis=0) < 0)
    assert np.all(np.diff(hi, axis=1) > 0)
    assert np.all(lo <= hi + 1e-15)


def test_separation_preconditions():
    with pytest.raises(PreconditionFailure):
        min_separation(Kind.INTERIOR, 0, 0.5)
    with pytest.raises(PreconditionFailure):
        max_separation(Kind.INTERIOR, 2, 1.0)


# ---------------------------------------------------------------- concentration window


def test_corollary7_examples():
    lo, hi = corollary7_window(Kind.INTERIOR, 4, 0.0)
    assert lo == pytest.approx(math.pi / 5) and hi == pytest.approx(math.pi / 5)
    lo, hi = corollary7_window(Kind.INTERIOR, 4, 0.01)
    assert lo == pytest.approx(math.pi / 5.08) and hi == pytest.approx(math.pi / 4.92)
    lo, hi = corollary7_window(Kind.EXTERIOR, 4, 0.01)
    assert lo == pytest.approx(math.pi / 6.08) and hi == pytest.approx(math.pi / 5.92)
    with pytest.raises(PreconditionFailure):
        corollary7_window(Kind.INTERIOR, 4, 0.1)


@pytest.mark.parametrize("kind", list(Kind))
def test_corollary7_remainder_is_small(kind):
    # the true remainder stays well below the constant used by the window
    for n in range(1, 11):
        for eps in (0.005, 0.01, 0.02):
            lo, hi = corollary7_window(kind, n, eps)
            theta = 0.5 * min_separation(kind, n, eps)
            psi = 0.5 * max_separation(kind, n, eps)
            assert lo - 5 * eps**2 <= theta <= psi <= hi + 5 * eps**2


# ---------------------------------------------------------------- extremal configurations


def test_extremal_examples():
    b = extremal_configuration(Kind.INTERIOR, 1, 0.5, Extremum.MIN_SEP)
    assert abs(b.zeros[0] - 0.5j) < 1e-15
    assert b.rotation == 0.0
    b = extremal_configuration(Kind.INTERIOR, 2, 0.7, Extremum.MIN_SEP)
    assert np.allclose(b.zeros, 0.7 * np.exp(1j * math.pi / 3))
    b = extremal_configuration(Kind.EXTERIOR, 2, 0.7, Extremum.MAX_SEP)
    assert np.allclose(b.zeros, 0.7 * np.exp(1j * math.pi / 4))
    assert extremal_gap(Kind.INTERIOR, 1, 0.5) == pytest.approx(2 * math.pi / 3, abs=1e-9)


@pytest.mark.parametrize("kind", list(Kind))
@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("r", (0.1, 0.5, 0.9))
def test_sharpness(kind, n, r):
    lo, hi = min_separation(kind, n, r), max_separation(kind, n, r)
    for which, bound in ((Extremum.MIN_SEP, lo), (Extremum.MAX_SEP, hi)):
        spec = MapSpec(kind, extremal_configuration(kind, n, r, which), BlaschkeProduct())
        pvs = solve_prevertices(spec)
        gaps = pvs.gaps()
        k = int(np.argmin(gaps) if which is Extremum.MIN_SEP else np.argmax(gaps))
        assert gaps[k] == pytest.approx(bound, abs=1e-7)
        # the designated pair is the one realising the extreme
        pair = extremal_pair(kind, n, r, which)
        zs = pvs.zs
        for p in pair:
            assert np.min(np.abs(zs - p)) < 1e-7
        # the extreme is attained only once; other gaps stay within the bounds
        # (with n + m even one configuration attains both, so the opposite bound may be hit)
        others = np.delete(gaps, k)
        assert np.all(others >= lo - 1e-9) and np.all(others <= hi + 1e-9)
        if which is Extremum.MIN_SEP:
            assert np.all(others > lo + 1e-9)
        else:
            assert np.all(others < hi - 1e-9)


# ---------------------------------------------------------------- mixed separation


@pytest.mark.parametrize("r", (FAMILY_R1 + 1e-3, 0.6, 0.8, 0.95))
def test_family_right_side_attained(r):
    pvs = solve_prevertices(family_spec(r))
    labels = pvs.labels
    gaps = pvs.gaps()
    n = len(labels)
    convex_gaps = [gaps[k] for k in range(n) if labels[k] is Label.CONVEX and labels[(k + 1) % n] is Label.CONVEX]
    assert len(convex_gaps) == 1
    _, upper = mixed_separation_sides(1, 1, r, convex_gaps[0])
    assert upper == pytest.approx(math.pi, abs=1e-7)
    assert mixed_separation_check(1, 1, r, convex_gaps[0], Pair.CONVEX_CONVEX)


@pytest.mark.parametrize("d1", range(1, 7))
def test_convex_r_zero_equality(d1):
    # at r = 0 both sides collapse to (d1 + 1) delta, so the check is equality at the uniform gap
    gap = min_separation(Kind.INTERIOR, d1, 0.0)
    lower, upper = mixed_separation_sides(d1, 0, 0.0, gap)
    assert lower == pytest.approx(math.pi) and upper == pytest.approx(math.pi)
    assert mixed_separation_check(d1, 0, 0.0, gap, tol=1e-9)
    assert not mixed_separation_check(d1, 0, 0.0, gap * 1.01, tol=1e-9)
    assert not mixed_separation_check(d1, 0, 0.0, gap * 0.99, tol=1e-9)


def test_mixed_random_specs():
    rng = np.random.default_rng(7)
    checked = 0
    while checked < 25:
        spec = spec_from_zeros(rng, Kind.INTERIOR, 2, 1, rng.uniform(0.3, 0.95))
        try:
            pvs = check_realizable(spec)
        except SCError:
            continue
        r = spec.max_zero_modulus
        gaps, labels = pvs.gaps(), pvs.labels
        n = len(labels)
        for k in range(n):
            pair = (labels[k], labels[(k + 1) % n])
            if pair == (Label.CONVEX, Label.CONVEX):
                assert mixed_separation_check(2, 1, r, gaps[k], Pair.CONVEX_CONVEX, tol=1e-9)
            elif pair == (Label.CONCAVE, Label.CONCAVE):
                assert mixed_separation_check(2, 1, r, gaps[k], Pair.CONCAVE_CONCAVE, tol=1e-9)
        checked += 1


def test_mixed_preconditions():
    with pytest.raises(PreconditionFailure):
        mixed_separation_sides(1, 1, 1.0, 1.0)
    with pytest.raises(PreconditionFailure):
        mixed_separation_sides(1, 1, 0.5, 0.0)


# ---------------------------------------------------------------- zero location


def test_radius_examples():
    assert zero_radius_lower_bound(Kind.INTERIOR, 0, 1).r_min == pytest.approx(0.5, abs=1e-15)
    assert zero_radius_lower_bound(Kind.EXTERIOR, 0, 1).r_min == pytest.approx(0.6, abs=1e-15)
    for n in range(1, 12):
        s = math.sqrt(4 * n + 5)
        value = zero_radius_lower_bound(Kind.INTERIOR, n - 1, 1).r_min
        assert value == pytest.approx((s + 1) / (s + 5), abs=1e-14)
        assert value >= 0.5
    with pytest.raises(PreconditionFailure):
        zero_radius_lower_bound(Kind.INTERIOR, 3, 0)


def test_koebe_radius_attained():
    spec = koebe_spec()
    assert spec.max_zero_modulus == pytest.approx(zero_radius_lower_bound(Kind.INTERIOR, 0, 1).r_min)


@given(st.sampled_from(list(Kind)), st.integers(0, 12), st.integers(1, 6))
def test_radius_in_unit_interval(kind, d1, d2):
    assert 0.0 <= zero_radius_lower_bound(kind, d1, d2).r_min < 1.0


def test_convexity_radius_examples():
    assert convexity_radius_check(koebe_spec())
    convex = MapSpec.interior(BlaschkeProduct(0.3, (0.5, -0.2j, 0.9 * np.exp(2j))))
    assert convexity_radius_check(convex)
    bad = MapSpec.interior(BlaschkeProduct(), BlaschkeProduct(0.0, (0.1,)))
    assert not convexity_radius_check(bad)
    assert CONVEXITY_RADIUS == pytest.approx(0.2679491924311228)
    with pytest.raises(PreconditionFailure):
        convexity_radius_check(koebe_spec(), samples=100)
    with pytest.raises(PreconditionFailure):
        convexity_radius_check(MapSpec.exterior(BlaschkeProduct()))
