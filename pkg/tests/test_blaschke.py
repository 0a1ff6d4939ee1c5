import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sc_blaschke.blaschke import (
    BlaschkeProduct,
    boundary_arc_increment,
    boundary_derivative_magnitude,
    common_zero_check,
    evaluate,
    linear_factor_coefficients,
)
from sc_blaschke.errors import PoleEvaluation

disk_points = st.builds(
    lambda r, a: r * complex(math.cos(a), math.sin(a)),
    st.floats(0.0, 0.95),
    st.floats(0.0, 2 * math.pi),
)
products = st.builds(
    BlaschkeProduct,
    st.floats(0.0, 2 * math.pi),
    st.lists(disk_points, max_size=6).map(tuple),
)


def test_empty_product_is_one():
    b = BlaschkeProduct()
    assert b.degree == 0
    assert evaluate(b, 0.37 - 0.2j) == pytest.approx(1.0)


def test_identity_product():
    assert evaluate(BlaschkeProduct(0.0, (0j,)), 0.5) == pytest.approx(0.5)


def test_factor_at_one():
    b = BlaschkeProduct(0.0, (-0.6,))
    assert abs(evaluate(b, 1.0) - 1.0) < 1e-15


def test_rotation_normalised():
    b = BlaschkeProduct(3 * math.pi, ())
    assert 0.0 <= b.rotation < 2 * math.pi
    assert b.constant == pytest.approx(-1.0)


@pytest.mark.parametrize("zero", [1.0, 1.0 - 1e-13, 1.5j, complex(0.8, 0.6)])
def test_zero_outside_disk_rejected(zero):
    with pytest.raises(ValueError):
        BlaschkeProduct(0.0, (zero,))


def test_pole_evaluation():
    b = BlaschkeProduct(0.0, (0.5,))
    with pytest.raises(PoleEvaluation):
        evaluate(b, 2.0)
    with pytest.raises(ZeroDivisionError):
        evaluate(b, np.array([0.1, 2.0]))


def test_boundary_derivative_examples():
    assert boundary_derivative_magnitude(BlaschkeProduct(0.0, (0j,)), 1.234) == pytest.approx(1.0)
    koebe_b2 = BlaschkeProduct(0.0, (-0.5,))
    assert boundary_derivative_magnitude(koebe_b2, math.pi) == pytest.approx(3.0)
    r = 0.6
    b = BlaschkeProduct(0.0, (r,))
    assert boundary_derivative_magnitude(b, 0.0) == pytest.approx((1 + r) / (1 - r))


def test_common_zero_check():
    a = BlaschkeProduct(0.0, (0.3,))
    assert common_zero_check(a, BlaschkeProduct(0.0, (-0.3,)))
    assert not common_zero_check(a, BlaschkeProduct(0.0, (0.3,)))
    assert common_zero_check(BlaschkeProduct(0.0, (-0.6,)), BlaschkeProduct(0.0, (0.6,)))


def test_maximum_modulus_sampling(rng):
    b = BlaschkeProduct(1.1, tuple(0.9 * np.sqrt(rng.uniform(size=5)) * np.exp(2j * np.pi * rng.uniform(size=5))))
    inner = np.sqrt(rng.uniform(size=1000)) * 0.999 * np.exp(2j * np.pi * rng.uniform(size=1000))
    assert np.all(np.abs(evaluate(b, inner)) < 1.0)
    circle = np.exp(2j * np.pi * rng.uniform(size=1000))
    assert np.max(np.abs(np.abs(evaluate(b, circle)) - 1.0)) < 1e-10


def test_derivative_matches_finite_difference(rng):
    b = BlaschkeProduct(0.4, tuple(0.8 * np.sqrt(rng.uniform(size=4)) * np.exp(2j * np.pi * rng.uniform(size=4))))
    t = 2 * np.pi * rng.uniform(size=1000)
    h = 1e-5
    fwd = evaluate(b, np.exp(1j * (t + h)))
    bwd = evaluate(b, np.exp(1j * (t - h)))
    fd = np.angle(fwd / bwd) / (2 * h)
    assert np.max(np.abs(fd - boundary_derivative_magnitude(b, t))) < 1e-6


@given(products, products, disk_points)
def test_degree_additivity(b1, b2, z):
    prod = b1 * b2
    assert prod.degree == b1.degree + b2.degree
    assert abs(evaluate(prod, z) - evaluate(b1, z) * evaluate(b2, z)) < 1e-12


@given(products, st.floats(0.0, 2 * math.pi))
def test_unimodular_on_circle(b, t):
    assert abs(abs(evaluate(b, complex(math.cos(t), math.sin(t)))) - 1.0) < 1e-12


@given(products, st.floats(0.0, 2 * math.pi), st.floats(0.0, 2 * math.pi))
def test_rotated_product(b, sigma, extra):
    z = 0.3 - 0.4j
    rot = b.rotated(sigma, extra)
    expected = np.exp(1j * extra) * evaluate(b, np.exp(1j * sigma) * z)
    assert abs(evaluate(rot, z) - expected) < 1e-12


@given(products, st.floats(0.0, 2 * math.pi), st.floats(0.01, 3.0))
def test_arc_increment_matches_phase(b, t0, h):
    # the continuous argument of B over a short arc, tracked on a fine grid
    t = np.linspace(t0, t0 + h, 4001)
    vals = evaluate(b, np.exp(1j * t))
    dphase = np.sum(np.angle(vals[1:] / vals[:-1]))
    exact = boundary_arc_increment(b, np.array([t0]), h)[0]
    assert abs(exact - dphase) < 1e-8


def test_linear_factor_coefficients():
    zeros = (0.5, -0.2j)
    c = linear_factor_coefficients(zeros, reflected=False)
    assert np.allclose(np.polynomial.polynomial.polyroots(c), sorted(zeros, key=lambda z: z.real))
    r = linear_factor_coefficients(zeros, reflected=True)
    z = 0.3 + 0.1j
    expected = (1 - 0.5 * z) * (1 - np.conj(-0.2j) * z)
    assert np.polynomial.polynomial.polyval(z, r) == pytest.approx(expected)
