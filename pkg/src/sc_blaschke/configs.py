"""Reference configurations: the Koebe pair, a square, the one-parameter
family with ``d1 = d2 = 1`` and a non-univalent polygon with ``sum |beta|``
slightly above 2."""

from __future__ import annotations

import math

import numpy as np

from .blaschke import TWO_PI, BlaschkeProduct
from .errors import SCError
from .mapspec import Kind, MapSpec
from .prevertex import PrevertexSet
from .scmap import Injectivity, covering_numbers, grid_injectivity, polygon_self_intersects, trace_polygon

#: boundary of the admissible range of the family below
FAMILY_R0 = math.sqrt(5.0) - 2.0
#: ``phi'(0) = -2`` there, i.e. ``beta = -1/2`` at ``z = 1``
FAMILY_R1 = (1.0 + math.sqrt(13.0)) / (5.0 + math.sqrt(13.0))

SEARCH_SEED = 20261016
SEARCH_RHOS = (0.98, 0.99, 0.995, 0.999)

# found by search_non_univalent(SEARCH_SEED); sum |beta| = 2.0849
NON_UNIVALENT_TS = (
    1.408231318272983,
    3.157531400904121,
    3.287577792575823,
    3.856684696995181,
    4.235290515301858,
    5.6342666401760075,
    5.9669300539828845,
)
NON_UNIVALENT_BETAS = (
    0.1780857554476443,
    0.16489121442208718,
    0.37101755573841216,
    0.36995153419670157,
    0.45850399588919133,
    -0.2603138131663574,
    -0.28213624252767894,
)


def koebe_spec() -> MapSpec:
    """``B1 = 1`` and ``B2 = (z + 1/2)/(1 + z/2)``: the Koebe function."""
    return MapSpec.interior(BlaschkeProduct(), BlaschkeProduct(0.0, (-0.5,)))


def square_spec() -> MapSpec:
    """``B1 = z^3``: the square with pre-vertices at the fourth roots of unity."""
    return MapSpec.interior(BlaschkeProduct(0.0, (0j, 0j, 0j)), BlaschkeProduct())


def family_spec(r: float) -> MapSpec:
    """``B1 = (z + r)/(1 + r z)``, ``B2 = (z - r)/(1 - r z)``; admissible iff ``r > sqrt(5) - 2``."""
    return MapSpec.interior(BlaschkeProduct(0.0, (-r,)), BlaschkeProduct(0.0, (r,)))


def non_univalent_configuration() -> PrevertexSet:
    return PrevertexSet.from_angles(NON_UNIVALENT_TS, NON_UNIVALENT_BETAS, Kind.INTERIOR)


def is_robustly_non_univalent(pvs: PrevertexSet) -> bool:
    """Traced polygon crosses itself, covers some face twice, and every
    level curve in ``SEARCH_RHOS`` self-intersects."""
    try:
        trace = trace_polygon(pvs)
    except SCError:
        return False
    if not trace.finite or not polygon_self_intersects(trace):
        return False
    if max(w for _, w in covering_numbers(trace)) < 2:
        return False
    return all(grid_injectivity(pvs, rho=rho) is Injectivity.SELF_INTERSECTING for rho in SEARCH_RHOS)


def search_non_univalent(seed: int = SEARCH_SEED, trials: int = 6000, cap: float = 2.3):
    """First random configuration with ``2 < sum |beta| <= cap``, all vertices
    finite and ``sum beta = 1`` that is robustly non-univalent.

    Returns ``(trial, PrevertexSet)`` or ``None``.
    """
    rng = np.random.default_rng(seed)
    slack = 0.5 * (cap - 1.0)
    for trial in range(trials):
        n = int(rng.integers(4, 8))
        nneg = int(rng.integers(1, min(3, n - 2) + 1))
        mass = rng.uniform(0.501, slack)
        neg = -mass * rng.dirichlet(np.full(nneg, 2.0))
        pos = (1.0 + mass) * rng.dirichlet(np.full(n - nneg, 2.0))
        betas = np.concatenate([pos, neg])
        rng.shuffle(betas)
        if np.any(np.abs(betas) >= 0.49):
            continue
        ts = np.sort(rng.uniform(0.0, TWO_PI, n))
        if np.min(np.diff(np.append(ts, ts[0] + TWO_PI))) < 0.1:
            continue
        pvs = PrevertexSet.from_angles(ts, betas, Kind.INTERIOR)
        if is_robustly_non_univalent(pvs):
            return trial, pvs
    return None
