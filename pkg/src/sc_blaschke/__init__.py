"""Schwarz-Christoffel maps of the disk described by a pair of Blaschke products."""

from .blaschke import BlaschkeProduct, boundary_derivative_magnitude, evaluate
from .bounds import (
    convexity_radius_check,
    max_separation,
    min_separation,
    mixed_separation_check,
    separation_bound,
    zero_radius_lower_bound,
)
from .errors import (
    CountMismatch,
    DegenerateAngle,
    DegreeCollapse,
    DivergentEdge,
    Inadmissible,
    OracleMiss,
    PoleEvaluation,
    PreconditionFailure,
    SCError,
    UnwrapFailure,
)
from .mapspec import Kind, MapSpec, circle_map, phi_prime
from .prevertex import Label, Prevertex, PrevertexSet, oracle_prevertices, solve_prevertices
from .scmap import (
    Injectivity,
    arc_increments,
    grid_injectivity,
    trace_polygon,
    univalence_bound,
    vertex_counts,
    winding_degree,
)

__version__ = "0.1.0"
