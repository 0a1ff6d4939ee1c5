"""Exception types raised across the package."""


class SCError(Exception):
    """Base class for every error raised by this package."""


class PoleEvaluation(SCError, ZeroDivisionError):
    """A Blaschke product was evaluated at (or numerically on top of) a pole."""


class DegreeCollapse(SCError):
    """The pre-vertex polynomial lost its leading coefficient."""


class Inadmissible(SCError):
    """The Blaschke pair does not come from a Schwarz-Christoffel map.

    Raised when a root of the pre-vertex polynomial leaves the unit circle
    or when two roots collide.
    """

    def __init__(self, message, roots=None):
        super().__init__(message)
        self.roots = roots


class OracleMiss(SCError):
    """Boundary sampling was too coarse to separate two pre-vertices."""


class DegenerateAngle(SCError):
    """The boundary function has a (numerically) vanishing derivative at a pre-vertex."""


class CountMismatch(SCError):
    """Convex/concave counts disagree with the Blaschke degrees."""


class UnwrapFailure(SCError):
    """Adjacent argument samples are too far apart to unwrap reliably."""


class AsymmetricInput(SCError, ValueError):
    """Exterior angles are not symmetric under complex conjugation."""


class DivergentEdge(SCError):
    """An edge joins two vertices at infinity and cannot be anchored."""


class PreconditionFailure(SCError, ValueError):
    """Arguments violate the documented hypotheses of a bound."""
