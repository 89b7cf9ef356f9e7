"""
Exception hierarchy shared by every package.

All library failures derive from `BanditError`; the CLI maps each family
onto an exit code.
"""


class BanditError(Exception):
    """Base class for every error raised by the toolkit."""


# numkit


class DimensionMismatchError(BanditError, ValueError):
    """Array shapes do not agree."""


class NumericalBreakdownError(BanditError, ArithmeticError):
    """An iterative routine lost feasibility or exceeded its pivot budget."""


class InconsistentSystemError(BanditError, ValueError):
    """A linear system A y = b has no solution within tol_feas."""


# geometry


class EmptySubspaceError(BanditError, ValueError):
    """An affine subspace given by equations has no points."""


class UnsupportedBodyError(BanditError, TypeError):
    """The operation is not available for this kind of convex body."""


class NotOnHyperplaneError(BanditError, ValueError):
    """The point does not sum to one."""


class DegenerateInputError(BanditError, ValueError):
    """A sine has no points to sample or compare."""


class SubspaceInBodyError(DegenerateInputError):
    """B lies inside D, so no point of B is outside D."""


class EmptyIntersectionError(BanditError, ValueError):
    """A subspace misses the body it is intersected with."""


# model


class IndexOutOfGridError(BanditError, IndexError):
    """An arm or hypothesis index is outside its grid."""


class InfeasibleCredalSetError(BanditError, ValueError):
    """The credal section K_theta(x)+ is empty."""


class QueryOutsideBodyError(BanditError, ValueError):
    """A convexified reward was queried outside the outcome body."""


# certificates


class InfeasiblePreimageError(BanditError, ValueError):
    """F_{x theta} is not onto, so some w has no preimage."""


class NoApplicableMethodError(BanditError, ValueError):
    """No sine estimator applies to this scenario."""


class ZeroGapError(BanditError, ValueError):
    """The gap bound needs a strictly positive gap."""


# agents and nature


class PolicyProtocolError(BanditError, RuntimeError):
    """select_arm / observe (or reset / respond) called out of order."""


class HypothesisEliminatedError(BanditError, RuntimeError):
    """IUCB's confidence set became empty in strict mode."""


class EmptyConfidenceSetError(BanditError, ValueError):
    """An optimistic hypothesis was requested from an empty set."""


class OutcomeOutsideBodyError(BanditError, ValueError):
    """An observed outcome lies outside the outcome body."""


class SingularMatrixError(BanditError, ArithmeticError):
    """The confidence-ball design matrix lost positive definiteness."""


class IncompatibleMeanError(BanditError, ValueError):
    """A fixed mean is not in the credal section of the true hypothesis."""


# configuration


class ConfigError(BanditError, ValueError):
    """Experiment or scenario JSON does not match its schema."""


class ScenarioValidationError(BanditError, ValueError):
    """A scenario failed its family validation."""
