"""Exception types shared across the package."""


class SphaeraError(Exception):
    """Base class for all package-specific errors."""


class DomainError(SphaeraError, ValueError):
    """An input lies outside the geometric domain of an operation."""


class ArgumentError(SphaeraError, ValueError):
    """Malformed or inconsistent arguments (e.g. dimension mismatch)."""


class DegeneracyError(SphaeraError, ValueError):
    """Geometrically degenerate input (collinear points, repeated vertices...)."""


class InfeasibleError(SphaeraError, ValueError):
    """No admissible configuration exists (e.g. no containing hemisphere)."""


class PreconditionError(SphaeraError, ValueError):
    """A documented operation precondition failed; the message names it."""


class ConvergenceError(SphaeraError, RuntimeError):
    """An iterative method exhausted its budget without converging."""


class NumericError(SphaeraError, RuntimeError):
    """A numerical step failed (bracket failure, singular configuration)."""


class SingularityError(NumericError):
    """Evaluation at a removable/essential singularity of a closed form."""
