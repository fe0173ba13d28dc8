"""Exception types shared across the package."""


class BoolfunError(Exception):
    """Base class for package-specific failures."""


class CapacityError(BoolfunError):
    """Input exceeds a hard capacity cap (arity, enumeration size, ...)."""


class DomainError(BoolfunError, ValueError):
    """Parameter outside its mathematical domain (rho, epsilon, ...)."""


class PreconditionError(BoolfunError, ValueError):
    """Structured precondition violated (normalization, partition, ...)."""


class TieError(PreconditionError):
    """A threshold spec evaluates to exactly zero at some point."""


class NumericError(BoolfunError):
    """An iterative numeric procedure failed to converge."""


class LpError(BoolfunError):
    """LP solver failure; carries context about the last certified state."""

    def __init__(self, message, last_infeasible=None, residual=None):
        super().__init__(message)
        self.last_infeasible = last_infeasible
        self.residual = residual
