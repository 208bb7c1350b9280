"""Exception hierarchy shared by all numerical routines."""


class ArealMahlerError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ArealMahlerError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class PoleError(DomainError):
    """Evaluation requested at (or numerically on top of) a pole."""


class BranchCutError(DomainError):
    """Evaluation requested on a branch cut that the routine does not continue across."""


class InvalidSpecError(ArealMahlerError, ValueError):
    """A parameter bundle violates its construction invariants."""


class ConvergenceError(ArealMahlerError, ArithmeticError):
    """An iterative or series method failed to reach its tolerance."""


class NonFiniteError(ArealMahlerError, ArithmeticError):
    """A computation produced NaN or infinity."""


class ZeroCountMismatch(ArealMahlerError):
    """Argument-principle count disagrees with the zeros found on the grid."""
