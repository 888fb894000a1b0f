"""Exception types shared across the package."""


class KhinsphereError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(KhinsphereError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at (or within guard distance of) a gamma pole."""


class DivergenceError(DomainError):
    """The requested quantity is a divergent integral or series."""


class ConvergenceError(KhinsphereError, RuntimeError):
    """An iterative computation exhausted its budget before converging."""


class ToleranceError(KhinsphereError, RuntimeError):
    """A computed result could not be certified to the requested tolerance."""


class NoBracketError(KhinsphereError, RuntimeError):
    """A root scan found no sign change on the search interval."""


class MultipleRootsError(KhinsphereError, RuntimeError):
    """A root scan found more than one sign change where uniqueness is asserted."""
