"""Exception hierarchy shared by the whole package."""


class HypergridError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDigitError(HypergridError, ValueError):
    """A digit lies outside the allowed range 0..p-5."""


class NonCanonicalError(HypergridError, ValueError):
    """An operation requiring a canonical coordinate got a non-canonical one."""


class UnderflowError(HypergridError, ValueError):
    """Decrement below node 0 (the empty coordinate)."""


class UnsupportedParameterError(HypergridError, ValueError):
    """Operation not defined for this value of p (e.g. general path algorithm at p=7)."""


class BudgetExceededError(HypergridError, RuntimeError):
    """A materialization would exceed the configured node budget."""


class PathError(HypergridError, ValueError):
    """A path step leaves the materialized tree or exceeds a child count."""
