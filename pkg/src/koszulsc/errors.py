"""Exception types shared across the package."""


class ComplexError(ValueError):
    """Invalid simplicial-complex input (bad vertex ids, bad file, ...)."""


class GuardError(RuntimeError):
    """A size guard for an all-subsets computation was exceeded."""


class ConsistencyError(RuntimeError):
    """Internal invariant violated (nonzero composite, commutativity failure)."""


class OracleError(AssertionError):
    """Two independent routes to the same quantity disagreed."""
