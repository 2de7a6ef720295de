"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A construction or query parameter is out of its valid range."""


class PreconditionError(ValueError):
    """An operation was called on an input that violates its precondition."""


class RangeError(ValueError):
    """A prediction was requested outside the range where the result is proven."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class HypothesisError(ValueError):
    """The dimension hypotheses of the union calculus are not satisfied."""


class UnsupportedError(NotImplementedError):
    """The requested algebra is not implemented (e.g. Tor terms in a join)."""


class ResourceError(RuntimeError):
    """A resource guard (face count, wall clock) was exceeded."""

    def __init__(self, message, count=None, limit=None):
        super().__init__(message)
        self.count = count
        self.limit = limit
