"""Exception hierarchy shared by all solver modules."""


class EarlyWorkError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(EarlyWorkError):
    """Input data violates a documented precondition (bad instance, bad
    assignment, malformed file, ...)."""


class ContractViolationError(EarlyWorkError):
    """An internal invariant that callers must establish was found broken
    (e.g. an operation that requires preprocessed input received a raw
    instance)."""


class ResourceLimitError(EarlyWorkError):
    """A configured search/enumeration budget was exceeded.  The result was
    not truncated; the operation refused to run."""
