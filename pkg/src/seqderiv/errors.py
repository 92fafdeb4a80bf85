"""Exception types shared across the package."""


class SeqDerivError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSetError(SeqDerivError):
    """A closed-set description is malformed (e.g. an interval with lo > hi)."""


class EmptySetError(SeqDerivError):
    """An operation that requires a non-empty set received an empty one."""


class ParamError(SeqDerivError):
    """A parameter is outside its documented range."""


class DomainError(SeqDerivError):
    """A function was evaluated outside its declared domain."""


class SequenceIndexError(SeqDerivError):
    """A sequence was indexed below its starting offset or outside its data."""


class InvalidMapError(SeqDerivError):
    """A subsequence index map is not strictly increasing."""


class InsufficientDataError(SeqDerivError):
    """Not enough trace entries to estimate a limit set."""


class BracketError(SeqDerivError):
    """Target-search witnesses do not bracket the requested value."""


class SearchFailureError(SeqDerivError):
    """An iterative search did not converge within its iteration budget."""


class UsageError(SeqDerivError):
    """Bad command-line usage (unknown function spec, unparseable flag)."""
