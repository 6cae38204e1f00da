"""Exception hierarchy shared by every grouplab module."""


class GroupLabError(Exception):
    """Base class for all library errors."""


class ElementError(GroupLabError, ValueError):
    """An element does not belong to the group it was used with."""


class UnsupportedOperation(GroupLabError, TypeError):
    """The operation is not available for this kind of group (e.g. enumerating Z^d)."""


class GroupMismatch(GroupLabError, ValueError):
    pass


class ModeError(GroupLabError, ValueError):
    """Rational and real measures were mixed."""


class PreconditionError(GroupLabError, ValueError):
    """Inputs violate a mathematical precondition.

    ``witness`` optionally carries the offending element or value.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(GroupLabError, ValueError):
    pass


class ResourceCapExceeded(GroupLabError, RuntimeError):
    pass
