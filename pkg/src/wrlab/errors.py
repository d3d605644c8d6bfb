"""Exception hierarchy shared by all wrlab modules."""


class WrlabError(Exception):
    """Base class for all toolkit errors."""


class DomainError(WrlabError):
    """Input violates a documented precondition."""


class DegeneracyError(DomainError):
    """A matrix or map that must be full rank is singular."""


class UndecidableError(WrlabError):
    """The requested exact comparison cannot be decided in the working field."""


class ResourceError(WrlabError):
    """A configured resource cap (enumeration nodes) was exceeded."""
