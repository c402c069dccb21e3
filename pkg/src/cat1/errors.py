"""Exception hierarchy shared by every module."""


class Cat1Error(Exception):
    """Base class for all errors raised by the package."""


class ValidationError(Cat1Error):
    pass


class MissingComposite(ValidationError):
    pass


class NonAssociative(ValidationError):
    pass


class BadIdentity(ValidationError):
    pass


class DanglingEndpoint(ValidationError):
    pass


class InvalidFunctor(ValidationError):
    pass


class EndpointMismatch(Cat1Error):
    pass


class BudgetExceeded(Cat1Error):
    """A configured search budget was exhausted before an answer was found."""

    def __init__(self, message, *, used=None, limit=None):
        super().__init__(message)
        self.used = used
        self.limit = limit


class BasepointOutOfRange(Cat1Error):
    pass


class InfiniteOrUnknownPi1(Cat1Error):
    pass


class IndexNotFinite(Cat1Error):
    pass


class NotPathConnected(Cat1Error):
    pass


class ActionNotFree(Cat1Error):
    def __init__(self, message, *, element=None, obj=None):
        super().__init__(message)
        self.element = element
        self.obj = obj


class SubgroupObstruction(Cat1Error):
    def __init__(self, message, *, word=None):
        super().__init__(message)
        self.word = word


class UnknownResult(Cat1Error):
    """Raised by constructions whose decision procedure ran out of resources."""


class InternalDisagreement(Cat1Error):
    """Two independent computations of the same property disagreed."""


class ParseError(Cat1Error):
    def __init__(self, message, *, line=None, path=None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.path = path
