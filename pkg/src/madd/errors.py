"""Shared exception types for the madd package."""


class MaddError(Exception):
    """Base class for all package-specific errors."""


class ParseError(MaddError):
    """Raised when SMILES/SMARTS text cannot be parsed.

    ``offset`` is the byte offset into the input where the problem was
    detected.
    """

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
        self.offset = offset


class UnclosedRingError(ParseError):
    pass


class UnbalancedParenError(ParseError):
    pass


class UnbalancedBracketError(ParseError):
    pass


class UnknownElementError(ParseError):
    pass


class ValenceViolationError(ParseError):
    pass


class UnsupportedFeatureError(ParseError):
    """A syntactically valid construct that is deliberately out of scope."""


class LengthMismatchError(MaddError):
    pass


class CatalogNotLoadedError(MaddError):
    pass


class EmptyDatasetError(MaddError):
    pass


class NonPositiveValueError(MaddError):
    pass


class BadKError(MaddError):
    pass


class ExternalCommandFailedError(MaddError):
    def __init__(self, message: str, exit_code: int | None = None, stderr: str = ""):
        super().__init__(message)
        self.exit_code = exit_code
        self.stderr = stderr


class ParseFailureError(MaddError):
    pass


class UnknownCaseError(MaddError):
    pass


class UnknownModelError(MaddError):
    pass


class BackendUnavailableError(MaddError):
    pass


class EmptySeedPopulationError(MaddError):
    pass


class MalformedResponseError(MaddError):
    pass


class MalformedPlanError(MaddError):
    pass


class UnknownToolError(MaddError):
    pass


class SchemaViolationError(MaddError):
    pass


class HandlerFailureError(MaddError):
    pass


class IncompleteAnswerError(MaddError):
    pass


class SchemaError(MaddError):
    pass


class HttpFetchError(MaddError):
    def __init__(self, message: str, status: int | None = None):
        super().__init__(message)
        self.status = status


class RateLimitedError(HttpFetchError):
    pass


class TargetNotFoundError(MaddError):
    pass
