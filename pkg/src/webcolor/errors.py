"""Exception hierarchy shared by all modules."""


class WebError(Exception):
    """Base class for domain errors raised by this package."""


class InvalidWeb(WebError):
    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(str(v) for v in report.violations) or "invalid web")


class EmptyWeb(WebError):
    pass


class NotSimpleCycle(WebError):
    pass


class CycleSeparationFailure(WebError):
    """A simple cycle failed to split the faces into exactly two regions."""


class NotALoop(WebError):
    pass


class NotADigon(WebError):
    pass


class NotASquare(WebError):
    pass


class DegenerateSquare(NotASquare):
    pass


class IncompatibleSurgeryWitness(WebError):
    pass


class ImproperColoring(WebError):
    pass


class CycleNotBicoloredInColoring(WebError):
    pass


class GreenSwapUnsupported(WebError):
    pass


class ParseError(WebError):
    """Malformed WEBX/GRAPHX input; carries a 1-based line and column."""

    kind = "SyntaxError"

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{self.kind} at {line}:{column}: {message}")


class WebxSyntaxError(ParseError):
    kind = "SyntaxError"


class UnknownDart(ParseError):
    kind = "UnknownDart"


class DuplicateRotation(ParseError):
    kind = "DuplicateRotation"


class MissingOuter(ParseError):
    kind = "MissingOuter"


class ValidationFailure(ParseError):
    kind = "ValidationFailure"

    def __init__(self, report, line: int = 0):
        self.report = report
        msg = "; ".join(str(v) for v in report.violations)
        super().__init__(msg, line, 0)
