"""Exception hierarchy shared by all oretel modules."""


class OretelError(Exception):
    """Base class for all errors raised by this package."""


class DivisionNotExact(OretelError, ArithmeticError):
    pass


class BadEvaluationPoint(OretelError, ArithmeticError):
    """A denominator vanished under a homomorphic evaluation."""


class NotDFinite(OretelError):
    pass


class CompletionCapExceeded(OretelError):
    pass


class IncompatibleCertificates(OretelError):
    pass


class TableOutOfRange(OretelError, LookupError):
    pass


class CoefficientPole(OretelError, ZeroDivisionError):
    pass


class NoSolution(OretelError):
    pass


class DegreeCapExceeded(OretelError):
    def __init__(self, max_degree, message=None):
        self.max_degree = max_degree
        super().__init__(message or f"no homomorphic solution up to degree {max_degree}")


class SearchExhausted(OretelError):
    pass


class ParseError(OretelError, ValueError):
    """Syntax or name error in an operator / rational-function string."""

    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.column = line, col
        super().__init__(f"{message} (line {line}, column {col})")
