"""Exception hierarchy.

The message strings of the algorithm failures are part of the public
interface and are matched byte for byte by the command line tests.
"""


class HypersumError(Exception):
    """Base class for every error raised by the package."""


class ParseError(HypersumError, SyntaxError):
    """Malformed expression text; ``pos`` is the 0-based column."""

    def __init__(self, msg, pos=None, text=None):
        self.pos = pos
        self.source = text
        where = "" if pos is None else f" at position {pos}"
        super().__init__(f"{msg}{where}")


class ArityError(ParseError):
    message = "illegal number of arguments"

    def __init__(self, name=None, pos=None, text=None):
        SyntaxError.__init__(self, self.message)
        self.name = name
        self.pos = pos
        self.source = text


class DivisionError(HypersumError, ArithmeticError):
    """Polynomial exact division was not exact."""


class NoSolution(HypersumError):
    """A linear system has no solution."""


class NotRational(HypersumError):
    """An expression is not a rational function of its symbols."""


class NotHypergeometric(HypersumError):
    """A term ratio is not a rational function of the running variable."""


class NotGammaRepresentable(NotHypergeometric):
    """A factorial or Gamma argument is not integer-linear in the running variable."""


class PoleError(HypersumError, ZeroDivisionError):
    """Exact evaluation hit a pole."""


class PoleInRange(PoleError):
    pass


class NotEvaluable(HypersumError):
    """Exact evaluation is impossible (e.g. Gamma at a third-integer)."""


class DegenerateRecurrence(HypersumError):
    pass


class UnboundedSupport(HypersumError):
    pass


class AlgorithmFailure(HypersumError):
    """A documented algorithm outcome; ``message`` is printed verbatim."""

    message = ""

    def __init__(self, detail=None):
        self.detail = detail
        super().__init__(self.message)

    def __str__(self):
        return self.message


class GosperNotApplicable(AlgorithmFailure):
    message = "Gosper algorithm not applicable"


class NoClosedForm(AlgorithmFailure):
    message = "Gosper algorithm: no closed form solution exists"


class ZeilbergerNotApplicable(AlgorithmFailure):
    message = "Zeilberger algorithm not applicable"


class OrderExceeded(AlgorithmFailure):
    message = "Zeilberger algorithm fails. Enlarge zb_order"
