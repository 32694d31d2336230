"""Exception hierarchy.

Every domain failure raised by the library derives from :class:`CompolyError`;
the CLI maps these to exit status 1.
"""


class CompolyError(Exception):
    """Base class for all domain errors."""


class NoSuchRoot(CompolyError):
    pass


class BadFieldMismatch(CompolyError):
    pass


class ZeroInput(CompolyError):
    pass


class NotFiniteField(CompolyError):
    pass


class InseparableInput(CompolyError):
    pass


class NotInMh(CompolyError):
    pass


class CharDividesDenominator(CompolyError):
    pass


class NonpositiveValuation(CompolyError):
    pass


class BadRootOrder(CompolyError):
    pass


class RootOutsideField(CompolyError):
    """A characteristic polynomial has roots outside the configured field."""

    def __init__(self, msg, poly=None):
        super().__init__(msg)
        self.poly = poly


class CharTooSmall(CompolyError):
    pass


class ZeroRoot(CompolyError):
    pass


class SearchBudgetExceeded(CompolyError):
    pass


class ConstantTermNonzero(CompolyError):
    pass


class NotCoprime(CompolyError):
    pass


class DegreeBoundExceeded(CompolyError):
    pass


class NotMonic(CompolyError):
    """Leading y-coefficient is not a unit monomial c*x^k, or deg_y < 1."""


class NotMember(CompolyError):
    pass


class ZeroElement(CompolyError):
    pass


class ParseError(CompolyError):
    """Syntax error in a polynomial expression, with 1-based line/column."""

    def __init__(self, msg, line=1, col=1):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.col = col


class NonPolynomial(ParseError):
    pass


class NotIrreducible(CompolyError):
    pass
