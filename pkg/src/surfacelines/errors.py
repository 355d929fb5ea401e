"""Exception types raised by the exact kernel and the line-detection pipeline."""


class SurfaceLinesError(Exception):
    """Base class for all errors raised by this package."""


class ZeroPolynomial(SurfaceLinesError):
    """An operation that requires a nonzero polynomial received zero."""


class NoEliminationVariable(SurfaceLinesError):
    """Resultant requested with respect to a variable both operands are free of."""


class DivisionByZero(SurfaceLinesError):
    """Exact division by a zero polynomial, rational or field element."""


class MixedFields(SurfaceLinesError):
    """Arithmetic between algebraic numbers living in different number fields."""


class IdenticallyZeroDenominator(SurfaceLinesError):
    """A substitution or construction produced a denominator that is identically zero."""


class PlaneInput(SurfaceLinesError):
    """The surface is a plane (e*, f*, g* all identically zero); no asymptotic data."""


class DegenerateBranchMismatch(SurfaceLinesError):
    """Geodesic-equation branch requested that is inconsistent with e*, f*, g*."""


class RetryBudgetExhausted(SurfaceLinesError):
    """No admissible evaluation point found within the configured retry budget."""


class InsufficientSamples(SurfaceLinesError):
    """Numeric sampling could not collect enough admissible parameter values."""


class DegenerateSample(SurfaceLinesError):
    """All sampled points coincide; no line of best fit exists."""


class PolynomialSyntaxError(SurfaceLinesError):
    """Malformed polynomial or surface-file text.  Carries line/column positions."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ZeroDenominator(SurfaceLinesError):
    """A surface file declares a denominator that parses to the zero polynomial."""
