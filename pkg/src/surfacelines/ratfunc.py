"""Normalized rational functions num/den over Q[t, s, w].

Canonical form: gcd(num, den) = 1 and the denominator is integer-primitive
with positive leading coefficient (all rational content is pushed into the
numerator).  With this convention the numerator of a rational quantity is
well-defined exactly, which the candidate-generation stage relies on.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .errors import DivisionByZero, IdenticallyZeroDenominator
from .mpoly import MPoly, poly_gcd


class RatFunc:
    """Immutable quotient of two MPoly values, kept in canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None, _normalized: bool = False):
        if den is None:
            den = MPoly.one()
        if den.is_zero:
            raise DivisionByZero("rational function with zero denominator")
        if not _normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    # ------------------------------------------------------------------

    @staticmethod
    def const(value) -> "RatFunc":
        return RatFunc(MPoly.const(value), MPoly.one(), _normalized=True)

    @staticmethod
    def from_poly(p: MPoly) -> "RatFunc":
        return RatFunc(p, MPoly.one(), _normalized=True)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den == MPoly.one()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        from .parsing import poly_to_text

        if self.is_polynomial:
            return f"RatFunc({poly_to_text(self.num)})"
        return f"RatFunc(({poly_to_text(self.num)}) / ({poly_to_text(self.den)}))"

    # ------------------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.num.is_zero:
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def diff(self, var: str) -> "RatFunc":
        """Partial derivative by the quotient rule, immediately normalized."""
        if self.is_polynomial:
            return RatFunc(self.num.diff(var), MPoly.one(), _normalized=True)
        n = self.num.diff(var) * self.den - self.num * self.den.diff(var)
        return RatFunc(n, self.den * self.den)

    def eval_all(self, values: Mapping[str, object]) -> Fraction:
        d = self.den.eval_all(values)
        if d == 0:
            raise DivisionByZero("denominator vanishes at the evaluation point")
        return self.num.eval_all(values) / d

    def substitute(self, mapping: Mapping[str, "RatFunc"]) -> "RatFunc":
        """Exact composition: substitute var -> rational function."""
        pairs = {v: (rf.num, rf.den) for v, rf in mapping.items()}
        n_num, n_den = self.num.substitute(pairs)
        d_num, d_den = self.den.substitute(pairs)
        if d_num.is_zero:
            raise IdenticallyZeroDenominator(
                "substitution sends the denominator to the zero polynomial"
            )
        return RatFunc(n_num * d_den, d_num * n_den)


def _normalize(num: MPoly, den: MPoly) -> tuple[MPoly, MPoly]:
    if num.is_zero:
        return num, MPoly.one()
    if den.is_constant:
        c = den.constant_value()
        if c == 1:
            return num, den
        return num.scale(Fraction(1) / c), MPoly.one()
    g = poly_gcd(num, den)
    if not g.is_constant:
        num = num.exact_div(g)
        den = den.exact_div(g)
    if den.is_constant:
        return num.scale(Fraction(1) / den.constant_value()), MPoly.one()
    c = den.rational_content()
    if den.leading_coeff() < 0:
        c = -c
    if c != 1:
        num = num.scale(Fraction(1) / c)
        den = den.scale(Fraction(1) / c)
    return num, den


def _coerce(value) -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, MPoly):
        return RatFunc.from_poly(value)
    if isinstance(value, (int, Fraction)):
        return RatFunc.const(value)
    raise TypeError(f"cannot mix RatFunc with {type(value).__name__}")


def substitute_rational(f: RatFunc, mapping: Mapping[str, RatFunc]) -> RatFunc:
    """Compose f with var -> RatFunc replacements, exactly normalized."""
    return f.substitute(mapping)
