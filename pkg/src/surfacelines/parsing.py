"""Text syntax for polynomials and the canonical printer.

Syntax: integer literals, rational constants written with `/`, the
variables `t`, `s`, `w`, the operators `+ - * ^`, and parentheses.
Multiplication is always explicit (`2*t`, never `2t`).  `/` is only
allowed when the divisor is a nonzero constant.  Exponents are
nonnegative integer literals.

The canonical printed form lists terms in descending graded-lex order
(t < s < w) with explicit `*` and `^`, e.g. ``2*s*w^2 - 2*t*w``.
Parsing the printed form reproduces the polynomial exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PolynomialSyntaxError
from .mpoly import MPoly


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line = 1
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch.isdigit():
            start = i
            start_col = col
            while i < n and text[i].isdigit():
                i += 1
                col += 1
            tokens.append(_Token("number", text[start:i], line, start_col))
            continue
        if ch.isalpha():
            start = i
            start_col = col
            while i < n and text[i].isalnum():
                i += 1
                col += 1
            name = text[start:i]
            if name not in ("t", "s", "w"):
                raise PolynomialSyntaxError(f"unknown variable {name!r}", line, start_col)
            tokens.append(_Token("var", name, line, start_col))
            continue
        if ch in "+-*/^()":
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise PolynomialSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise PolynomialSyntaxError(message, tok.line, tok.col)

    def parse_expr(self) -> MPoly:
        value = self.parse_term()
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self) -> MPoly:
        value = self.parse_factor()
        while self.peek().kind in ("*", "/"):
            op = self.advance()
            rhs = self.parse_factor()
            if op.kind == "*":
                value = value * rhs
            else:
                if not rhs.is_constant:
                    self.fail("division is only allowed by a nonzero constant", op)
                c = rhs.constant_value()
                if c == 0:
                    self.fail("division by zero", op)
                value = value.scale(Fraction(1) / c)
        return value

    def parse_factor(self) -> MPoly:
        sign = 1
        while self.peek().kind in ("+", "-"):
            if self.advance().kind == "-":
                sign = -sign
        base = self.parse_atom()
        if self.peek().kind == "^":
            caret = self.advance()
            exp_tok = self.peek()
            if exp_tok.kind != "number":
                self.fail("exponent must be a nonnegative integer", caret)
            self.advance()
            base = base ** int(exp_tok.text)
        return base if sign > 0 else -base

    def parse_atom(self) -> MPoly:
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            return MPoly.const(int(tok.text))
        if tok.kind == "var":
            self.advance()
            return MPoly.var(tok.text)
        if tok.kind == "(":
            self.advance()
            value = self.parse_expr()
            if self.peek().kind != ")":
                self.fail("expected ')'")
            self.advance()
            return value
        self.fail(f"unexpected token {tok.text!r}" if tok.text else "unexpected end of input", tok)


def parse_poly(text: str) -> MPoly:
    """Parse polynomial text into an exact MPoly."""
    parser = _Parser(_tokenize(text))
    value = parser.parse_expr()
    if parser.peek().kind != "end":
        parser.fail(f"trailing input {parser.peek().text!r}")
    return value


def _format_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _format_monomial(exps: tuple[int, int, int]) -> str:
    parts = []
    for name, e in zip(("t", "s", "w"), exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def poly_to_text(f: MPoly) -> str:
    """Canonical text form: descending graded-lex terms, explicit * and ^."""
    if f.is_zero:
        return "0"
    terms = sorted(
        f.terms(),
        key=lambda item: (sum(item[0]), item[0][2], item[0][1], item[0][0]),
        reverse=True,
    )
    pieces = []
    for exps, coeff in terms:
        mono = _format_monomial(exps)
        mag = abs(coeff)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_format_coeff(mag)}*{mono}"
        else:
            body = _format_coeff(mag)
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)
