"""Sparse multivariate polynomials over Q in the variables t, s, w.

Every polynomial in the pipeline lives in Q[t, s, w].  The canonical term
order is graded lexicographic with t < s < w: terms are compared first by
total degree, ties broken by the exponent of w, then s, then t.  A leading
coefficient always refers to this order.

Coefficients are exact rationals.  The public boundary speaks
`fractions.Fraction` (and plain int); internally we store sympy's sparse
ring elements over QQ, which use gmpy2 rationals when available.

Normalization conventions used throughout the package:

* "primitive, positive leading coefficient" means the rational content
  (gcd of coefficient numerators over lcm of denominators) is divided out
  and the sign is chosen so the leading coefficient is positive.
* `poly_gcd` returns its result in that normal form; gcd(f, 0) is the
  normal form of f, and gcd(0, 0) = 0.
* `content_primitive(f, v)` splits f = content * primitive exactly, where
  the content is the scalar-aware gcd of the coefficients of f viewed as a
  polynomial in v.  The content carries a positive leading coefficient;
  the primitive part keeps the sign of f.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from sympy import QQ, grlex
from sympy.polys.rings import ring as _ring

from .errors import DivisionByZero, NoEliminationVariable, ZeroPolynomial

# Ring generators are declared in the order w, s, t so that sympy's grlex
# tie-break (leftmost generator first) realizes the fixed order t < s < w.
_RING, _W, _S, _T = _ring("w,s,t", QQ, order=grlex)
_GENS = {"t": _T, "s": _S, "w": _W}
_GEN_INDEX = {"t": 2, "s": 1, "w": 0}  # position inside internal exponent tuples

VARIABLES = ("t", "s", "w")


def _to_mpq(value):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    return QQ(value)


def _to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


class MPoly:
    """Immutable sparse polynomial in Q[t, s, w]."""

    __slots__ = ("_p", "_hash")

    def __init__(self, element):
        # internal: wrap a PolyElement of the shared ring
        self._p = element
        self._hash = None

    # ------------------------------------------------------------------
    # construction

    @staticmethod
    def zero() -> "MPoly":
        return _ZERO

    @staticmethod
    def one() -> "MPoly":
        return _ONE

    @staticmethod
    def const(value) -> "MPoly":
        return MPoly(_RING.ground_new(_to_mpq(value)))

    @staticmethod
    def var(name: str) -> "MPoly":
        if name not in _GENS:
            raise ValueError(f"unknown variable {name!r}; expected one of t, s, w")
        return MPoly(_GENS[name])

    @staticmethod
    def from_terms(terms: Mapping[tuple, object]) -> "MPoly":
        """Build from a map (exp_t, exp_s, exp_w) -> coefficient."""
        data = {}
        for (et, es, ew), coeff in terms.items():
            q = _to_mpq(coeff)
            if q:
                data[(ew, es, et)] = q
        return MPoly(_RING.from_dict(data))

    # ------------------------------------------------------------------
    # queries

    @property
    def is_zero(self) -> bool:
        return not self._p

    @property
    def is_constant(self) -> bool:
        return self._p.is_ground

    def terms(self) -> Iterator[tuple[tuple[int, int, int], Fraction]]:
        """Iterate ((exp_t, exp_s, exp_w), coeff) in descending canonical order."""
        for (ew, es, et), coeff in self._p.terms():
            yield (et, es, ew), _to_fraction(coeff)

    def num_terms(self) -> int:
        return len(self._p)

    def degree(self, var: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if not self._p:
            return -1
        return self._p.degree(_GENS[var])

    def total_degree(self) -> int:
        if not self._p:
            return -1
        return max(sum(mon) for mon in self._p.monoms())

    def depends_on(self, var: str) -> bool:
        return self.degree(var) > 0

    def variables(self) -> tuple[str, ...]:
        """The subset of (t, s, w) occurring with positive degree."""
        return tuple(v for v in VARIABLES if self.depends_on(v))

    def leading_coeff(self) -> Fraction:
        """Coefficient of the canonical-order leading term (0 for the zero poly)."""
        if not self._p:
            return Fraction(0)
        return _to_fraction(self._p.LC)

    def constant_value(self) -> Fraction:
        """Value of a constant polynomial."""
        if not self._p:
            return Fraction(0)
        if not self._p.is_ground:
            raise ValueError("polynomial is not constant")
        return _to_fraction(self._p.LC)

    def coeff_wrt(self, var: str, power: int) -> "MPoly":
        """Coefficient of var**power, as a polynomial in the remaining variables."""
        return MPoly(self._p.coeff_wrt(_GENS[var], power))

    def coeffs_wrt(self, var: str) -> list["MPoly"]:
        """Coefficients [c_0, ..., c_d] of f = sum c_i * var**i."""
        d = self.degree(var)
        if d < 0:
            return []
        return [self.coeff_wrt(var, i) for i in range(d + 1)]

    # ------------------------------------------------------------------
    # arithmetic

    def __add__(self, other):
        return MPoly(self._p + _coerce(other)._p)

    __radd__ = __add__

    def __sub__(self, other):
        return MPoly(self._p - _coerce(other)._p)

    def __rsub__(self, other):
        return MPoly(_coerce(other)._p - self._p)

    def __mul__(self, other):
        return MPoly(self._p * _coerce(other)._p)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return MPoly(self._p ** n)

    def __neg__(self):
        return MPoly(-self._p)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self._p == other._p

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._p.terms()))
        return self._hash

    def __bool__(self):
        return bool(self._p)

    def __repr__(self):
        from .parsing import poly_to_text

        return f"MPoly({poly_to_text(self)})"

    def scale(self, value) -> "MPoly":
        """Multiply by an exact rational scalar."""
        return MPoly(self._p * _to_mpq(value))

    def exact_div(self, other: "MPoly") -> "MPoly":
        """Exact quotient self / other; raises if the division is not exact."""
        other = _coerce(other)
        if not other._p:
            raise DivisionByZero("exact division by the zero polynomial")
        q, r = divmod(self._p, other._p)
        if r:
            raise DivisionByZero("division is not exact")
        return MPoly(q)

    def divides(self, other: "MPoly") -> bool:
        """True iff self divides other exactly (self nonzero)."""
        if not self._p:
            return not other._p
        return not (other._p % self._p)

    def try_div(self, other: "MPoly"):
        """Exact quotient self / other, or None when not divisible."""
        if not other._p:
            return None
        q, r = divmod(self._p, other._p)
        if r:
            return None
        return MPoly(q)

    def diff(self, var: str) -> "MPoly":
        return MPoly(self._p.diff(_GENS[var]))

    # ------------------------------------------------------------------
    # evaluation and substitution

    def eval_var(self, var: str, value) -> "MPoly":
        """Substitute a rational value for one variable."""
        q = _to_mpq(value)
        gen = _GENS[var]
        if not self._p:
            return _ZERO
        out = self._p.evaluate([(gen, q)])
        if not hasattr(out, "terms"):  # fully collapsed to a ground value
            return MPoly.const(_to_fraction(out)) if out else _ZERO
        # evaluate() leaves the ring's remaining generators; re-embed
        return MPoly(out.set_ring(_RING)) if out.ring is not _RING else MPoly(out)

    def eval_all(self, values: Mapping[str, object]) -> Fraction:
        """Evaluate at rational values for every variable the poly depends on."""
        acc = Fraction(0)
        vals = {v: Fraction(values.get(v, 0)) for v in VARIABLES}
        for (et, es, ew), coeff in self.terms():
            acc += coeff * vals["t"] ** et * vals["s"] ** es * vals["w"] ** ew
        return acc

    def substitute(self, mapping: Mapping[str, tuple["MPoly", "MPoly"]]) -> tuple["MPoly", "MPoly"]:
        """Substitute var -> num/den for each variable; returns (num, den).

        den is the minimal common power product d_t^degt * d_s^degs * d_w^degw;
        no cancellation is attempted here.
        """
        if not self._p:
            return _ZERO, _ONE
        degs = {v: max(self.degree(v), 0) for v in VARIABLES}
        nums = {}
        dens = {}
        for v in VARIABLES:
            nums[v], dens[v] = mapping.get(v, (MPoly.var(v), _ONE))
        num_pows = {v: _pow_table(nums[v], degs[v]) for v in VARIABLES}
        den_pows = {v: _pow_table(dens[v], degs[v]) for v in VARIABLES}
        total = _ZERO
        for (et, es, ew), coeff in self.terms():
            term = MPoly.const(coeff)
            term = term * num_pows["t"][et] * den_pows["t"][degs["t"] - et]
            term = term * num_pows["s"][es] * den_pows["s"][degs["s"] - es]
            term = term * num_pows["w"][ew] * den_pows["w"][degs["w"] - ew]
            total = total + term
        den = den_pows["t"][degs["t"]] * den_pows["s"][degs["s"]] * den_pows["w"][degs["w"]]
        return total, den

    # ------------------------------------------------------------------
    # normal forms

    def rational_content(self) -> Fraction:
        """Positive rational c with self/c integer-coefficient and primitive."""
        if not self._p:
            return Fraction(0)
        gn = 0
        ld = 1
        for coeff in self._p.values():
            gn = math.gcd(gn, abs(int(coeff.numerator)))
            d = int(coeff.denominator)
            ld = ld * d // math.gcd(ld, d)
        return Fraction(gn, ld)

    def primitive_positive(self) -> "MPoly":
        """Divide out the rational content and normalize the leading sign."""
        if not self._p:
            return _ZERO
        c = self.rational_content()
        if self._p.LC < 0:
            c = -c
        return self.scale(1 / c)

    def positive_sign(self) -> "MPoly":
        """Flip the global sign if the leading coefficient is negative."""
        if self._p and self._p.LC < 0:
            return -self
        return self

    def monomial_split(self) -> tuple[int, int, "MPoly"]:
        """Factor out the largest t^a * s^b monomial; returns (a, b, cofactor)."""
        if not self._p:
            return 0, 0, _ZERO
        a = min(mon[2] for mon in self._p.monoms())
        b = min(mon[1] for mon in self._p.monoms())
        if a == 0 and b == 0:
            return 0, 0, self
        return a, b, self.exact_div(MPoly(_T**a * _S**b))


def _coerce(value) -> MPoly:
    if isinstance(value, MPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return MPoly.const(value)
    raise TypeError(f"cannot mix MPoly with {type(value).__name__}")


def _pow_table(base: MPoly, n: int) -> list[MPoly]:
    table = [MPoly.one()]
    for _ in range(n):
        table.append(table[-1] * base)
    return table


_ZERO = MPoly(_RING.zero)
_ONE = MPoly(_RING.one)


# ----------------------------------------------------------------------
# kernel operations


def poly_gcd(f: MPoly, g: MPoly) -> MPoly:
    """GCD in Q[t, s, w], primitive with positive leading coefficient.

    gcd(f, 0) is the normal form of f; gcd(0, 0) = 0.
    """
    if f.is_zero and g.is_zero:
        return _ZERO
    if f.is_zero:
        return g.primitive_positive()
    if g.is_zero:
        return f.primitive_positive()
    return MPoly(f._p.gcd(g._p)).primitive_positive()


def content_primitive(f: MPoly, var: str) -> tuple[MPoly, MPoly]:
    """Split f = content * primitive with respect to one variable.

    The content is the scalar-aware gcd of the coefficients of f as a
    polynomial in `var` (so content(2*s*w^2 - 2*t*w, w) = 2).  For f = 0
    both parts are 0 by convention.
    """
    if f.is_zero:
        return _ZERO, _ZERO
    poly_part = _ZERO
    for c in f.coeffs_wrt(var):
        if c.is_zero:
            continue
        poly_part = poly_gcd(poly_part, c)
    content = poly_part.scale(f.rational_content())
    return content, f.exact_div(content)


def squarefree_part(f: MPoly) -> MPoly:
    """Product of the distinct irreducible factors of f, multiplicity one.

    Normalized primitive with positive leading coefficient.
    """
    if f.is_zero:
        raise ZeroPolynomial("square-free part of the zero polynomial")
    if f.is_constant:
        return _ONE
    return MPoly(f._p.sqf_part()).primitive_positive()


def _prem(f, g, gen):
    """Pseudo-remainder lc(g)^(deg f - deg g + 1) * f mod g, wrt one generator."""
    df = f.degree(gen)
    dg = g.degree(gen)
    lg = g.coeff_wrt(gen, dg)
    r = f
    steps = 0
    while r and r.degree(gen) >= dg:
        dr = r.degree(gen)
        lr = r.coeff_wrt(gen, dr)
        r = r * lg - g * lr * gen**(dr - dg)
        steps += 1
    # pad so exactly df - dg + 1 multiplications by lc(g) have been applied
    pad = df - dg + 1 - steps
    if pad > 0:
        r = r * lg**pad
    return r


def prs_resultant(f, g, gen):
    """Subresultant PRS resultant of two raw sparse ring elements wrt one generator.

    Sign convention: equals the Sylvester-matrix determinant with the
    rows of f first.  Works for any sympy sparse polynomial ring.
    """
    ringobj = f.ring
    a = f.degree(gen)
    b = g.degree(gen)
    if a < b:
        res = prs_resultant(g, f, gen)
        return -res if (a * b) % 2 else res
    if b == 0:
        return g**a if a > 0 else ringobj.one
    A, B = f, g
    gcoef = ringobj.one
    h = ringobj.one
    sign = 1
    while True:
        d = a - b
        if a % 2 and b % 2:
            sign = -sign
        R = _prem(A, B, gen)
        if not R:
            return ringobj.zero
        A = B
        a = b
        B = R.quo(gcoef * h**d)
        b = B.degree(gen)
        gcoef = A.coeff_wrt(gen, a)
        if d > 0:
            h = (gcoef**d).quo(h ** (d - 1)) if d > 1 else gcoef
        if b <= 0:
            break
    if not B:
        return ringobj.zero
    # B is the last nonzero element, constant in the eliminated generator
    lB = B.coeff_wrt(gen, 0)
    if a > 1:
        res = (lB**a).quo(h ** (a - 1))
    elif a == 1:
        res = lB
    else:
        res = ringobj.one
    return res if sign > 0 else -res


def resultant_wrt(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Resultant of f and g with respect to one variable.

    Subresultant polynomial-remainder-sequence algorithm.  The sign
    convention agrees with the Sylvester-matrix determinant with the rows
    of f first.  Identically zero iff f and g share a factor of positive
    degree in `var`.
    """
    if f.is_zero or g.is_zero:
        raise ZeroPolynomial("resultant of a zero polynomial")
    gen = _GENS[var]
    if f._p.degree(gen) == 0 and g._p.degree(gen) == 0:
        raise NoEliminationVariable(f"neither operand depends on {var}")
    return MPoly(prs_resultant(f._p, g._p, gen))


def factor_over_q(f: MPoly) -> tuple[Fraction, list[tuple[MPoly, int]]]:
    """Factor into Q-irreducible factors: f = unit * prod fac_i^mult_i.

    Each factor is primitive with positive leading coefficient; the exact
    rational unit absorbs the leftover constant.  Raises on f = 0.

    Large bivariate inputs are factored in whichever main-variable
    orientation presents the simpler leading coefficient; the Hensel
    lifting cost is extremely sensitive to that choice.
    """
    if f.is_zero:
        raise ZeroPolynomial("factorization of the zero polynomial")
    factors = [(fac.primitive_positive(), mult) for fac, mult in _factor_list_oriented(f)]
    # the normalized factors multiply to the primitive positive part of f,
    # so the unit is exactly the signed rational content
    unit = f.rational_content()
    if f.leading_coeff() < 0:
        unit = -unit
    return unit, factors


def _factor_list_oriented(f: MPoly) -> list[tuple[MPoly, int]]:
    p = f._p
    big = len(p) > 400 or f.total_degree() > 60
    if not big or f.degree("w") > 0 or f.degree("t") <= 0 or f.degree("s") <= 0:
        _unit, raw = p.factor_list()
        return [(MPoly(q), m) for q, m in raw]
    # bivariate in (t, s): pick the orientation with the simpler leading coefficient
    terms_ts = {(mon[2], mon[1]): c for mon, c in p.terms()}
    a = _RING_TS.from_dict(terms_ts)
    b = _RING_ST.from_dict({(j, i): c for (i, j), c in terms_ts.items()})
    lc_a = len(a.coeff_wrt(_RING_TS.gens[0], a.degree(_RING_TS.gens[0])))
    lc_b = len(b.coeff_wrt(_RING_ST.gens[0], b.degree(_RING_ST.gens[0])))
    first, second = (a, b) if lc_a <= lc_b else (b, a)
    raw = _factor_with_fallback(first, second)
    out = []
    for q, m in raw:
        if q.ring is _RING_TS:
            data = {(0, mon[1], mon[0]): c for mon, c in q.terms()}
        else:
            data = {(0, mon[0], mon[1]): c for mon, c in q.terms()}
        out.append((MPoly(_RING.from_dict(data)), m))
    return out


def _factor_with_fallback(first, second, soft_limit: int = 150):
    """Factor `first`; if it stalls past the soft limit, try `second` instead."""
    import signal
    import threading

    if threading.current_thread() is not threading.main_thread():
        return first.factor_list()[1]

    class _Stall(Exception):
        pass

    def _handler(signum, frame):
        raise _Stall

    old = signal.signal(signal.SIGALRM, _handler)
    signal.alarm(soft_limit)
    try:
        result = first.factor_list()[1]
        signal.alarm(0)
        return result
    except _Stall:
        return second.factor_list()[1]
    finally:
        signal.alarm(0)
        signal.signal(signal.SIGALRM, old)


_RING_TS = _ring("t,s", QQ, order=grlex)[0]
_RING_ST = _ring("s,t", QQ, order=grlex)[0]


def irreducible_factors(f: MPoly) -> list[MPoly]:
    """Distinct nonconstant irreducible factors of f, canonical form."""
    if f.is_zero or f.is_constant:
        return []
    return [p for p, _ in factor_over_q(f)[1] if not p.is_constant]


def remove_factors(f: MPoly, factors: Iterable[MPoly]) -> MPoly:
    """Divide each listed factor out of f to its full multiplicity."""
    out = f
    for p in factors:
        if p.is_constant or p.is_zero:
            continue
        while True:
            q = out.try_div(p)
            if q is None:
                break
            out = q
    return out


def sylvester_matrix(f: MPoly, g: MPoly, var: str) -> list[list[MPoly]]:
    """Sylvester matrix of f and g wrt var, f-rows first (test oracle support)."""
    m = f.degree(var)
    n = g.degree(var)
    if m < 0 or n < 0:
        raise ZeroPolynomial("Sylvester matrix of a zero polynomial")
    fc = [f.coeff_wrt(var, m - i) for i in range(m + 1)]  # descending
    gc = [g.coeff_wrt(var, n - i) for i in range(n + 1)]
    size = m + n
    rows = []
    for i in range(n):
        row = [_ZERO] * size
        for j, c in enumerate(fc):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [_ZERO] * size
        for j, c in enumerate(gc):
            row[i + j] = c
        rows.append(row)
    return rows
