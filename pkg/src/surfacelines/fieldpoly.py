"""Polynomials in (t, s) with coefficients in a number field K.

Supports the exact component check: divisibility of K[t, s] polynomials
by a rational candidate factor, gcds in K[t, s] with respect to s, and
evaluation at algebraic points.  Division inside K[t] (univariate over a
field) uses plain Euclidean division; the bivariate gcd uses a primitive
pseudo-remainder sequence in s with K[t] contents removed at every step.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .algnum import AlgNum, NumberField, algnum_eval_poly
from .errors import DivisionByZero
from .mpoly import MPoly


class KPoly:
    """Sparse polynomial in (t, s) over a number field."""

    __slots__ = ("field", "terms")

    def __init__(self, field: NumberField, terms: dict | None = None):
        self.field = field
        self.terms = {}
        if terms:
            for key, val in terms.items():
                if not val.is_zero:
                    self.terms[key] = val

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_mpoly(f: MPoly, field: NumberField, root_index: int = 0) -> "KPoly":
        """Embed a rational-coefficient polynomial (t, s only)."""
        terms = {}
        for (et, es, ew), coeff in f.terms():
            if ew:
                raise ValueError("cannot embed a polynomial involving w")
            terms[(et, es)] = field.from_rational(coeff, root_index)
        return KPoly(field, terms)

    @staticmethod
    def subs_t_value(f: MPoly, theta: AlgNum) -> "KPoly":
        """Substitute t = theta (algebraic); result is a polynomial in s over K."""
        return _subs_axis_value(f, theta, axis=0)

    @staticmethod
    def subs_s_value(f: MPoly, theta: AlgNum) -> "KPoly":
        """Substitute s = theta (algebraic); result is a polynomial in t over K."""
        return _subs_axis_value(f, theta, axis=1)

    def scalar(self, value: AlgNum) -> "KPoly":
        if value.is_zero:
            return KPoly(self.field)
        return KPoly(self.field, {k: v * value for k, v in self.terms.items()})

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree_t(self) -> int:
        return max((k[0] for k in self.terms), default=-1)

    def degree_s(self) -> int:
        return max((k[1] for k in self.terms), default=-1)

    def coeff_s(self, power: int) -> "KPoly":
        """Coefficient of s**power as a KPoly in t."""
        return KPoly(
            self.field, {(et, 0): v for (et, es), v in self.terms.items() if es == power}
        )

    def lc_s(self) -> "KPoly":
        return self.coeff_s(self.degree_s())

    def shift_s(self, k: int) -> "KPoly":
        return KPoly(self.field, {(et, es + k): v for (et, es), v in self.terms.items()})

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "KPoly") -> "KPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            cur = out.get(k)
            out[k] = v if cur is None else cur + v
        return KPoly(self.field, out)

    def __sub__(self, other: "KPoly") -> "KPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            cur = out.get(k)
            out[k] = -v if cur is None else cur - v
        return KPoly(self.field, out)

    def __neg__(self) -> "KPoly":
        return KPoly(self.field, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other: "KPoly") -> "KPoly":
        out: dict = {}
        for (a1, b1), v1 in self.terms.items():
            for (a2, b2), v2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                prod = v1 * v2
                cur = out.get(key)
                out[key] = prod if cur is None else cur + prod
        return KPoly(self.field, out)

    def __eq__(self, other):
        return isinstance(other, KPoly) and self.terms == other.terms

    def __repr__(self):
        return f"KPoly({len(self.terms)} terms over deg-{self.field.degree} field)"

    def diff_s(self) -> "KPoly":
        out = {}
        for (et, es), v in self.terms.items():
            if es:
                out[(et, es - 1)] = v * es
        return KPoly(self.field, out)

    # -- evaluation -----------------------------------------------------------

    def eval_t_rational(self, a) -> "KPoly":
        """Substitute a rational value for t; result has t-degree 0."""
        a = Fraction(a)
        out: dict = {}
        for (et, es), v in self.terms.items():
            scaled = v * (a**et) if et else v
            key = (0, es)
            cur = out.get(key)
            out[key] = scaled if cur is None else cur + scaled
        return KPoly(self.field, out)

    def eval_point(self, a, b: AlgNum) -> AlgNum:
        """Evaluate at t = a (rational), s = b (algebraic)."""
        univ = self.eval_t_rational(a)
        d = univ.degree_s()
        coeffs = []
        zero = self.field.zero()
        for i in range(d + 1):
            c = univ.terms.get((0, i))
            coeffs.append(zero if c is None else c)
        return algnum_eval_poly(coeffs, b)


def _subs_axis_value(f: MPoly, theta: AlgNum, axis: int) -> KPoly:
    field = theta.field
    powers = [field.one()]
    deg = max((exps[axis] for exps, _ in f.terms()), default=0)
    for _ in range(deg):
        powers.append(powers[-1] * theta)
    out: dict = {}
    for (et, es, ew), coeff in f.terms():
        if ew:
            raise ValueError("cannot substitute in a polynomial involving w")
        if axis == 0:
            key = (0, es)
            val = powers[et] * coeff
        else:
            key = (et, 0)
            val = powers[es] * coeff
        cur = out.get(key)
        out[key] = val if cur is None else cur + val
    return KPoly(field, out)


# ----------------------------------------------------------------------
# univariate helpers over K (dense coefficient lists in one variable)


def kuni_from_kpoly_t(p: KPoly) -> list[AlgNum]:
    """Dense t-coefficient list of a KPoly with s-degree 0."""
    d = p.degree_t()
    zero = p.field.zero()
    out = [zero] * (d + 1)
    for (et, _es), v in p.terms.items():
        out[et] = v
    return out


def kuni_divmod(a: list[AlgNum], b: list[AlgNum], field: NumberField):
    b = _kuni_trim(list(b))
    if not b:
        raise DivisionByZero("univariate division by zero over K")
    r = _kuni_trim(list(a))
    q: list[AlgNum] = [field.zero()] * max(len(r) - len(b) + 1, 0)
    inv = b[-1].inverse()
    while len(r) >= len(b):
        c = r[-1] * inv
        k = len(r) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            r[k + i] = r[k + i] - c * bi
        _kuni_trim(r)
        if not r:
            break
    return q, r


def kuni_gcd(a: list[AlgNum], b: list[AlgNum], field: NumberField) -> list[AlgNum]:
    """Monic gcd of univariate polynomials over K."""
    r0, r1 = _kuni_trim(list(a)), _kuni_trim(list(b))
    while r1:
        _, r = kuni_divmod(r0, r1, field)
        r0, r1 = r1, r
    if not r0:
        return []
    inv = r0[-1].inverse()
    return [c * inv for c in r0]


def _kuni_trim(c: list[AlgNum]) -> list[AlgNum]:
    while c and c[-1].is_zero:
        c.pop()
    return c


# ----------------------------------------------------------------------
# divisibility and gcd in K[t, s] with respect to s


def kprem_s(f: KPoly, g: KPoly) -> KPoly:
    """Pseudo-remainder of f by g with respect to s."""
    dg = g.degree_s()
    lg = g.lc_s()
    r = f
    while not r.is_zero and r.degree_s() >= dg:
        dr = r.degree_s()
        lr = r.coeff_s(dr)
        r = r * lg - (g.shift_s(dr - dg)) * lr
    return r


def divisible_by_rational_alpha(p: KPoly, alpha: MPoly) -> bool:
    """Exact test: does alpha (rational coefficients, s-degree >= 1) divide p in K[t, s]?

    alpha is primitive with respect to s (it is Q-irreducible), so by
    Gauss's lemma divisibility in K[t, s] is equivalent to a vanishing
    pseudo-remainder with respect to s.
    """
    if p.is_zero:
        return True
    if p.degree_s() < alpha.degree("s"):
        return False
    g = KPoly.from_mpoly(alpha, p.field)
    return kprem_s(p, g).is_zero


def kpoly_content_s(p: KPoly) -> list[AlgNum]:
    """Monic gcd in K[t] of the s-coefficients of p."""
    acc: list[AlgNum] = []
    for power in range(p.degree_s() + 1):
        c = p.coeff_s(power)
        if c.is_zero:
            continue
        acc = kuni_gcd(acc, kuni_from_kpoly_t(c), p.field)
        if len(acc) == 1:
            break
    return acc


def kpoly_divide_content_s(p: KPoly, content: list[AlgNum]) -> KPoly:
    """Divide every s-coefficient of p exactly by a K[t] polynomial."""
    if len(content) == 1:
        inv = content[0].inverse()
        return p.scalar(inv)
    out: dict = {}
    for power in range(p.degree_s() + 1):
        c = p.coeff_s(power)
        if c.is_zero:
            continue
        q, r = kuni_divmod(kuni_from_kpoly_t(c), content, p.field)
        if _kuni_trim(r):
            raise DivisionByZero("content division is not exact")
        for et, v in enumerate(q):
            if not v.is_zero:
                out[(et, power)] = v
    return KPoly(p.field, out)


def kpoly_primitive_s(p: KPoly) -> KPoly:
    if p.is_zero:
        return p
    content = kpoly_content_s(p)
    return kpoly_divide_content_s(p, content)


def kpoly_gcd(f: KPoly, g: KPoly) -> KPoly:
    """GCD of two K[t, s] polynomials (defined up to a K[t]-unit).

    Primitive PRS in s; the t-only content gcd is folded back in so the
    result is a true gcd in K[t, s], normalized primitive in s and with
    monic content handling.
    """
    if f.is_zero:
        return g
    if g.is_zero:
        return f
    if f.degree_s() == 0 or g.degree_s() == 0:
        cf = kpoly_content_s(f)
        cg = kpoly_content_s(g)
        cc = kuni_gcd(cf, cg, f.field)
        return _kpoly_from_kuni_t(cc, f.field)
    cf = kpoly_content_s(f)
    cg = kpoly_content_s(g)
    cc = kuni_gcd(cf, cg, f.field)
    a = kpoly_divide_content_s(f, cf)
    b = kpoly_divide_content_s(g, cg)
    if a.degree_s() < b.degree_s():
        a, b = b, a
    while True:
        r = kprem_s(a, b)
        if r.is_zero:
            break
        if r.degree_s() == 0:
            b = _kpoly_from_kuni_t([f.field.one()], f.field)
            break
        a, b = b, kpoly_primitive_s(r)
    prim = kpoly_primitive_s(b) if not b.is_zero else b
    return prim * _kpoly_from_kuni_t(cc, f.field) if cc else prim


def _kpoly_from_kuni_t(coeffs: Iterable[AlgNum], field: NumberField) -> KPoly:
    return KPoly(field, {(et, 0): v for et, v in enumerate(coeffs)})
