"""Number fields Q[theta]/(m) and exact arithmetic with their elements.

A NumberField stores a Q-irreducible monic-normalized minimal polynomial.
An AlgNum is a vector of rational coordinates in the power basis
1, theta, ..., theta^(d-1) together with the index of one complex root of
the minimal polynomial (its isolating box singles out which conjugate is
meant).  Field arithmetic reduces modulo the minimal polynomial; division
inverts through the extended Euclidean algorithm.  Degree-1 fields are Q
itself and behave transparently.

Root isolation comes from certified complex root isolation of the
minimal polynomial; boxes are exact rational rectangles and can be
refined on demand.  Numeric embeddings at arbitrary precision are
produced by Newton-polishing inside the isolating box.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
from sympy import QQ, Poly, Symbol

from .errors import DivisionByZero, MixedFields, ZeroPolynomial
from .mpoly import MPoly, factor_over_q

_X = Symbol("x")


# ----------------------------------------------------------------------
# dense univariate polynomials over Q (coefficient lists, low degree first)

def _qp_trim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _qp_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _qp_trim(out)


def _qp_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    if not b:
        raise DivisionByZero("univariate division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = Fraction(1) / b[-1]
    while len(r) >= len(b):
        c = r[-1] * inv
        k = len(r) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            r[k + i] -= c * bi
        _qp_trim(r)
        if not r:
            break
    return q, r


def _qp_ext_gcd(a: Sequence[Fraction], b: Sequence[Fraction]):
    """Extended gcd: returns (g, u, v) with u*a + v*b = g."""
    r0, r1 = list(a), list(b)
    u0, u1 = [Fraction(1)], []
    v0, v1 = [], [Fraction(1)]
    while r1:
        q, r = _qp_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, _qp_trim([x - y for x, y in _zip_pad(u0, _qp_mul(q, u1))])
        v0, v1 = v1, _qp_trim([x - y for x, y in _zip_pad(v0, _qp_mul(q, v1))])
    return r0, u0, v0


def _zip_pad(a: Sequence[Fraction], b: Sequence[Fraction]):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else Fraction(0), b[i] if i < len(b) else Fraction(0))


# ----------------------------------------------------------------------


class RootBox:
    """Exact rational rectangle isolating one complex root."""

    __slots__ = ("re_lo", "re_hi", "im_lo", "im_hi")

    def __init__(self, re_lo, re_hi, im_lo, im_hi):
        self.re_lo = Fraction(re_lo)
        self.re_hi = Fraction(re_hi)
        self.im_lo = Fraction(im_lo)
        self.im_hi = Fraction(im_hi)

    @property
    def is_real(self) -> bool:
        return self.im_lo == 0 and self.im_hi == 0

    def midpoint(self) -> tuple[Fraction, Fraction]:
        return (self.re_lo + self.re_hi) / 2, (self.im_lo + self.im_hi) / 2

    def width(self) -> Fraction:
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def contains(self, re: Fraction, im: Fraction, slack: Fraction = Fraction(0)) -> bool:
        return (
            self.re_lo - slack <= re <= self.re_hi + slack
            and self.im_lo - slack <= im <= self.im_hi + slack
        )

    def __repr__(self):
        return f"RootBox([{self.re_lo}, {self.re_hi}] x [{self.im_lo}, {self.im_hi}])"


def _isolate_roots(coeffs: Sequence[Fraction], eps: Fraction | None = None) -> list[RootBox]:
    """Certified isolating boxes for all complex roots of a squarefree poly."""
    p = Poly([QQ(c.numerator, c.denominator) for c in reversed(coeffs)], _X, domain=QQ)
    kwargs = {}
    if eps is not None:
        kwargs["eps"] = QQ(eps.numerator, eps.denominator)
    real_iv, complex_iv = p.intervals(all=True, **kwargs)
    boxes = []
    for (lo, hi), _mult in real_iv:
        boxes.append(RootBox(_sy_fraction(lo), _sy_fraction(hi), 0, 0))
    for (corner_lo, corner_hi), _mult in complex_iv:
        re1, im1 = corner_lo.as_real_imag()
        re2, im2 = corner_hi.as_real_imag()
        boxes.append(
            RootBox(_sy_fraction(re1), _sy_fraction(re2), _sy_fraction(im1), _sy_fraction(im2))
        )
    return boxes


def _sy_fraction(value) -> Fraction:
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return Fraction(int(value.p), int(value.q))


def _mp_fraction(value: Fraction, dps: int = 40) -> mpmath.mpf:
    with mpmath.workdps(dps):
        return mpmath.mpf(value.numerator) / mpmath.mpf(value.denominator)


def _value_in_box(value: mpmath.mpc, box: RootBox, slack: Fraction = Fraction(0)) -> bool:
    with mpmath.workdps(40):
        re = mpmath.mpf(value.real)
        im = mpmath.mpf(value.imag)
        pad = _mp_fraction(slack) if slack else mpmath.mpf(0)
        return bool(
            _mp_fraction(box.re_lo) - pad <= re <= _mp_fraction(box.re_hi) + pad
            and _mp_fraction(box.im_lo) - pad <= im <= _mp_fraction(box.im_hi) + pad
        )


def _polish_roots(coeffs: Sequence[Fraction], dps: int) -> list[mpmath.mpc]:
    """All roots of a squarefree rational polynomial at dps digits."""
    with mpmath.workdps(dps + 15):
        cs = [mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator) for c in reversed(coeffs)]
        roots = mpmath.polyroots(cs, maxsteps=200, extraprec=80)
        return [mpmath.mpc(r) for r in roots]


class NumberField:
    """Q[theta]/(minpoly) with minpoly Q-irreducible."""

    __slots__ = ("coeffs", "degree", "_boxes", "_redux", "_root_values", "_root_dps")

    def __init__(self, coeffs: Sequence[Fraction]):
        cs = [Fraction(c) for c in coeffs]
        _qp_trim(cs)
        if len(cs) < 2:
            raise ZeroPolynomial("minimal polynomial must have positive degree")
        self.coeffs = tuple(cs)
        self.degree = len(cs) - 1
        self._boxes = None
        self._redux = None
        self._root_values = None
        self._root_dps = 0

    @staticmethod
    def of(minpoly: MPoly) -> "NumberField":
        """Build from a Q-irreducible univariate MPoly (any single variable)."""
        vars_ = minpoly.variables()
        if len(vars_) != 1:
            raise ValueError("minimal polynomial must be univariate")
        v = vars_[0]
        coeffs = [c.constant_value() for c in minpoly.coeffs_wrt(v)]
        return NumberField(coeffs)

    @staticmethod
    def rationals() -> "NumberField":
        # theta - 0: the field Q, kept so degree-1 code paths stay uniform
        return NumberField([Fraction(0), Fraction(1)])

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"NumberField(degree={self.degree}, minpoly={list(self.coeffs)})"

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    # -- roots ---------------------------------------------------------

    def boxes(self) -> list[RootBox]:
        """Isolating boxes, one per root, in canonical order (by numeric (re, im))."""
        if self._boxes is None:
            if self.degree == 1:
                val = -self.coeffs[0] / self.coeffs[1]
                self._boxes = [RootBox(val, val, 0, 0)]
            else:
                raw = _isolate_roots(list(self.coeffs))
                vals = _polish_roots(list(self.coeffs), 30)
                paired = []
                for box in raw:
                    inside = [v for v in vals if _value_in_box(v, box)]
                    if len(inside) != 1:
                        # fall back to nearest-midpoint matching
                        mid_re, mid_im = box.midpoint()
                        mid = mpmath.mpc(_mp_fraction(mid_re), _mp_fraction(mid_im))
                        inside = [min(vals, key=lambda r: abs(r - mid))]
                    paired.append((inside[0], box))
                paired.sort(key=lambda item: (mpmath.mpf(item[0].real), mpmath.mpf(item[0].imag)))
                self._boxes = [box for _, box in paired]
                self._root_values = [val for val, _ in paired]
                self._root_dps = 30
        return self._boxes

    def root_value(self, index: int, dps: int) -> mpmath.mpc:
        """Numeric value of root `index` to dps digits."""
        self.boxes()
        if self.degree == 1:
            val = -self.coeffs[0] / self.coeffs[1]
            with mpmath.workdps(dps):
                return mpmath.mpc(mpmath.mpf(val.numerator) / mpmath.mpf(val.denominator))
        if self._root_dps < dps:
            vals = _polish_roots(list(self.coeffs), dps)
            matched = []
            for old in self._root_values:
                best = min(vals, key=lambda r: abs(r - old))
                matched.append(best)
            self._root_values = matched
            self._root_dps = dps
        return self._root_values[index]

    def refine_box(self, index: int, eps: Fraction) -> RootBox:
        """A smaller certified isolating box for root `index`."""
        if self.degree == 1:
            return self.boxes()[0]
        fine = _isolate_roots(list(self.coeffs), eps=eps)
        val = self.root_value(index, max(30, 10 + len(str(eps.denominator))))
        for box in fine:
            if _value_in_box(val, box, slack=eps):
                return box
        raise RuntimeError("refined box matching failed")

    # -- elements ------------------------------------------------------

    def zero(self) -> "AlgNum":
        return AlgNum(self, (Fraction(0),) * self.degree, 0)

    def one(self) -> "AlgNum":
        return self.from_rational(Fraction(1))

    def from_rational(self, value, root_index: int = 0) -> "AlgNum":
        coords = [Fraction(0)] * self.degree
        coords[0] = Fraction(value)
        return AlgNum(self, tuple(coords), root_index)

    def generator(self, root_index: int = 0) -> "AlgNum":
        if self.degree == 1:
            return self.from_rational(-self.coeffs[0] / self.coeffs[1])
        coords = [Fraction(0)] * self.degree
        coords[1] = Fraction(1)
        return AlgNum(self, tuple(coords), root_index)

    def _reduction_rows(self):
        """theta^k in the power basis for k = d .. 2d-2."""
        if self._redux is None:
            d = self.degree
            lc = self.coeffs[d]
            # theta^d = -(c_0 + ... + c_{d-1} theta^{d-1}) / c_d
            base = [-c / lc for c in self.coeffs[:d]]
            rows = [base]
            for _ in range(d - 2):
                prev = rows[-1]
                shifted = [Fraction(0)] + list(prev[: d - 1])
                top = prev[d - 1]
                rows.append([x + top * y for x, y in zip(shifted, base)])
            self._redux = rows
        return self._redux

    def reduce(self, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Reduce a coefficient list (any length) modulo the minimal polynomial."""
        d = self.degree
        out = [Fraction(0)] * d
        rows = self._reduction_rows() if len(coeffs) > d else None
        for k, c in enumerate(coeffs):
            if not c:
                continue
            if k < d:
                out[k] += c
            else:
                row = rows[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return tuple(out)


class AlgNum:
    """Element of a NumberField in the power basis, tagged with a root choice."""

    __slots__ = ("field", "coords", "root_index")

    def __init__(self, field: NumberField, coords: Sequence[Fraction], root_index: int = 0):
        self.field = field
        self.coords = tuple(Fraction(c) for c in coords)
        self.root_index = root_index

    # -- helpers -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    @property
    def is_rational_value(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational_value:
            raise ValueError("algebraic number is not rational")
        return self.coords[0]

    def _coerce(self, other) -> "AlgNum":
        if isinstance(other, AlgNum):
            if other.field != self.field:
                if other.field.degree == 1 and other.is_rational_value:
                    return self.field.from_rational(other.coords[0], self.root_index)
                raise MixedFields("operands live in different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other, self.root_index)
        raise TypeError(f"cannot mix AlgNum with {type(other).__name__}")

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, MixedFields):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash((self.field, self.coords))

    def __repr__(self):
        return f"AlgNum({list(self.coords)} in deg-{self.field.degree} field)"

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        return AlgNum(self.field, [a + b for a, b in zip(self.coords, other.coords)], self.root_index)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return AlgNum(self.field, [a - b for a, b in zip(self.coords, other.coords)], self.root_index)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):  # scalar fast path
            return AlgNum(self.field, [c * other for c in self.coords], self.root_index)
        other = self._coerce(other)
        prod = _qp_mul(list(self.coords), list(other.coords))
        return AlgNum(self.field, self.field.reduce(prod), self.root_index)

    __rmul__ = __mul__

    def __neg__(self):
        return AlgNum(self.field, [-c for c in self.coords], self.root_index)

    def inverse(self) -> "AlgNum":
        if self.is_zero:
            raise DivisionByZero("inverse of zero in a number field")
        if self.field.degree == 1:
            return AlgNum(self.field, (Fraction(1) / self.coords[0],), self.root_index)
        g, _, v = _qp_ext_gcd(list(self.field.coeffs), _qp_trim(list(self.coords)))
        if len(g) != 1:
            raise ZeroPolynomial("minimal polynomial is not irreducible")
        inv = [c / g[0] for c in v]
        return AlgNum(self.field, self.field.reduce(inv), self.root_index)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        out = self.field.one()
        base = self
        if n < 0:
            base = self.inverse()
            n = -n
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return AlgNum(self.field, out.coords, self.root_index)

    # -- embeddings ------------------------------------------------------

    @property
    def is_real_embedding(self) -> bool:
        return self.field.boxes()[self.root_index].is_real

    def with_root(self, root_index: int) -> "AlgNum":
        return AlgNum(self.field, self.coords, root_index)

    def embed(self, dps: int = 30) -> mpmath.mpc:
        """Numeric value under the chosen root embedding."""
        theta = self.field.root_value(self.root_index, dps)
        with mpmath.workdps(dps):
            acc = mpmath.mpc(0)
            for c in reversed(self.coords):
                acc = acc * theta + mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
            return acc


def algnum_eval_poly(coeffs: Iterable[AlgNum | Fraction], value: AlgNum) -> AlgNum:
    """Evaluate sum coeffs[i] * value^i (Horner), coefficients low degree first."""
    field = value.field
    acc = field.zero()
    items = list(coeffs)
    for c in reversed(items):
        if isinstance(c, AlgNum):
            acc = acc * value + c
        else:
            acc = acc * value + field.from_rational(c, value.root_index)
    return AlgNum(field, acc.coords, value.root_index)


def complex_roots(m: MPoly) -> list[AlgNum]:
    """All distinct complex roots of a univariate polynomial as AlgNum values.

    Each root carries the Q-irreducible minimal-polynomial factor it
    satisfies plus an isolating box; roots counted with the multiplicity
    of their factor in m add up to deg(m).
    """
    if m.is_zero:
        raise ZeroPolynomial("root isolation of the zero polynomial")
    vars_ = m.variables()
    if len(vars_) > 1:
        raise ValueError("root isolation requires a univariate polynomial")
    roots: list[AlgNum] = []
    if not vars_:
        return roots
    _, factors = factor_over_q(m)
    for fac, _mult in factors:
        field = NumberField.of(fac)
        boxes = field.boxes()
        for idx in range(len(boxes)):
            roots.append(field.generator(idx))
    return roots
