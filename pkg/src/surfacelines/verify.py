"""Independent verification of reported lines.

Two oracles, deliberately disjoint from the exact detection pipeline:

* numeric: sample the candidate component at high precision, fit a line
  through the two most separated points, and measure the worst relative
  deviation.  True lines sit at the root-solving floor (~10^-precision);
  rejected curves in this problem class stay above 1e-3.
* algebraic: a real line not parallel to the yz-plane can be written
  y = a x + b, z = c x + d.  Eliminating s from the two numerator
  equations produces a polynomial P(t) whose coefficients must all
  vanish; substituting the exact witness (a, b, c, d) and testing that
  vanishing is an exact certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .algnum import AlgNum, NumberField
from .errors import DegenerateSample, InsufficientSamples
from .fieldpoly import KPoly, kpoly_gcd
from .geometry import SurfaceParam
from .mpoly import MPoly
from .ratfunc import RatFunc

_DEN_GUARD = mpmath.mpf("1e-8")


# ----------------------------------------------------------------------
# numeric evaluation helpers


def _mpq(x: Fraction) -> mpmath.mpf:
    return mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator)


def eval_poly_numeric(f: MPoly, tv, sv) -> mpmath.mpc:
    acc = mpmath.mpc(0)
    for (et, es, ew), coeff in f.terms():
        if ew:
            raise ValueError("numeric surface evaluation does not involve w")
        acc += _mpq(coeff) * tv**et * sv**es
    return acc


def eval_ratfunc_numeric(rf: RatFunc, tv, sv) -> mpmath.mpc:
    den = eval_poly_numeric(rf.den, tv, sv)
    return eval_poly_numeric(rf.num, tv, sv) / den


def poly_roots_numeric(coeffs: list[Fraction | complex], dps: int) -> list[mpmath.mpc]:
    """All complex roots of a univariate polynomial, low-degree-first coefficients.

    Companion-matrix eigenvalues (numpy) seed a Newton refinement against
    the exact coefficients at working precision; falls back to mpmath's
    simultaneous iteration when the seeds are unusable.
    """
    cs = list(coeffs)
    while cs and (cs[-1] == 0):
        cs.pop()
    if len(cs) <= 1:
        return []
    with mpmath.workdps(dps + 15):
        exact = [
            mpmath.mpc(_mpq(c)) if isinstance(c, Fraction) else mpmath.mpc(c) for c in cs
        ]
        deg = len(exact) - 1
        try:
            seeds = np.roots([complex(c) for c in reversed(exact)])
            ok = np.all(np.isfinite(seeds))
        except Exception:
            ok = False
        roots: list[mpmath.mpc] = []
        if ok and len(seeds) == deg:
            dpoly = [exact[i] * i for i in range(1, len(exact))]
            for seed in seeds:
                r = mpmath.mpc(complex(seed))
                converged = False
                for _ in range(120):
                    pv = _horner(exact, r)
                    dv = _horner(dpoly, r)
                    if dv == 0:
                        break
                    step = pv / dv
                    r -= step
                    if abs(step) < mpmath.mpf(10) ** (-(dps + 5)) * max(1, abs(r)):
                        converged = True
                        break
                if not converged:
                    roots = []
                    break
                roots.append(r)
        if not roots:
            roots = [mpmath.mpc(r) for r in mpmath.polyroots(
                list(reversed(exact)), maxsteps=300, extraprec=120)]
        return roots


def _horner(coeffs, x):
    acc = mpmath.mpc(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# ----------------------------------------------------------------------
# component sampling


@dataclass
class NumericSample:
    """Parameter values on a candidate component and their surface images."""

    params: list[tuple[mpmath.mpc, mpmath.mpc]]
    points: list[tuple[mpmath.mpc, mpmath.mpc, mpmath.mpc]]
    precision_digits: int


def _denominators_ok(surface: SurfaceParam, tv, sv) -> bool:
    for comp in surface.components():
        if abs(eval_poly_numeric(comp.den, tv, sv)) < _DEN_GUARD:
            return False
    return True


def _alpha_s_coeffs(alpha: MPoly, a: Fraction) -> list[Fraction]:
    univ = alpha.eval_var("t", a)
    deg = univ.degree("s")
    return [univ.coeff_wrt("s", i).constant_value() for i in range(deg + 1)]


def sample_component(
    alpha: MPoly,
    surface: SurfaceParam,
    count: int = 20,
    precision: int = 40,
    start: tuple | None = None,
) -> NumericSample:
    """Sample points of the component alpha(t, s) = 0 mapped through the surface.

    Without `start`, takes `count` admissible integer values a_k and all
    complex roots of alpha(a_k, s); with `start` = (t0, s0) it follows the
    single branch through that point by nearest-root continuation.
    Parameter values where a surface denominator nearly vanishes are
    skipped and replaced.
    """
    with mpmath.workdps(precision + 10):
        if alpha.degree("s") <= 0:
            return _sample_coordinate(alpha, surface, count, precision, axis="t")
        if alpha.degree("t") <= 0:
            return _sample_coordinate(alpha, surface, count, precision, axis="s")
        if start is None:
            return _sample_all_branches(alpha, surface, count, precision)
        return _sample_one_branch(alpha, surface, count, precision, start)


def _sample_all_branches(alpha, surface, count, precision) -> NumericSample:
    params = []
    points = []
    used = 0
    attempts = 0
    lead = alpha.coeff_wrt("s", alpha.degree("s"))
    for k in itertools.count():
        if used >= count:
            break
        attempts += 1
        if attempts > 10 * count:
            raise InsufficientSamples(
                f"only {used} of {count} admissible parameters found"
            )
        a = Fraction((-1) ** k * ((k + 1) // 2))  # 0, -1, 1, -2, 2, ...
        if lead.eval_all({"t": a, "s": 0}) == 0:
            continue
        roots = poly_roots_numeric(_alpha_s_coeffs(alpha, a), precision)
        ta = mpmath.mpc(_mpq(a))
        good = [(ta, r) for r in roots if _denominators_ok(surface, ta, r)]
        if not good:
            continue
        used += 1
        for tv, sv in good:
            params.append((tv, sv))
            points.append(tuple(eval_ratfunc_numeric(c, tv, sv) for c in surface.components()))
    return NumericSample(params, points, precision)


def _sample_one_branch(alpha, surface, count, precision, start) -> NumericSample:
    t0, s0 = mpmath.mpc(start[0]), mpmath.mpc(start[1])
    params = [(t0, s0)]
    lead = alpha.coeff_wrt("s", alpha.degree("s"))
    attempts = 0
    k = 0
    prev_t, prev_s = t0, s0
    slope = None
    while len(params) < count:
        attempts += 1
        if attempts > 10 * count + 20:
            raise InsufficientSamples("branch continuation ran out of admissible steps")
        k += 1
        a = t0 + k
        a_frac = None
        try:
            a_frac = Fraction(int(mpmath.nint(a.real)), 1) if abs(a.imag) < 1e-30 else None
        except Exception:
            a_frac = None
        if a_frac is not None and lead.eval_all({"t": a_frac, "s": 0}) == 0:
            continue
        coeffs = _alpha_coeffs_at_complex(alpha, a)
        roots = poly_roots_numeric(coeffs, precision)
        if not roots:
            continue
        guess = prev_s if slope is None else prev_s + slope * (a - prev_t)
        best = min(roots, key=lambda r: abs(r - guess))
        if not _denominators_ok(surface, a, best):
            continue
        slope = (best - prev_s) / (a - prev_t)
        prev_t, prev_s = a, best
        params.append((a, best))
    points = [
        tuple(eval_ratfunc_numeric(c, tv, sv) for c in surface.components())
        for tv, sv in params
        if _denominators_ok(surface, tv, sv)
    ]
    params = [p for p in params if _denominators_ok(surface, p[0], p[1])]
    return NumericSample(params, points, precision)


def _alpha_coeffs_at_complex(alpha: MPoly, tv) -> list:
    deg = alpha.degree("s")
    out = []
    for i in range(deg + 1):
        c = alpha.coeff_wrt("s", i)
        out.append(eval_poly_numeric(c, tv, mpmath.mpc(0)))
    return out


def _sample_coordinate(factor, surface, count, precision, axis) -> NumericSample:
    """Sample x(c, s) (axis='t') or x(t, c) (axis='s') for each root c of the factor."""
    var = axis
    other = "s" if axis == "t" else "t"
    deg = factor.degree(var)
    coeffs = [factor.coeff_wrt(var, i).constant_value() for i in range(deg + 1)]
    croots = poly_roots_numeric(coeffs, precision)
    params = []
    points = []
    for c in croots:
        produced = 0
        for k in itertools.count(1):
            if produced >= count:
                break
            if k > 10 * count:
                raise InsufficientSamples("coordinate-line sampling exhausted candidates")
            val = mpmath.mpc(k)
            tv, sv = (c, val) if axis == "t" else (val, c)
            if not _denominators_ok(surface, tv, sv):
                continue
            produced += 1
            params.append((tv, sv))
            points.append(tuple(eval_ratfunc_numeric(q, tv, sv) for q in surface.components()))
    return NumericSample(params, points, precision)


# ----------------------------------------------------------------------
# collinearity


def _dist(p, q) -> mpmath.mpf:
    return mpmath.sqrt(sum(abs(a - b) ** 2 for a, b in zip(p, q)))


def collinearity_residual(sample: NumericSample) -> mpmath.mpf:
    """Largest distance to the anchor line over the sample diameter.

    The line anchors are the two sample points of maximal mutual
    distance.  Raises DegenerateSample when every point coincides.
    """
    pts = sample.points
    if len(pts) < 3:
        raise DegenerateSample("need at least 3 points")
    with mpmath.workdps(sample.precision_digits + 10):
        best = (mpmath.mpf(0), 0, 1)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                d = _dist(pts[i], pts[j])
                if d > best[0]:
                    best = (d, i, j)
        diameter, i0, j0 = best
        scale = max(mpmath.mpf(1), max(max(abs(c) for c in p) for p in pts))
        if diameter < mpmath.mpf(10) ** (-(sample.precision_digits - 5)) * scale:
            raise DegenerateSample("all sampled points coincide")
        p0 = pts[i0]
        d = [a - b for a, b in zip(pts[j0], p0)]
        dd = sum(abs(c) ** 2 for c in d)
        worst = mpmath.mpf(0)
        for p in pts:
            v = [a - b for a, b in zip(p, p0)]
            lam = sum(vc * mpmath.conj(dc) for vc, dc in zip(v, d)) / dd
            dev = mpmath.sqrt(sum(abs(vc - lam * dc) ** 2 for vc, dc in zip(v, d)))
            worst = max(worst, dev)
        return worst / diameter


# ----------------------------------------------------------------------
# two-planes certificate


@dataclass
class CoeffPoly:
    """Polynomial in the unknowns (a, b, c, d) with exact rational coefficients."""

    terms: dict  # (ea, eb, ec, ed) -> Fraction

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, values: tuple):
        """Evaluate at four values supporting + and * (Fraction or AlgNum)."""
        acc = None
        for (ea, eb, ec, ed), coeff in self.terms.items():
            term = values[0] ** ea * values[1] ** eb * values[2] ** ec * values[3] ** ed
            term = term * coeff
            acc = term if acc is None else acc + term
        return acc if acc is not None else Fraction(0)


@dataclass
class TwoPlanesSystem:
    """Coefficient system of P(t) = Res_s(num(y - a x - b), num(z - c x - d))."""

    unknowns: tuple = ("a", "b", "c", "d")
    equations: list = field(default_factory=list)
    P_degree: int = -1
    q1_s_degree: int = 0
    q2_s_degree: int = 0


def two_planes_system(surface: SurfaceParam) -> TwoPlanesSystem:
    """Build the full symbolic system (small/medium surfaces)."""
    from sympy import QQ, grlex
    from sympy.polys.rings import ring as _ring6

    R6, av, bv, cv, dv, tv, sv = _ring6("a,b,c,d,t,s", QQ, order=grlex)

    def embed(p: MPoly):
        return R6.from_dict(
            {(0, 0, 0, 0, et, es): QQ(co.numerator, co.denominator) for (et, es, _e), co in p.terms()}
        )

    x, y, z = surface.components()
    q1 = embed(y.num) * embed(x.den) - av * embed(x.num) * embed(y.den) - bv * embed(x.den) * embed(y.den)
    q2 = embed(z.num) * embed(x.den) - cv * embed(x.num) * embed(z.den) - dv * embed(x.den) * embed(z.den)
    P = _generic_resultant(q1, q2, sv)
    sysm = TwoPlanesSystem()
    sysm.q1_s_degree = q1.degree(sv)
    sysm.q2_s_degree = q2.degree(sv)
    if not P:
        sysm.P_degree = -1
        return sysm
    sysm.P_degree = P.degree(tv)
    for dt in range(sysm.P_degree + 1):
        coeff = P.coeff_wrt(tv, dt)
        terms = {}
        for mon, co in coeff.terms():
            terms[(mon[0], mon[1], mon[2], mon[3])] = Fraction(
                int(co.numerator), int(co.denominator)
            )
        if terms:
            sysm.equations.append(CoeffPoly(terms))
    return sysm


def _generic_resultant(f, g, gen):
    from .mpoly import prs_resultant

    if not f or not g:
        return f.ring.zero
    return prs_resultant(f, g, gen)


def two_planes_check_exact(
    surface: SurfaceParam,
    a0: AlgNum,
    b0: AlgNum,
    c0: AlgNum,
    d0: AlgNum,
) -> bool:
    """Exact test that the line y = a0 x + b0, z = c0 x + d0 lies on the surface.

    Substitutes the coefficients first and tests that the specialized
    eliminant P(t) is identically zero, which (with preserved s-degrees)
    is equivalent to the symbolic coefficient system vanishing.  The
    s-degree preservation is verified; on degree drop the symbolic
    system is evaluated directly.
    """
    K = a0.field
    x, y, z = surface.components()

    def kp(p: MPoly) -> KPoly:
        return KPoly.from_mpoly(p, K)

    q1 = kp(y.num * x.den) - kp(x.num * y.den).scalar(a0) - kp(x.den * y.den).scalar(b0)
    q2 = kp(z.num * x.den) - kp(x.num * z.den).scalar(c0) - kp(x.den * z.den).scalar(d0)
    sym_d1 = max(
        (y.num * x.den).degree("s"),
        (x.num * y.den).degree("s"),
        (x.den * y.den).degree("s"),
    )
    sym_d2 = max(
        (z.num * x.den).degree("s"),
        (x.num * z.den).degree("s"),
        (x.den * z.den).degree("s"),
    )
    if q1.is_zero or q2.is_zero:
        return True
    if q1.degree_s() == sym_d1 and q2.degree_s() == sym_d2:
        g = kpoly_gcd(q1, q2)
        return g.degree_s() >= 1
    system = two_planes_system(surface)
    vals = (a0, b0, c0, d0)
    for eq in system.equations:
        out = eq.evaluate(vals)
        if isinstance(out, AlgNum):
            if not out.is_zero:
                return False
        elif out != 0:
            return False
    return True


# ----------------------------------------------------------------------
# witness verification


@dataclass
class VerificationResult:
    numeric_checked: bool = False
    numeric_pass: bool | None = None
    numeric_residuals: list = field(default_factory=list)
    algebraic_checked: bool = False
    algebraic_pass: bool | None = None
    algebraic_skipped: str = ""

    @property
    def ok(self) -> bool:
        checks = []
        if self.numeric_checked:
            checks.append(bool(self.numeric_pass))
        if self.algebraic_checked:
            checks.append(bool(self.algebraic_pass))
        return all(checks) if checks else True


def verify_line(
    witness,
    surface: SurfaceParam,
    mode: str = "numeric",
    precision: int = 40,
    samples: int = 20,
    threshold: Fraction = Fraction(1, 10**25),
) -> VerificationResult:
    """Run the configured oracles against one line witness.

    mode: 'none', 'numeric', 'exact', or 'both'.  The numeric check runs
    per distinct embedded line; the exact two-planes certificate runs for
    real lines whose direction has a nonzero x-component.
    """
    result = VerificationResult()
    if mode == "none":
        return result
    if mode in ("numeric", "both"):
        result.numeric_checked = True
        result.numeric_pass = True
        for record in witness.lines:
            residual = _numeric_check_record(witness, record, surface, precision, samples)
            result.numeric_residuals.append(residual)
            if not (residual < _mpq(Fraction(threshold))):
                result.numeric_pass = False
    if mode in ("exact", "both"):
        _exact_check(witness, surface, result)
    return result


def _numeric_check_record(witness, record, surface, precision, samples) -> mpmath.mpf:
    with mpmath.workdps(precision + 10):
        if witness.source == "component":
            t0 = mpmath.mpc(_mpq(witness.anchor_t))
            s0 = witness.field.root_value(record.root_index, precision + 10)
            sample = sample_component(
                witness.factor, surface, count=samples, precision=precision, start=(t0, s0)
            )
        else:
            sample = _sample_coordinate_embedding(witness, record, surface, samples, precision)
        return collinearity_residual(sample)


def _sample_coordinate_embedding(witness, record, surface, count, precision) -> NumericSample:
    c = witness.field.root_value(record.root_index, precision + 10)
    axis = "t" if witness.source == "coordinate-t" else "s"
    params = []
    points = []
    produced = 0
    for k in itertools.count(1):
        if produced >= count:
            break
        if k > 10 * count:
            raise InsufficientSamples("coordinate-line sampling exhausted candidates")
        val = mpmath.mpc(k)
        tv, sv = (c, val) if axis == "t" else (val, c)
        if not _denominators_ok(surface, tv, sv):
            continue
        produced += 1
        params.append((tv, sv))
        points.append(tuple(eval_ratfunc_numeric(q, tv, sv) for q in surface.components()))
    return NumericSample(params, points, precision)


def _exact_check(witness, surface, result: VerificationResult):
    if not witness.is_real:
        result.algebraic_skipped = "NonReal"
        return
    dx, dy, dz = witness.direction
    if dx.is_zero:
        result.algebraic_skipped = "NotCertifiable"  # parallel to the yz-plane
        return
    px, py, pz = witness.point
    a0 = dy / dx
    c0 = dz / dx
    b0 = py - a0 * px
    d0 = pz - c0 * px
    result.algebraic_checked = True
    result.algebraic_pass = two_planes_check_exact(surface, a0, b0, c0, d0)
