"""Differential-geometric data of a rational parameterization.

Everything is exact: first fundamental form E, F, G and its determinant,
the starred second-form coefficients e*, f*, g* (second partials dotted
with x_t x x_s), the scaled Christoffel symbols, and ||x_t x x_s||^2.

The scaled Christoffel symbols are the classical ones multiplied by
EG - F^2 and are given by the fixed formulas

    Ghat^1_11 = (G E_t - 2 F F_t + F E_s) / 2
    Ghat^2_11 = (2 E F_t - E E_s - F E_t) / 2
    Ghat^1_12 = (G E_s - F G_t) / 2
    Ghat^2_12 = (E G_t - F E_s) / 2
    Ghat^1_22 = (2 G F_s - G G_t - F G_s) / 2
    Ghat^2_22 = (E G_s - 2 F F_s + F G_t) / 2
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .mpoly import MPoly, irreducible_factors
from .ratfunc import RatFunc

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SurfaceParam:
    """A rational parameterization (x(t,s), y(t,s), z(t,s))."""

    x: RatFunc
    y: RatFunc
    z: RatFunc
    name: str = ""

    def __post_init__(self):
        for comp in (self.x, self.y, self.z):
            if comp.num.depends_on("w") or comp.den.depends_on("w"):
                raise ValueError("surface components must not involve w")
        if all(c.num.is_constant and c.den.is_constant for c in self.components()):
            raise ValueError("parameterization is constant")

    def components(self) -> tuple[RatFunc, RatFunc, RatFunc]:
        return (self.x, self.y, self.z)

    def eval_exact(self, t_val, s_val) -> tuple[Fraction, Fraction, Fraction]:
        vals = {"t": t_val, "s": s_val}
        return tuple(c.eval_all(vals) for c in self.components())


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


@dataclass
class FundamentalData:
    """Cached exact geometric quantities of one parameterization."""

    surface: SurfaceParam
    d_t: tuple[RatFunc, ...]
    d_s: tuple[RatFunc, ...]
    d_tt: tuple[RatFunc, ...]
    d_ts: tuple[RatFunc, ...]
    d_ss: tuple[RatFunc, ...]
    cross: tuple[RatFunc, ...]
    E: RatFunc
    F: RatFunc
    G: RatFunc
    Idet: RatFunc
    crossnormsq: RatFunc
    estar: RatFunc
    fstar: RatFunc
    gstar: RatFunc
    gammahat: dict[str, RatFunc]
    _den_factors: list[MPoly] = field(default_factory=list, repr=False)

    @property
    def is_plane(self) -> bool:
        return self.estar.is_zero and self.fstar.is_zero and self.gstar.is_zero

    def gamma(self, key: str) -> RatFunc:
        """Unscaled Christoffel symbol Ghat / Idet as a reduced rational function."""
        return self.gammahat[key] / self.Idet

    def denominator_factors(self) -> list[MPoly]:
        """Distinct irreducible factors of every denominator in sight.

        Covers the surface components and the rational functions entering
        the asymptotic and geodesic conditions; used to clean the
        eliminant and to pick admissible evaluation points.
        """
        if not self._den_factors:
            dens = {c.den for c in self.surface.components()}
            dens.update(q.den for q in (self.estar, self.fstar, self.gstar, self.Idet))
            dens.update(q.den for q in self.gammahat.values())
            dens.update(q.den for q in self.d_t + self.d_s)
            seen: dict[MPoly, None] = {}
            for den in dens:
                if den.is_constant:
                    continue
                for fac in irreducible_factors(den):
                    seen.setdefault(fac, None)
            self._den_factors = list(seen)
        return self._den_factors


def fundamental_data(surface: SurfaceParam) -> FundamentalData:
    """Compute and cache all fundamental quantities of the surface."""
    comps = surface.components()
    d_t = tuple(c.diff("t") for c in comps)
    d_s = tuple(c.diff("s") for c in comps)
    d_tt = tuple(c.diff("t") for c in d_t)
    d_ts = tuple(c.diff("s") for c in d_t)
    d_ss = tuple(c.diff("s") for c in d_s)
    cross = _cross(d_t, d_s)
    if all(c.is_zero for c in cross):
        raise ValueError(
            "x_t x x_s vanishes identically; the map does not parameterize a surface"
        )
    E = _dot(d_t, d_t)
    F = _dot(d_t, d_s)
    G = _dot(d_s, d_s)
    Idet = E * G - F * F
    crossnormsq = _dot(cross, cross)
    estar = _dot(d_tt, cross)
    fstar = _dot(d_ts, cross)
    gstar = _dot(d_ss, cross)
    Et, Es = E.diff("t"), E.diff("s")
    Ft, Fs = F.diff("t"), F.diff("s")
    Gt, Gs = G.diff("t"), G.diff("s")
    gammahat = {
        "111": (G * Et - 2 * F * Ft + F * Es) * _HALF,
        "211": (2 * E * Ft - E * Es - F * Et) * _HALF,
        "112": (G * Es - F * Gt) * _HALF,
        "212": (E * Gt - F * Es) * _HALF,
        "122": (2 * G * Fs - G * Gt - F * Gs) * _HALF,
        "222": (E * Gs - 2 * F * Fs + F * Gt) * _HALF,
    }
    return FundamentalData(
        surface=surface,
        d_t=d_t,
        d_s=d_s,
        d_tt=d_tt,
        d_ts=d_ts,
        d_ss=d_ss,
        cross=cross,
        E=E,
        F=F,
        G=G,
        Idet=Idet,
        crossnormsq=crossnormsq,
        estar=estar,
        fstar=fstar,
        gstar=gstar,
        gammahat=gammahat,
    )


def first_form(surface: SurfaceParam) -> tuple[RatFunc, RatFunc, RatFunc, RatFunc]:
    """E, F, G and the determinant EG - F^2."""
    fd = fundamental_data(surface)
    return fd.E, fd.F, fd.G, fd.Idet


def star_form(surface: SurfaceParam) -> tuple[RatFunc, RatFunc, RatFunc]:
    """The starred second-form coefficients (e*, f*, g*)."""
    fd = fundamental_data(surface)
    return fd.estar, fd.fstar, fd.gstar


def christoffel_hat(surface: SurfaceParam) -> dict[str, RatFunc]:
    """The six scaled Christoffel symbols, keyed '111', '211', ..., '222'."""
    return fundamental_data(surface).gammahat


def cross_norm_sq(surface: SurfaceParam) -> RatFunc:
    """||x_t x x_s||^2 as an exact rational function."""
    return fundamental_data(surface).crossnormsq
