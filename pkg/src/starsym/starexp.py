"""Star-exponentials exp(t hbar^{-1} P) for order-0 symbols, three ways.

* series:    sum_k t^k hbar^{-k} P^{star k} / k!
* ode:       E_0 = 1, (d + 1) E_{d+1} = hbar^{-1} P star E_d
* resolvent: Laplace image of 1/(s - P) = sum_k P^{star k} s^{-k-1}

plus the closed forms for the oscillator P = theta x u and its
path-integral companion exp(e^{theta t} x u / hbar).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import OrderError
from .laplace import (PrecisionWindow, TWSymbol, agree, degree_part, from_degree_parts, laplace,
                      res_t, t_derivative, tw_star, iota_t)
from .poly import XUPoly
from .scalar import ParamScalar
from .swsymbol import resolvent
from .wsymbol import WSymbol, w_pow_star, w_star

ROUTES = ("series", "ode", "resolvent")


def _require_order_zero(P: WSymbol):
    if P.m > 0:
        raise OrderError(
            f"star-exponential needs a symbol of order <= 0 (a section of W(0)); got order {P.m}")


def starexp_series(P: WSymbol, D: int) -> TWSymbol:
    _require_order_zero(P)
    parts = [w_pow_star(P, k).hbar_shift(k).scale(Fraction(1, factorial(k)))
             for k in range(D + 1)]
    return from_degree_parts(parts, 0)


def starexp_ode(P: WSymbol, D: int) -> TWSymbol:
    """Integrate d/dt E = hbar^{-1} P star E with E(0) = 1, one t-degree at a time."""
    _require_order_zero(P)
    generator = P.hbar_shift(1)
    parts = [WSymbol.one(P.n)]
    for d in range(D):
        parts.append(w_star(generator, parts[-1]).scale(Fraction(1, d + 1)))
    return from_degree_parts(parts, 0)


def starexp_via_resolvent(P: WSymbol, D: int) -> TWSymbol:
    _require_order_zero(P)
    return laplace(resolvent(P, D), D, order=0)


@dataclass
class ExpRoutes:
    series: TWSymbol | None = None
    ode: TWSymbol | None = None
    via_resolvent: TWSymbol | None = None
    agree_window: PrecisionWindow | None = None
    agreement: bool = True

    def computed(self) -> dict:
        return {name: sym for name, sym in
                (("series", self.series), ("ode", self.ode), ("resolvent", self.via_resolvent))
                if sym is not None}


def starexp_routes(P: WSymbol, D: int, routes=ROUTES) -> ExpRoutes:
    """Run the requested routes and compare them on their shared window."""
    out = ExpRoutes()
    if "series" in routes:
        out.series = starexp_series(P, D)
    if "ode" in routes:
        out.ode = starexp_ode(P, D)
    if "resolvent" in routes:
        out.via_resolvent = starexp_via_resolvent(P, D)
    syms = list(out.computed().values())
    window = syms[0].window
    for s in syms[1:]:
        window = window.intersect(s.window)
    out.agree_window = window
    out.agreement = all(agree(syms[0], s) for s in syms[1:])
    return out


def evolution_residual(E: TWSymbol, P: WSymbol) -> TWSymbol:
    """d/dt E - hbar^{-1} P star E, computed with the TW product; zero through degree D - 1."""
    generator = iota_t(P.hbar_shift(1), E.D)
    return t_derivative(E) - tw_star(generator, E).restrict(PrecisionWindow.exact(E.D - 1))


def satisfies_evolution(E: TWSymbol, P: WSymbol) -> bool:
    """Evolution law through degree D - 1 and E(t = 0) = 1."""
    if res_t(E) != WSymbol.one(E.n).truncate(E.window.floors[0]):
        return False
    if E.D == 0:
        return True
    return evolution_residual(E, P).is_zero()


# -- closed forms ---------------------------------------------------------

def _theta(theta) -> ParamScalar:
    if isinstance(theta, ParamScalar):
        return theta
    if isinstance(theta, str):
        return ParamScalar.param(theta)
    return ParamScalar.const(theta)


def _t_series_pow(base: list, k: int, D: int) -> list:
    """Truncated power of a t-series given as a list of ParamScalar coefficients."""
    out = [ParamScalar.const(1)] + [ParamScalar.const(0)] * D
    for _ in range(k):
        out = [sum((out[a] * base[d - a] for a in range(d + 1)), ParamScalar.const(0))
               for d in range(D + 1)]
    return out


def _exp_theta_t(theta: ParamScalar, D: int, minus_one: bool) -> list:
    coeffs = [theta ** d * ParamScalar.const(Fraction(1, factorial(d))) for d in range(D + 1)]
    if minus_one:
        coeffs[0] = ParamScalar.const(0)
    return coeffs


def oscillator_closed_form(theta="theta", D: int = 4) -> TWSymbol:
    """Taylor expansion in t of exp((e^{theta t} - 1) x1 u1 / hbar), through t^D (n = 1).

    Since e^{theta t} - 1 = O(t), only the powers (x1 u1 / hbar)^k with k <= D
    reach degree D.
    """
    theta = _theta(theta)
    g = _exp_theta_t(theta, D, minus_one=True)
    xu = XUPoly.x(1, 1) * XUPoly.u(1, 1)
    cells = {}
    for k in range(D + 1):
        gk = _t_series_pow(g, k, D)
        mono = (xu ** k).scale(Fraction(1, factorial(k)))
        for d in range(D + 1):
            if gk[d]:
                cells[k, d] = mono.scale(gk[d])
    return TWSymbol.from_cells(1, D, 0, cells)


@dataclass
class FPISeries:
    """Unfiltered bigraded series: ``terms[(j, d)]`` is the hbar^{-j} t^d coefficient.

    Not a TW symbol: the t-independent part carries every positive power of
    hbar^{-1}, so no declared order makes the vanishing condition hold.
    """

    j_max: int
    D: int
    terms: dict = field(default_factory=dict)
    verified: bool | None = None


def exp_xu_over_hbar(j_max: int) -> dict:
    """Levels of exp(x1 u1 / hbar) through hbar^{-j_max}, keyed by j."""
    xu = XUPoly.x(1, 1) * XUPoly.u(1, 1)
    return {k: (xu ** k).scale(Fraction(1, factorial(k))) for k in range(j_max + 1)}


def fpi_oscillator(theta="theta", D: int = 4, j_max: int | None = None,
                   starexp: TWSymbol | None = None) -> FPISeries:
    """exp(e^{theta t} x1 u1 / hbar) truncated to j <= j_max, d <= D, checked
    against exp(x1 u1 / hbar) * sigma(exp(t P / hbar)) for P = theta x1 u1.

    The check multiplies the two series as ordinary commuting bigraded series.
    """
    theta = _theta(theta)
    j_max = D if j_max is None else j_max
    e = _exp_theta_t(theta, D, minus_one=False)
    xu_levels = exp_xu_over_hbar(j_max)
    terms = {}
    for k in range(j_max + 1):
        # e^{k theta t} = sum_d (k theta)^d t^d / d!
        for d in range(D + 1):
            c = e[d] * ParamScalar.const(k ** d)
            if c:
                terms[k, d] = xu_levels[k].scale(c)
    if starexp is None:
        P = WSymbol.from_poly(XUPoly.x(1, 1) * XUPoly.u(1, 1) * XUPoly.const(1, theta))
        starexp = starexp_series(P, D)
    product: dict = {}
    for (j, d), p in starexp.cells().items():
        for k, q in xu_levels.items():
            if j + k <= j_max and 0 <= j + k and d <= D:
                key = (j + k, d)
                product[key] = product[key] + p * q if key in product else p * q
    product = {key: p for key, p in product.items() if p}
    return FPISeries(j_max, D, terms, product == terms)
