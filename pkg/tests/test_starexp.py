import random
from fractions import Fraction

import pytest
import sympy as sp

from oracles import fpi_taylor, oscillator_taylor, to_sympy
from starsym import (OrderError, agree, TWSymbol, WSymbol, XUPoly, fpi_oscillator,
                     oscillator_closed_form, satisfies_evolution, satisfies_filtration,
                     starexp_ode, starexp_routes, starexp_series, starexp_via_resolvent)
from starsym.randgen import random_wsymbol

x1, u1 = XUPoly.x(1, 1), XUPoly.u(1, 1)
theta = XUPoly.param(1, "theta")
OSC = WSymbol.from_poly(theta * x1 * u1)


def test_oscillator_degree_two():
    expected = TWSymbol.from_cells(1, 2, 0, {
        (0, 0): XUPoly.const(1, 1),
        (1, 1): theta * x1 * u1,
        (2, 2): (theta ** 2 * x1 ** 2 * u1 ** 2).scale(Fraction(1, 2)),
        (1, 2): (theta ** 2 * x1 * u1).scale(Fraction(1, 2))})
    for route in (starexp_series, starexp_ode, starexp_via_resolvent):
        assert route(OSC, 2) == expected
    assert oscillator_closed_form("theta", 2) == expected
    assert oscillator_closed_form("theta", 1) == TWSymbol.from_cells(
        1, 1, 0, {(0, 0): XUPoly.const(1, 1), (1, 1): theta * x1 * u1})


def test_closed_form_against_taylor_oracle():
    for D in (0, 3, 6):
        assert sp.expand(to_sympy(oscillator_closed_form("theta", D), "t")
                         - oscillator_taylor(D)) == 0


def test_x_independent_symbol_exponentiates_pointwise():
    E = starexp_ode(WSymbol.from_poly(u1), 3)
    expected = TWSymbol.from_cells(1, 3, 0, {
        (k, k): (u1 ** k).scale(Fraction(1, [1, 1, 2, 6][k])) for k in range(4)})
    assert E == expected


def test_constant_one_gives_exp_t_over_h():
    E = starexp_via_resolvent(WSymbol.one(0), 5)
    t, h = sp.symbols("t h")
    assert sp.expand(to_sympy(E, "t") - sp.series(sp.exp(t / h), t, 0, 6).removeO()) == 0


def test_zero_symbol():
    assert starexp_series(WSymbol(1), 5) == TWSymbol.one(1, 5)


def test_routes_agree_on_random_symbols():
    rng = random.Random(1)
    for _ in range(10):
        P = random_wsymbol(rng, rng.randint(1, 2), levels=(-2, 0))
        routes = starexp_routes(P, 3)
        assert routes.agreement
        for E in routes.computed().values():
            assert satisfies_evolution(E, P)
            assert satisfies_filtration(E)


def test_truncated_input_routes_agree_on_shared_window():
    P = WSymbol(1, {0: x1 * u1 + u1, -1: x1, -2: u1 ** 2}).truncate(-1)
    routes = starexp_routes(P, 3)
    assert routes.agreement
    assert not routes.agree_window.is_exact()
    exact = starexp_series(WSymbol(1, {0: x1 * u1 + u1, -1: x1, -2: u1 ** 2}), 3)
    assert agree(routes.series, exact)


def test_positive_order_rejected():
    for route in (starexp_series, starexp_ode, starexp_via_resolvent):
        with pytest.raises(OrderError):
            route(WSymbol.from_poly(x1, 1), 2)


def test_fpi_identity_against_oracle():
    fpi = fpi_oscillator("theta", 4)
    assert fpi.verified
    got = sum((to_sympy(WSymbol.from_poly(p, j)) * sp.Symbol("t") ** d
               for (j, d), p in fpi.terms.items()), sp.Integer(0))
    assert sp.expand(got - fpi_taylor(4, 4)) == 0
    # level 1, degree 1 carries theta x1 u1 alone
    assert fpi.terms[1, 1] == theta * x1 * u1
    assert fpi.terms[2, 1] == theta * x1 ** 2 * u1 ** 2


def test_oscillator_at_theta_zero():
    assert starexp_series(WSymbol.from_poly(XUPoly.zero(1)), 4) == TWSymbol.one(1, 4)
    fpi = fpi_oscillator(0, 4)
    assert fpi.verified
    assert all(d == 0 for (_, d) in fpi.terms)
