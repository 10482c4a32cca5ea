from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given

from conftest import wsymbols
from oracles import H, star_oracle, to_sympy
from starsym import (DimensionError, MINUS_INFINITY, WSymbol, XUPoly, principal_symbol,
                     w_commutator, w_star, w_substitute)
from starsym.render import render_symbol
from starsym.wsymbol import w_pow_star

x1, u1 = XUPoly.x(1, 1), XUPoly.u(1, 1)
theta = XUPoly.param(1, "theta")


def W(p, level=0):
    return WSymbol.from_poly(p, level)


def test_u_star_x():
    assert w_star(W(u1), W(x1)) == W(x1 * u1) + WSymbol.hbar(1)
    assert w_star(W(x1), W(u1)) == W(x1 * u1)
    assert render_symbol(w_star(W(u1), W(x1))) == "x1*u1 + h"


def test_u_squared_star_x_squared():
    expected = W(x1 ** 2 * u1 ** 2) + W(x1 * u1 * 4, -1) + W(XUPoly.const(1, 2), -2)
    assert w_star(W(u1 ** 2), W(x1 ** 2)) == expected


def test_star_power_of_oscillator():
    P = W(theta * x1 * u1)
    expected = W(theta ** 2 * x1 ** 2 * u1 ** 2) + W(theta ** 2 * x1 * u1, -1)
    assert w_pow_star(P, 2) == expected
    assert w_pow_star(P, 0) == WSymbol.one(1)


def test_commutators():
    assert w_commutator(W(u1), W(x1)) == WSymbol.hbar(1)
    assert w_commutator(W(u1 ** 2), W(x1)) == W(u1 * 2, -1)


def test_ccr_two_dimensions():
    for i in (1, 2):
        for j in (1, 2):
            c = w_commutator(W(XUPoly.u(2, i)), W(XUPoly.x(2, j)))
            assert c == (WSymbol.hbar(2) if i == j else WSymbol(2))


@given(wsymbols(1), wsymbols(1))
def test_star_matches_operator_composition(P, Q):
    expected = star_oracle(to_sympy(P), to_sympy(Q), 1)
    assert sp.expand(to_sympy(w_star(P, Q)) - expected) == 0


def test_star_matches_operator_composition_two_dims():
    x2, u2 = XUPoly.x(2, 2), XUPoly.u(2, 2)
    P = WSymbol(2, {0: XUPoly.u(2, 1) ** 2 * u2 + x2, -1: u2})
    Q = WSymbol(2, {1: XUPoly.x(2, 1) * x2 ** 2, 0: XUPoly.x(2, 1)})
    expected = star_oracle(to_sympy(P), to_sympy(Q), 2)
    assert sp.expand(to_sympy(w_star(P, Q)) - expected) == 0


@given(wsymbols(1), wsymbols(1), wsymbols(1))
def test_associativity_and_unit(P, Q, R):
    assert w_star(w_star(P, Q), R) == w_star(P, w_star(Q, R))
    assert w_star(WSymbol.one(1), P) == P == w_star(P, WSymbol.one(1))


@given(wsymbols(1), wsymbols(1))
def test_filtration_and_principal_symbol(P, Q):
    PQ = w_star(P, Q)
    if P.is_zero() or Q.is_zero():
        assert PQ.is_zero()
        return
    assert PQ.m <= P.m + Q.m
    mp, sp_ = principal_symbol(P)
    mq, sq = principal_symbol(Q)
    assert principal_symbol(PQ) == (mp + mq, sp_ * sq)
    assert w_commutator(P, Q).m <= P.m + Q.m - 1


def test_principal_symbol_of_zero():
    assert principal_symbol(WSymbol(1)) == (MINUS_INFINITY, XUPoly.zero(1))


def test_scalars_are_central():
    c = WSymbol(1, {-1: XUPoly.const(1, 3), 1: XUPoly.const(1, Fraction(1, 2))})
    P = W(u1 ** 2 + x1)
    assert w_star(c, P) == w_star(P, c)


def test_affine_covariance_example():
    A = [[1, 2], [Fraction(1, 2), 3]]
    P = W(XUPoly.u(2, 1) * XUPoly.u(2, 2) + XUPoly.x(2, 1))
    Q = W(XUPoly.x(2, 1) * XUPoly.x(2, 2))
    assert w_star(w_substitute(P, A), w_substitute(Q, A)) == w_substitute(w_star(P, Q), A)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        w_star(W(x1), WSymbol.from_poly(XUPoly.x(2, 1)))


def test_truncated_inputs_floor():
    # levels 0 and -1 exact, below -1 unknown; u * x only loses one level
    P = W(u1).truncate(-1)
    Q = W(x1).truncate(-1)
    R = w_star(P, Q)
    assert R.j_min == -1
    assert R == W(x1 * u1).truncate(-1) + WSymbol.hbar(1).truncate(-1)


def test_truncated_floor_is_sound():
    # exact product restricted to the claimed floor must equal the truncated product
    P = WSymbol(1, {0: u1 ** 2, -1: x1, -2: u1, -3: x1 * u1})
    Q = WSymbol(1, {0: x1 ** 2, -2: u1 ** 2, -3: x1})
    for floor in (-3, -2, -1, 0):
        R = w_star(P.truncate(floor), Q.truncate(floor))
        assert w_star(P, Q).truncate(R.j_min) == R
        assert R.j_min == floor  # both orders are 0
