import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from starsym import LowerError, ParseError, SWSymbol, TWSymbol, WSymbol, XUPoly, w_star
from starsym.parser import Atom, BinOp, infer_n, lower, parse_expr, parse_symbol
from starsym.randgen import random_swsymbol, random_twsymbol, random_wsymbol
from starsym.render import render_symbol

x1, u1 = XUPoly.x(1, 1), XUPoly.u(1, 1)


def test_product_node():
    ast = parse_expr("theta*x1*u1", 1, ["theta"])
    assert isinstance(ast, BinOp) and ast.op == "*"
    assert lower(ast, "w", 1) == WSymbol.from_poly(XUPoly.param(1, "theta") * x1 * u1)


def test_negative_hbar_power_is_a_positive_level():
    P = parse_symbol("x1^2 + 2*h^-1", "w", 1)
    assert P == WSymbol(1, {0: x1 ** 2, 1: XUPoly.const(1, 2)})
    assert render_symbol(P) == "2*h^-1 + x1^2"


def test_precedence():
    assert parse_symbol("-x1^2", "w", 1) == WSymbol.from_poly(-(x1 ** 2))
    assert parse_symbol("2*x1 + 3*u1*x1", "w", 1) == WSymbol.from_poly(x1 * 2 + u1 * x1 * 3)
    assert parse_symbol("(x1 + u1)^2", "w", 1) == WSymbol.from_poly((x1 + u1) ** 2)
    assert parse_symbol("3/4*x1 - 0.5", "w", 1) == WSymbol.from_poly(
        x1.scale(Fraction(3, 4)) - XUPoly.const(1, Fraction(1, 2)))


def test_aliases_and_sw_tw_lowering():
    assert parse_symbol("ς", "sw", 1) == SWSymbol.from_cells(1, 8, {(0, 0): XUPoly.const(1, 1)})
    assert parse_symbol("ℏ*x1*sinv^3", "sw", 1) == SWSymbol.from_cells(1, 8, {(-1, 2): x1})
    F = parse_symbol("t*h^-1*x1", "tw", 1, D=4)
    assert F.cells() == {(1, 1): x1} and F.m == 0


def test_pipeline_matches_w_star():
    a, b = parse_symbol("u1", "w", 1), parse_symbol("x1", "w", 1)
    assert render_symbol(w_star(a, b)) == "x1*u1 + h"


@pytest.mark.parametrize("src, fragment, col", [
    ("x1/u1", "division", 3),
    ("x1 + (u1", "missing ')'", 9),
    ("x1 + y", "unknown identifier", 6),
    ("x3", "index", 1),
    ("x1^-1", "negative", 3),
    ("x1^^2", "exponent", 4),
    ("x1^2^3", "chained", 5),
    ("x1 + ", "unexpected end", 6),
    ("1/0", "zero", 1),
])
def test_errors_carry_location(src, fragment, col):
    with pytest.raises(ParseError) as exc:
        parse_expr(src, 1, ["theta"])
    assert fragment in exc.value.message
    assert exc.value.line == 1 and exc.value.column == col


def test_error_on_second_line():
    with pytest.raises(ParseError) as exc:
        parse_expr("x1 +\n  $", 1)
    assert (exc.value.line, exc.value.column) == (2, 3)


def test_target_mismatch():
    with pytest.raises(LowerError):
        parse_symbol("t*x1", "w", 1)
    with pytest.raises(LowerError):
        parse_symbol("sinv", "tw", 1)
    with pytest.raises(LowerError):
        parse_symbol("x1", "sw", 1)
    with pytest.raises(LowerError):
        parse_symbol("sinv^5", "sw", 1, Ns=3)


def test_infer_n():
    assert infer_n("x1*u3", "x2") == 3
    assert infer_n("theta") == 1


def test_round_trip_random_symbols():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(1, 2)
        P = random_wsymbol(rng, n, levels=(-3, 2), params=("theta",))
        assert parse_symbol(render_symbol(P), "w", n, ["theta"]) == P
        S = random_swsymbol(rng, n, 5, params=("theta",))
        assert parse_symbol(render_symbol(S), "sw", n, ["theta"], Ns=5) == S
        F = random_twsymbol(rng, n, 4, m=0, params=("theta",))
        G = parse_symbol(render_symbol(F), "tw", n, ["theta"], D=4, order=0)
        assert G == F


@given(st.text(alphabet="xuht12sinv()+-*^/ .ℏθ\n", max_size=30))
def test_parser_is_total(src):
    try:
        parse_expr(src, 2, ["theta"])
    except ParseError as exc:
        assert exc.line >= 1 and exc.column >= 1


@given(st.text(max_size=40))
def test_parser_is_total_on_arbitrary_text(src):
    try:
        parse_expr(src, 2, ["theta"])
    except ParseError:
        pass


def test_deep_nesting_is_an_error_not_a_crash():
    with pytest.raises(ParseError):
        parse_expr("(" * 5000 + "x1" + ")" * 5000, 1)
    with pytest.raises(ParseError):
        parse_expr("x1^100000", 1)
