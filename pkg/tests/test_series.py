from fractions import Fraction
from math import comb

import sympy as sp

from oracles import S, T, convolution_integral, laplace_of_t_power
from starsym import SLaurent, TPoly, XUPoly
from starsym.series import s_convolve


def basis(k, Ns=20):
    return SLaurent(0, Ns, {k: XUPoly.const(0, 1)})


def test_convolution_basis_against_integral_oracle():
    for n in range(4):
        for m in range(4):
            # the Laplace images multiply like the convolution of t^n/n! and t^m/m!
            integral = convolution_integral(n, m)
            coeff = sp.expand(integral / (T ** (n + m + 1) / sp.factorial(n + m + 1)))
            assert coeff == 1
            assert laplace_of_t_power(n) == S ** (-n - 1)
            assert s_convolve(basis(n), basis(m)) == basis(n + m).scale(comb(n + m, n))


def test_small_basis_products():
    assert s_convolve(basis(0), basis(0)) == basis(0)
    assert s_convolve(basis(1), basis(1)) == basis(2).scale(2)


def test_convolution_truncates_to_smaller_depth():
    a = SLaurent(0, 2, {2: XUPoly.const(0, 1)})
    b = SLaurent(0, 5, {1: XUPoly.const(0, 1)})
    assert s_convolve(a, b).Ns == 2
    assert not s_convolve(a, b)


def test_sinv_and_residue():
    p = XUPoly.x(1, 1)
    f = SLaurent(1, 4, {0: p, 2: p})
    assert f.residue() == p
    assert SLaurent.sinv(p, 4) == SLaurent(1, 4, {0: p})


def test_tpoly_arithmetic():
    one = XUPoly.const(0, 1)
    f = TPoly(0, 3, {1: one, 2: one})
    assert f.val_t() == 1
    assert (f * f).val_t() == 2
    assert (f * f)[3] == one.scale(2)
    assert f.derivative()[1] == one.scale(2)
    assert TPoly(0, 3, {}).val_t() == 4
