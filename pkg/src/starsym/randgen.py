"""Seeded random generators for symbols, used by the law suites and tests."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from .laplace import TWSymbol
from .poly import XUPoly
from .scalar import ParamScalar
from .swsymbol import SWSymbol
from .wsymbol import WSymbol


def random_scalar(rng: random.Random, params=(), rational: bool = True) -> ParamScalar:
    num = rng.choice([-3, -2, -1, 1, 2, 3])
    den = rng.choice([1, 1, 2, 3]) if rational else 1
    out = ParamScalar.const(Fraction(num, den))
    if params and rng.random() < 0.3:
        out = out * ParamScalar.param(rng.choice(list(params)), rng.randint(1, 2))
    return out


def random_poly(rng: random.Random, n: int, max_degree: int = 2, max_terms: int = 3,
                params=(), allow_zero: bool = False) -> XUPoly:
    monomials = [e for e in product(range(max_degree + 1), repeat=2 * n)
                 if sum(e) <= max_degree]
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            e = rng.choice(monomials)
            terms[(e[:n], e[n:])] = random_scalar(rng, params)
        p = XUPoly(n, terms)
        if p or allow_zero:
            return p


def random_wsymbol(rng: random.Random, n: int, levels=(-2, 0), max_degree: int = 2,
                   params=(), density: float = 0.7) -> WSymbol:
    """Nonzero symbol with coefficients at keys in [levels[0], levels[1]]."""
    lo, hi = levels
    while True:
        coeffs = {j: random_poly(rng, n, max_degree, params=params)
                  for j in range(lo, hi + 1) if rng.random() < density}
        if coeffs:
            return WSymbol(n, coeffs)


def random_swsymbol(rng: random.Random, n: int, Ns: int, levels=(-2, 0), max_depth: int = 3,
                    max_degree: int = 2, params=()) -> SWSymbol:
    lo, hi = levels
    while True:
        cells = {}
        for j in range(lo, hi + 1):
            for k in range(min(max_depth, Ns) + 1):
                if rng.random() < 0.4:
                    cells[j, k] = random_poly(rng, n, max_degree, max_terms=2, params=params)
        if cells:
            return SWSymbol.from_cells(n, Ns, cells)


def random_twsymbol(rng: random.Random, n: int, D: int, m: int = 0, low: int = -2,
                    max_degree: int = 2, params=(), density: float = 0.35) -> TWSymbol:
    """Random symbol of declared order m satisfying the t-vanishing condition."""
    while True:
        cells = {}
        for j in range(low, m + D + 1):
            for d in range(max(0, j - m), D + 1):
                if rng.random() < density:
                    cells[j, d] = random_poly(rng, n, max_degree, max_terms=2, params=params)
        if cells:
            return TWSymbol.from_cells(n, D, m, cells)


def random_invertible_matrix(rng: random.Random, n: int) -> list:
    while True:
        A = [[Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2])) for _ in range(n)]
             for _ in range(n)]
        if _det(A) != 0:
            return A


def _det(A) -> Fraction:
    # cofactor expansion; only used for the tiny matrices generated here
    if len(A) == 1:
        return A[0][0]
    if len(A) == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    return sum(((-1) ** c) * A[0][c] * _det([row[:c] + row[c + 1:] for row in A[1:]])
               for c in range(len(A)))
