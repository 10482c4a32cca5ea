"""TW symbols, the formal Laplace transform SW -> TW, and the TW product.

A TW symbol is sum_j f_j(t; x, u) hbar^{-j} with each f_j a truncated
t-polynomial. It carries a *declared* order m and must vanish to order
j - m at t = 0 whenever j > m (the truncated form of the growth condition
that makes the Laplace image of an order-m SW symbol well defined).

Truncation bookkeeping lives in :class:`PrecisionWindow`, which records for
every t-degree d the lowest hbar-level at which degree-d coefficients are
known exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from math import factorial
from typing import Mapping, Sequence

from ._leibniz import leibniz
from .errors import DimensionError, FiltrationViolation
from .poly import XUPoly
from .series import SLaurent, TPoly
from .swsymbol import SWSymbol
from .wsymbol import MINUS_INFINITY, WSymbol

PLUS_INFINITY = float("inf")


@dataclass(frozen=True)
class PrecisionWindow:
    """``floors[d]`` is the lowest hbar-level whose t^d coefficient is exact.

    Floors are nondecreasing in d; ``MINUS_INFINITY`` means every level is
    exact. Degrees beyond ``len(floors) - 1`` are outside the truncation.
    """

    floors: tuple

    def __post_init__(self):
        object.__setattr__(self, "floors", tuple(accumulate(self.floors, max)))

    @classmethod
    def exact(cls, D: int) -> "PrecisionWindow":
        return cls((MINUS_INFINITY,) * (D + 1))

    @classmethod
    def uniform(cls, floor, D: int) -> "PrecisionWindow":
        return cls((floor,) * (D + 1))

    @property
    def D(self) -> int:
        return len(self.floors) - 1

    @property
    def j_floor(self):
        return self.floors[0]

    def t_exact(self, j) -> int:
        """Highest t-degree guaranteed exact at level j (-1 if none)."""
        best = -1
        for d, f in enumerate(self.floors):
            if f <= j:
                best = d
        return best

    def contains(self, j, d: int) -> bool:
        return 0 <= d < len(self.floors) and j >= self.floors[d]

    def is_exact(self) -> bool:
        return all(f == MINUS_INFINITY for f in self.floors)

    def intersect(self, other: "PrecisionWindow") -> "PrecisionWindow":
        return PrecisionWindow(tuple(max(a, b) for a, b in zip(self.floors, other.floors)))

    def shift(self, k: int) -> "PrecisionWindow":
        return PrecisionWindow(tuple(f + k for f in self.floors))

    def upto(self, D: int) -> "PrecisionWindow":
        return PrecisionWindow(self.floors[: D + 1])


class TWSymbol:
    __slots__ = ("n", "D", "m", "coeffs", "window")

    def __init__(self, n: int, D: int, m: int, coeffs: Mapping[int, TPoly] | None = None,
                 window: PrecisionWindow | None = None):
        window = PrecisionWindow.exact(D) if window is None else window.upto(D)
        if window.D < D:
            raise ValueError(f"window covers degrees <= {window.D}, D = {D}")
        out = {}
        for j, f in (coeffs or {}).items():
            if f.n != n:
                raise DimensionError(f"coefficient has n={f.n}, expected {n}")
            kept = {d: p for d, p in f.coeffs.items() if d <= D and window.contains(j, d)}
            if kept:
                out[int(j)] = TPoly(n, D, kept)
        self.n = n
        self.D = D
        self.m = int(m)
        self.coeffs = out
        self.window = window

    @classmethod
    def from_cells(cls, n: int, D: int, m: int, cells: Mapping,
                   window: PrecisionWindow | None = None) -> "TWSymbol":
        """Build from ``{(level, t_degree): XUPoly}``."""
        levels: dict = {}
        for (j, d), p in cells.items():
            if d <= D:
                levels.setdefault(j, {})[d] = p
        return cls(n, D, m, {j: TPoly(n, D, v) for j, v in levels.items()}, window)

    @classmethod
    def one(cls, n: int, D: int) -> "TWSymbol":
        return cls.from_cells(n, D, 0, {(0, 0): XUPoly.const(n, 1)})

    def __getitem__(self, j: int) -> TPoly:
        return self.coeffs.get(j, TPoly(self.n, self.D))

    def cell(self, j: int, d: int) -> XUPoly:
        return self[j][d]

    def cells(self) -> dict:
        return {(j, d): p for j, f in self.coeffs.items() for d, p in f.coeffs.items()}

    def entries(self):
        return [(j, d, e, pm, c) for j, f in self.coeffs.items()
                for d, p in f.coeffs.items() for (e, pm), c in p.flat_items()]

    def is_zero(self) -> bool:
        return not self.coeffs

    def restrict(self, window: PrecisionWindow) -> "TWSymbol":
        D = min(self.D, window.D)
        return TWSymbol(self.n, D, self.m, self.coeffs, self.window.upto(D).intersect(window))

    def _aligned(self, other: "TWSymbol"):
        if self.n != other.n:
            raise DimensionError(f"half-dimension mismatch: {self.n} vs {other.n}")
        D = min(self.D, other.D)
        return D, self.window.upto(D).intersect(other.window.upto(D))

    def __add__(self, other: "TWSymbol") -> "TWSymbol":
        D, window = self._aligned(other)
        cells = self.cells()
        for key, p in other.cells().items():
            cells[key] = cells[key] + p if key in cells else p
        return TWSymbol.from_cells(self.n, D, max(self.m, other.m), cells, window)

    def __neg__(self):
        return TWSymbol(self.n, self.D, self.m, {j: -f for j, f in self.coeffs.items()},
                        self.window)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TWSymbol":
        return TWSymbol(self.n, self.D, self.m, {j: f.scale(c) for j, f in self.coeffs.items()},
                        self.window)

    def hbar_shift(self, k: int) -> "TWSymbol":
        """Multiply by hbar^{-k}; the declared order moves by +k."""
        return TWSymbol(self.n, self.D, self.m + k, {j + k: f for j, f in self.coeffs.items()},
                        self.window.shift(k))

    def with_order(self, m: int) -> "TWSymbol":
        return TWSymbol(self.n, self.D, m, self.coeffs, self.window)

    def __eq__(self, other):
        if not isinstance(other, TWSymbol):
            return NotImplemented
        return (self.n, self.D, self.m, self.window, self.coeffs) == \
            (other.n, other.D, other.m, other.window, other.coeffs)

    def __repr__(self):
        return f"TWSymbol(n={self.n}, D={self.D}, m={self.m}, {self})"

    def __str__(self):
        from .render import render_symbol

        return render_symbol(self)


def filtration_violations(F: TWSymbol) -> list:
    """Levels j > m whose t-valuation is below j - m, as ``(j, val_t)`` pairs."""
    return [(j, f.val_t()) for j, f in sorted(F.coeffs.items())
            if j > F.m and f.val_t() < j - F.m]


def satisfies_filtration(F: TWSymbol) -> bool:
    return not filtration_violations(F)


def agree(F: TWSymbol, G: TWSymbol) -> bool:
    """Equal at every cell inside both precision windows."""
    D, window = F._aligned(G)
    return F.restrict(window).cells() == G.restrict(window).cells()


def _unknown_top(F: TWSymbol, d: int):
    """Highest level whose t^d cell may be nonzero but is not known."""
    return min(F.window.floors[d] - 1, F.m + d)


def _nonzero_top(F: TWSymbol, d: int):
    known = max((j for j, f in F.coeffs.items() if d in f.coeffs), default=MINUS_INFINITY)
    return max(_unknown_top(F, d), min(known, F.m + d))


def product_window(F: TWSymbol, G: TWSymbol, D: int) -> PrecisionWindow:
    """Exactness window of ``tw_star(F, G)``.

    Output cell (k, d) collects f(i, d1) g(j, d2) with d1 + d2 = d and
    i + j >= k (the derivative terms only lower the level). It is inexact
    iff some unknown cell pairs with a possibly nonzero one, which reduces
    to comparing k against the top unknown / top nonzero levels per degree.
    """
    uf = [_unknown_top(F, d) for d in range(D + 1)]
    ug = [_unknown_top(G, d) for d in range(D + 1)]
    nf = [_nonzero_top(F, d) for d in range(D + 1)]
    ng = [_nonzero_top(G, d) for d in range(D + 1)]
    floors = []
    for d in range(D + 1):
        worst = max(max(uf[a] + ng[d - a], ug[d - a] + nf[a]) for a in range(d + 1))
        floors.append(worst + 1)
    return PrecisionWindow(tuple(floors))


def tw_star(F: TWSymbol, G: TWSymbol) -> TWSymbol:
    """Leibniz product with the commutative t-polynomial product per level."""
    D, _ = F._aligned(G)
    F, G = F.restrict(PrecisionWindow.exact(D)), G.restrict(PrecisionWindow.exact(D))
    window = product_window(F, G, D)

    def combine(a, b):
        return (a + b, 1) if a + b <= D else None

    flat = leibniz(F.n, F.entries(), G.entries(), combine, window.contains)
    cells: dict = {}
    for (j, d, e, pm), c in flat.items():
        cells.setdefault((j, d), {})[(e, pm)] = c
    return TWSymbol.from_cells(F.n, D, F.m + G.m,
                               {key: XUPoly._raw(F.n, t) for key, t in cells.items()}, window)


def laplace(P: SWSymbol, D: int, order: int | None = None) -> TWSymbol:
    """c s^{-n-1} hbar^{-j} -> c t^n / n! hbar^{-(j+n)}.

    The result keeps t-degrees up to min(D, P.Ns); its declared order is the
    order of P (0 for the zero symbol) unless ``order`` overrides it.
    """
    cap = min(D, P.Ns)
    cells = {}
    for (j, k), p in P.cells().items():
        if k <= cap:
            cells[j + k, k] = p.scale(Fraction(1, factorial(k)))
    if order is None:
        order = P.m if P.coeffs else 0
    window = PrecisionWindow(tuple(P.j_min + d for d in range(cap + 1)))
    return TWSymbol.from_cells(P.n, cap, order, cells, window)


def inverse_laplace(F: TWSymbol) -> SWSymbol:
    """t^n / n! hbar^{-n} -> s^{-n-1}, applied level by level.

    Raises FiltrationViolation when F does not vanish at t = 0 as its
    declared order requires; otherwise positive-order levels would land on
    entire (hence zero) classes and the transform would not be injective.
    """
    bad = filtration_violations(F)
    if bad:
        j, val = bad[0]
        raise FiltrationViolation(
            f"level {j} has t-valuation {val} < {j - F.m} required by declared order {F.m}")
    cells = {}
    for (j, d), p in F.cells().items():
        cells[j - d, d] = p.scale(factorial(d))
    floor = max(f - d for d, f in enumerate(F.window.floors))
    return SWSymbol.from_cells(F.n, F.D, cells, floor)


def iota_t(P: WSymbol, D: int) -> TWSymbol:
    """Embed a W symbol as a t-independent TW symbol."""
    m = P.m if P.coeffs else 0
    return TWSymbol.from_cells(P.n, D, m, {(j, 0): p for j, p in P.coeffs.items()},
                               PrecisionWindow.uniform(P.j_min, D))


def res_t(F: TWSymbol) -> WSymbol:
    """Evaluate at t = 0."""
    return WSymbol(F.n, {j: f[0] for j, f in F.coeffs.items()}, F.window.floors[0])


def degree_part(F: TWSymbol, d: int) -> WSymbol:
    """The t^d coefficient as a W symbol (with its exactness floor)."""
    return WSymbol(F.n, {j: f[d] for j, f in F.coeffs.items()}, F.window.floors[d])


def from_degree_parts(parts: Sequence[WSymbol], m: int) -> TWSymbol:
    """Assemble sum_d parts[d] t^d; D = len(parts) - 1."""
    n = parts[0].n
    D = len(parts) - 1
    cells = {(j, d): p for d, part in enumerate(parts) for j, p in part.coeffs.items()}
    window = PrecisionWindow(tuple(part.j_min for part in parts))
    return TWSymbol.from_cells(n, D, m, cells, window)


def t_derivative(F: TWSymbol) -> TWSymbol:
    """d/dt; exact through degree D - 1, declared order m + 1."""
    if F.D < 1:
        raise ValueError("t-derivative needs D >= 1")
    cells = {(j, d - 1): p.scale(d) for (j, d), p in F.cells().items() if d}
    return TWSymbol.from_cells(F.n, F.D - 1, F.m + 1, cells, PrecisionWindow(F.window.floors[1:]))
