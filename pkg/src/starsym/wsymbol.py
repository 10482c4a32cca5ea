"""Total symbols of W: sum_j p_j(x; u) hbar^{-j} with polynomial p_j.

Keys follow ord(hbar) = -1, so hbar^k lives at key j = -k. A symbol carries
an exactness floor ``j_min``: levels below it were truncated away and are
unknown. ``MINUS_INFINITY`` means nothing was truncated.
"""

from __future__ import annotations

from typing import Mapping

from ._leibniz import leibniz
from .errors import DimensionError
from .poly import XUPoly, affine_substitute

MINUS_INFINITY = float("-inf")


def _w_combine(a1, a2):
    return 0, 1


def top_level(m, floor):
    """Highest key whose coefficient might be nonzero, counting unknown levels."""
    return max(m, floor - 1)


def product_floor(floor_p, top_p, floor_q, top_q):
    """Lowest level of a product that is unaffected by truncated input levels.

    An unknown P-level i < floor_p only reaches output levels <= i + top_q.
    """
    return max(floor_p + top_q, floor_q + top_p)


class WSymbol:
    __slots__ = ("n", "coeffs", "j_min")

    def __init__(self, n: int, coeffs: Mapping[int, XUPoly] | None = None,
                 j_min=MINUS_INFINITY):
        out = {}
        for j, p in (coeffs or {}).items():
            if p.n != n:
                raise DimensionError(f"coefficient has n={p.n}, expected {n}")
            if p and j >= j_min:
                out[int(j)] = p
        self.n = n
        self.coeffs = out
        self.j_min = j_min if j_min == MINUS_INFINITY else int(j_min)

    @classmethod
    def from_poly(cls, p: XUPoly, level: int = 0) -> "WSymbol":
        return cls(p.n, {level: p})

    @classmethod
    def one(cls, n: int) -> "WSymbol":
        return cls.from_poly(XUPoly.const(n, 1))

    @classmethod
    def hbar(cls, n: int, power: int = 1) -> "WSymbol":
        """hbar^power (power may be negative)."""
        return cls.from_poly(XUPoly.const(n, 1), -power)

    @property
    def m(self):
        """Tight order, or MINUS_INFINITY for the zero symbol."""
        return max(self.coeffs, default=MINUS_INFINITY)

    @property
    def exact(self) -> bool:
        return self.j_min == MINUS_INFINITY

    def __getitem__(self, j: int) -> XUPoly:
        return self.coeffs.get(j, XUPoly.zero(self.n))

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other):
        if self.n != other.n:
            raise DimensionError(f"half-dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "WSymbol") -> "WSymbol":
        self._check(other)
        out = dict(self.coeffs)
        for j, p in other.coeffs.items():
            out[j] = out[j] + p if j in out else p
        return WSymbol(self.n, out, max(self.j_min, other.j_min))

    def __neg__(self):
        return WSymbol(self.n, {j: -p for j, p in self.coeffs.items()}, self.j_min)

    def __sub__(self, other: "WSymbol") -> "WSymbol":
        return self + (-other)

    def scale(self, c) -> "WSymbol":
        return WSymbol(self.n, {j: p.scale(c) for j, p in self.coeffs.items()}, self.j_min)

    def hbar_shift(self, k: int) -> "WSymbol":
        """Multiply by hbar^{-k}: every key and the floor move up by k."""
        return WSymbol(self.n, {j + k: p for j, p in self.coeffs.items()}, self.j_min + k)

    def truncate(self, j_min) -> "WSymbol":
        return WSymbol(self.n, self.coeffs, max(self.j_min, j_min))

    def map_coeffs(self, fn) -> "WSymbol":
        return WSymbol(self.n, {j: fn(p) for j, p in self.coeffs.items()}, self.j_min)

    def entries(self):
        return [(j, 0, e, pm, c) for j, p in self.coeffs.items() for (e, pm), c in p.flat_items()]

    def __eq__(self, other):
        if not isinstance(other, WSymbol):
            return NotImplemented
        return self.n == other.n and self.j_min == other.j_min and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.j_min, frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"WSymbol(n={self.n}, {self})"

    def __str__(self):
        from .render import render_symbol

        return render_symbol(self)


def _from_flat(n: int, flat: dict) -> dict:
    levels: dict = {}
    for (j, _aux, e, pm), c in flat.items():
        levels.setdefault(j, {})[(e, pm)] = c
    return {j: XUPoly._raw(n, terms) for j, terms in levels.items()}


def w_star(P: WSymbol, Q: WSymbol) -> WSymbol:
    """Normal-ordered star product; [u_i, x_j] = delta_ij hbar."""
    P._check(Q)
    floor = product_floor(P.j_min, top_level(P.m, P.j_min), Q.j_min, top_level(Q.m, Q.j_min))
    flat = leibniz(P.n, P.entries(), Q.entries(), _w_combine,
                   None if floor == MINUS_INFINITY else (lambda j, _a: j >= floor))
    return WSymbol(P.n, _from_flat(P.n, flat), floor)


def w_order(P: WSymbol):
    return P.m


def principal_symbol(P: WSymbol):
    """``(order, leading coefficient)``; ``(MINUS_INFINITY, 0)`` for zero."""
    m = P.m
    return m, P[m] if m != MINUS_INFINITY else XUPoly.zero(P.n)


def w_pow_star(P: WSymbol, k: int) -> WSymbol:
    """P^{star k} by repeated squaring; P^0 is the unit."""
    if k < 0:
        raise ValueError("star powers need k >= 0")
    out = WSymbol.one(P.n)
    base = P
    while k:
        if k & 1:
            out = w_star(out, base)
        k >>= 1
        if k:
            base = w_star(base, base)
    return out


def w_commutator(P: WSymbol, Q: WSymbol) -> WSymbol:
    return w_star(P, Q) - w_star(Q, P)


def w_substitute(P: WSymbol, A) -> WSymbol:
    """Apply the affine change of coordinates to every level."""
    return P.map_coeffs(lambda p: affine_substitute(p, A))
