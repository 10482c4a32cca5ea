"""Symbols of SW: hbar-series whose coefficients are principal parts in s."""

from __future__ import annotations

from math import comb
from typing import Mapping

from ._leibniz import leibniz
from .errors import DimensionError, OrderError
from .poly import XUPoly
from .series import SLaurent
from .wsymbol import MINUS_INFINITY, WSymbol, product_floor, top_level, w_star


class SWSymbol:
    __slots__ = ("n", "Ns", "coeffs", "j_min")

    def __init__(self, n: int, Ns: int, coeffs: Mapping[int, SLaurent] | None = None,
                 j_min=MINUS_INFINITY):
        out = {}
        for j, f in (coeffs or {}).items():
            if f.n != n:
                raise DimensionError(f"coefficient has n={f.n}, expected {n}")
            if f.Ns != Ns:
                f = SLaurent(n, Ns, f.coeffs) if f.Ns > Ns else f
                if f.Ns != Ns:
                    raise ValueError(f"coefficient depth {f.Ns} is shallower than Ns={Ns}")
            if f and j >= j_min:
                out[int(j)] = f
        self.n = n
        self.Ns = Ns
        self.coeffs = out
        self.j_min = j_min if j_min == MINUS_INFINITY else int(j_min)

    @classmethod
    def from_cells(cls, n: int, Ns: int, cells: Mapping, j_min=MINUS_INFINITY) -> "SWSymbol":
        """Build from ``{(level, depth): XUPoly}``."""
        levels: dict = {}
        for (j, k), p in cells.items():
            levels.setdefault(j, {})[k] = p
        return cls(n, Ns, {j: SLaurent(n, Ns, v) for j, v in levels.items()}, j_min)

    @property
    def m(self):
        return max(self.coeffs, default=MINUS_INFINITY)

    def __getitem__(self, j: int) -> SLaurent:
        return self.coeffs.get(j, SLaurent(self.n, self.Ns))

    def cells(self) -> dict:
        return {(j, k): p for j, f in self.coeffs.items() for k, p in f.coeffs.items()}

    def entries(self):
        return [(j, k, e, pm, c) for j, f in self.coeffs.items()
                for k, p in f.coeffs.items() for (e, pm), c in p.flat_items()]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "SWSymbol") -> "SWSymbol":
        if self.n != other.n:
            raise DimensionError(f"half-dimension mismatch: {self.n} vs {other.n}")
        Ns = min(self.Ns, other.Ns)
        out = {j: SLaurent(self.n, Ns, f.coeffs) for j, f in self.coeffs.items()}
        for j, f in other.coeffs.items():
            f = SLaurent(self.n, Ns, f.coeffs)
            out[j] = out[j] + f if j in out else f
        return SWSymbol(self.n, Ns, out, max(self.j_min, other.j_min))

    def __neg__(self):
        return SWSymbol(self.n, self.Ns, {j: -f for j, f in self.coeffs.items()}, self.j_min)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SWSymbol":
        return SWSymbol(self.n, self.Ns, {j: f.scale(c) for j, f in self.coeffs.items()},
                        self.j_min)

    def truncate(self, j_min=MINUS_INFINITY, Ns: int | None = None) -> "SWSymbol":
        Ns = self.Ns if Ns is None else min(Ns, self.Ns)
        return SWSymbol(self.n, Ns, {j: SLaurent(self.n, Ns, f.coeffs)
                                     for j, f in self.coeffs.items()}, max(self.j_min, j_min))

    def __eq__(self, other):
        if not isinstance(other, SWSymbol):
            return NotImplemented
        return (self.n, self.Ns, self.j_min, self.coeffs) == \
            (other.n, other.Ns, other.j_min, other.coeffs)

    def __repr__(self):
        return f"SWSymbol(n={self.n}, Ns={self.Ns}, {self})"

    def __str__(self):
        from .render import render_symbol

        return render_symbol(self)


def sw_star(P: SWSymbol, Q: SWSymbol) -> SWSymbol:
    """Leibniz product with s-convolution in place of pointwise multiplication."""
    if P.n != Q.n:
        raise DimensionError(f"half-dimension mismatch: {P.n} vs {Q.n}")
    Ns = min(P.Ns, Q.Ns)

    def combine(a, b):
        return (a + b, comb(a + b, a)) if a + b <= Ns else None

    floor = product_floor(P.j_min, top_level(P.m, P.j_min), Q.j_min, top_level(Q.m, Q.j_min))
    flat = leibniz(P.n, P.entries(), Q.entries(), combine,
                   None if floor == MINUS_INFINITY else (lambda j, _a: j >= floor))
    cells: dict = {}
    for (j, k, e, pm), c in flat.items():
        cells.setdefault((j, k), {})[(e, pm)] = c
    return SWSymbol.from_cells(P.n, Ns, {key: XUPoly._raw(P.n, t) for key, t in cells.items()},
                               floor)


def iota(P: WSymbol, Ns: int) -> SWSymbol:
    """P -> (1/s) P."""
    return SWSymbol(P.n, Ns, {j: SLaurent.sinv(p, Ns) for j, p in P.coeffs.items()}, P.j_min)


def res_s(P: SWSymbol) -> WSymbol:
    """Residue at infinity of every hbar-level."""
    return WSymbol(P.n, {j: f.residue() for j, f in P.coeffs.items()}, P.j_min)


def resolvent(P: WSymbol, Ns: int) -> SWSymbol:
    """1/(s - P) developed as sum_{k <= Ns} P^{star k} s^{-k-1}."""
    if P.m > 0:
        raise OrderError(f"resolvent needs a symbol of order <= 0, got order {P.m}")
    cells: dict = {}
    floor = MINUS_INFINITY
    power = WSymbol.one(P.n)
    for k in range(Ns + 1):
        if k:
            power = w_star(P, power)
        floor = max(floor, power.j_min)
        for j, p in power.coeffs.items():
            cells[j, k] = p
    return SWSymbol.from_cells(P.n, Ns, cells, floor)
