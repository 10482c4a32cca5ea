"""Truncated one-variable series with XUPoly coefficients.

``TPoly`` is a polynomial in t truncated above degree ``D``. ``SLaurent`` is a
principal part at infinity, sum_k c_k s^{-k-1} for k <= Ns, i.e. a
representative of a class in the s-convolution algebra.
"""

from __future__ import annotations

from math import comb
from typing import Mapping

from .errors import DimensionError
from .poly import XUPoly


def _clean(coeffs: Mapping[int, XUPoly], top: int, n: int) -> dict:
    out = {}
    for k, p in coeffs.items():
        if k < 0:
            raise ValueError("series index must be nonnegative")
        if p.n != n:
            raise DimensionError(f"coefficient has n={p.n}, expected {n}")
        if k <= top and p:
            out[int(k)] = p
    return out


class TPoly:
    __slots__ = ("n", "D", "coeffs")

    def __init__(self, n: int, D: int, coeffs: Mapping[int, XUPoly] | None = None):
        if D < 0:
            raise ValueError("t-truncation degree must be >= 0")
        self.n = n
        self.D = D
        self.coeffs = _clean(coeffs or {}, D, n)

    @classmethod
    def const(cls, p: XUPoly, D: int) -> "TPoly":
        return cls(p.n, D, {0: p})

    def __getitem__(self, d: int) -> XUPoly:
        return self.coeffs.get(d, XUPoly.zero(self.n))

    def val_t(self) -> int:
        """Least degree with a nonzero coefficient; D + 1 for zero."""
        return min(self.coeffs, default=self.D + 1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _check(self, other: "TPoly"):
        if self.n != other.n:
            raise DimensionError(f"half-dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "TPoly") -> "TPoly":
        self._check(other)
        out = dict(self.coeffs)
        for d, p in other.coeffs.items():
            out[d] = out[d] + p if d in out else p
        return TPoly(self.n, min(self.D, other.D), out)

    def __neg__(self):
        return TPoly(self.n, self.D, {d: -p for d, p in self.coeffs.items()})

    def __sub__(self, other: "TPoly") -> "TPoly":
        return self + (-other)

    def __mul__(self, other: "TPoly") -> "TPoly":
        self._check(other)
        D = min(self.D, other.D)
        out: dict = {}
        for d1, p in self.coeffs.items():
            for d2, q in other.coeffs.items():
                if d1 + d2 <= D:
                    out[d1 + d2] = out[d1 + d2] + p * q if d1 + d2 in out else p * q
        return TPoly(self.n, D, out)

    def scale(self, c) -> "TPoly":
        return TPoly(self.n, self.D, {d: p.scale(c) for d, p in self.coeffs.items()})

    def derivative(self) -> "TPoly":
        """d/dt; the result is exact through degree D - 1."""
        return TPoly(self.n, max(self.D - 1, 0),
                     {d - 1: p.scale(d) for d, p in self.coeffs.items() if d})

    def at_zero(self) -> XUPoly:
        return self[0]

    def __eq__(self, other):
        if not isinstance(other, TPoly):
            return NotImplemented
        return self.n == other.n and self.D == other.D and self.coeffs == other.coeffs

    def __repr__(self):
        return f"TPoly(n={self.n}, D={self.D}, {self.coeffs!r})"


class SLaurent:
    __slots__ = ("n", "Ns", "coeffs")

    def __init__(self, n: int, Ns: int, coeffs: Mapping[int, XUPoly] | None = None):
        if Ns < 0:
            raise ValueError("s-truncation depth must be >= 0")
        self.n = n
        self.Ns = Ns
        self.coeffs = _clean(coeffs or {}, Ns, n)

    @classmethod
    def sinv(cls, p: XUPoly, Ns: int, depth: int = 0) -> "SLaurent":
        """``p * s^{-depth-1}``."""
        return cls(p.n, Ns, {depth: p})

    def __getitem__(self, k: int) -> XUPoly:
        return self.coeffs.get(k, XUPoly.zero(self.n))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "SLaurent") -> "SLaurent":
        if self.n != other.n:
            raise DimensionError(f"half-dimension mismatch: {self.n} vs {other.n}")
        out = dict(self.coeffs)
        for k, p in other.coeffs.items():
            out[k] = out[k] + p if k in out else p
        return SLaurent(self.n, min(self.Ns, other.Ns), out)

    def __neg__(self):
        return SLaurent(self.n, self.Ns, {k: -p for k, p in self.coeffs.items()})

    def __sub__(self, other: "SLaurent") -> "SLaurent":
        return self + (-other)

    def scale(self, c) -> "SLaurent":
        return SLaurent(self.n, self.Ns, {k: p.scale(c) for k, p in self.coeffs.items()})

    def residue(self) -> XUPoly:
        """Coefficient of s^{-1}, normalised so that ds/s integrates to 1."""
        return self[0]

    def __eq__(self, other):
        if not isinstance(other, SLaurent):
            return NotImplemented
        return self.n == other.n and self.Ns == other.Ns and self.coeffs == other.coeffs

    def __repr__(self):
        return f"SLaurent(n={self.n}, Ns={self.Ns}, {self.coeffs!r})"


def s_convolve(f: SLaurent, g: SLaurent) -> SLaurent:
    """Convolution product using s^{-a-1} * s^{-b-1} = C(a+b, a) s^{-a-b-1}.

    Depth is additive, so every kept output depth only sees kept inputs.
    """
    if f.n != g.n:
        raise DimensionError(f"half-dimension mismatch: {f.n} vs {g.n}")
    Ns = min(f.Ns, g.Ns)
    out: dict = {}
    for a, p in f.coeffs.items():
        for b, q in g.coeffs.items():
            if a + b <= Ns:
                term = (p * q).scale(comb(a + b, a))
                out[a + b] = out[a + b] + term if a + b in out else term
    return SLaurent(f.n, Ns, out)
