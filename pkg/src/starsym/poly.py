"""Sparse polynomials in phase-space variables x_1..x_n, u_1..u_n.

Coefficients are :class:`~starsym.scalar.ParamScalar` values. Internally a
polynomial is a flat dict keyed by ``(exponents, parameter_monomial)`` where
``exponents`` has length ``2n`` (x exponents first, then u exponents); this
keeps products cheap, which is what the star products spend their time on.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .errors import DimensionError, SingularMatrixError
from .scalar import ONE_MONO, ParamScalar, as_fraction, mono_eval, mono_mul


def falling(k: int, r: int) -> int:
    """k * (k-1) * ... * (k-r+1)."""
    out = 1
    for i in range(r):
        out *= k - i
    return out


class XUPoly:
    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping | None = None):
        """Build from ``{(alpha, beta): coefficient}``, alpha the x-exponents
        and beta the u-exponents, each of length ``n``."""
        if n < 0:
            raise ValueError("half-dimension must be nonnegative")
        flat: dict = {}
        for (alpha, beta), c in (terms or {}).items():
            alpha, beta = tuple(int(a) for a in alpha), tuple(int(b) for b in beta)
            if len(alpha) != n or len(beta) != n:
                raise DimensionError(f"exponent vectors must have length {n}")
            if any(e < 0 for e in alpha + beta):
                raise ValueError("exponents must be nonnegative")
            if not isinstance(c, ParamScalar):
                c = ParamScalar.const(c)
            for pm, v in c.items():
                _acc(flat, (alpha + beta, pm), v)
        self.n = n
        self._terms = flat
        self._hash = None

    @classmethod
    def _raw(cls, n: int, flat: dict) -> "XUPoly":
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = flat
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, n: int) -> "XUPoly":
        return cls._raw(n, {})

    @classmethod
    def const(cls, n: int, value) -> "XUPoly":
        if isinstance(value, ParamScalar):
            return cls._raw(n, {((0,) * (2 * n), pm): c for pm, c in value.items()})
        value = as_fraction(value)
        return cls._raw(n, {((0,) * (2 * n), ONE_MONO): value} if value else {})

    @classmethod
    def x(cls, n: int, i: int) -> "XUPoly":
        """The coordinate x_i (1-based)."""
        return cls._raw(n, {(_unit(2 * n, i - 1), ONE_MONO): Fraction(1)})

    @classmethod
    def u(cls, n: int, i: int) -> "XUPoly":
        return cls._raw(n, {(_unit(2 * n, n + i - 1), ONE_MONO): Fraction(1)})

    @classmethod
    def param(cls, n: int, name: str) -> "XUPoly":
        return cls.const(n, ParamScalar.param(name))

    # -- views ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        """``{(alpha, beta): ParamScalar}``."""
        grouped: dict = {}
        for (e, pm), c in self._terms.items():
            grouped.setdefault((e[: self.n], e[self.n:]), {})[pm] = c
        return {k: ParamScalar._raw(v) for k, v in grouped.items()}

    def flat_items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def parameters(self) -> set:
        return {name for (_, pm) in self._terms for name, _ in pm}

    def degree(self) -> int:
        """Total degree in x and u; -1 for the zero polynomial."""
        return max((sum(e) for e, _ in self._terms), default=-1)

    def degree_x(self) -> int:
        return max((sum(e[: self.n]) for e, _ in self._terms), default=-1)

    def degree_u(self) -> int:
        return max((sum(e[self.n:]) for e, _ in self._terms), default=-1)

    def constant_term(self) -> ParamScalar:
        zero = (0,) * (2 * self.n)
        return ParamScalar._raw({pm: c for (e, pm), c in self._terms.items() if e == zero})

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "XUPoly"):
        if self.n != other.n:
            raise DimensionError(f"half-dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            _acc(out, k, c)
        return XUPoly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return XUPoly._raw(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._check(other)
        out: dict = {}
        for (e1, p1), c1 in self._terms.items():
            for (e2, p2), c2 in other._terms.items():
                _acc(out, (tuple(a + b for a, b in zip(e1, e2)), mono_mul(p1, p2)), c1 * c2)
        return XUPoly._raw(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomial")
        out = XUPoly.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def scale(self, c) -> "XUPoly":
        if isinstance(c, ParamScalar):
            return self * XUPoly.const(self.n, c)
        c = as_fraction(c)
        if not c:
            return XUPoly.zero(self.n)
        return XUPoly._raw(self.n, {k: v * c for k, v in self._terms.items()})

    def _coerce(self, other):
        if isinstance(other, XUPoly):
            return other
        if isinstance(other, (int, Fraction, ParamScalar)):
            return XUPoly.const(self.n, other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution --------------------------------------

    def derive(self, alpha_u: Sequence[int], beta_x: Sequence[int]) -> "XUPoly":
        return poly_derive(self, alpha_u, beta_x)

    def evaluate_params(self, values: Mapping[str, object]) -> "XUPoly":
        out: dict = {}
        for (e, pm), c in self._terms.items():
            _acc(out, (e, ONE_MONO), c * mono_eval(pm, values))
        return XUPoly._raw(self.n, out)

    def __repr__(self):
        return f"XUPoly({self.n}, {self})"

    def __str__(self):
        from .render import render_poly

        return render_poly(self)


def _unit(length: int, i: int) -> tuple:
    e = [0] * length
    e[i] = 1
    return tuple(e)


def _acc(d: dict, key, value):
    v = d.get(key, 0) + value
    if v:
        d[key] = v
    else:
        d.pop(key, None)


def poly_arith(a: XUPoly, b: XUPoly, op: str) -> XUPoly:
    """Exact ``a op b`` for op in {"add", "sub", "mul"}."""
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_derive(a: XUPoly, alpha: Sequence[int], beta: Sequence[int]) -> XUPoly:
    """Iterated partial derivative: alpha counts u-derivatives, beta x-derivatives."""
    n = a.n
    if len(alpha) != n or len(beta) != n:
        raise DimensionError(f"derivative multi-indices must have length {n}")
    order = tuple(beta) + tuple(alpha)
    if not any(order):
        return a
    out: dict = {}
    for (e, pm), c in a._terms.items():
        if any(k < r for k, r in zip(e, order)):
            continue
        factor = 1
        for k, r in zip(e, order):
            factor *= falling(k, r)
        _acc(out, (tuple(k - r for k, r in zip(e, order)), pm), c * factor)
    return XUPoly._raw(n, out)


def _inverse(A):
    import sympy

    M = sympy.Matrix([[sympy.Rational(as_fraction(v).numerator, as_fraction(v).denominator)
                       for v in row] for row in A])
    if M.rows != M.cols:
        raise DimensionError("affine substitution needs a square matrix")
    if M.det() == 0:
        raise SingularMatrixError("matrix is singular over the rationals")
    inv = M.inv()
    return [[Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(M.cols)]
            for i in range(M.rows)]


def affine_substitute(a: XUPoly, A: Sequence[Sequence]) -> XUPoly:
    """Pull ``a`` back along the linear symplectic map (x, u) -> (A x, A^{-T} u)."""
    n = a.n
    if len(A) != n or any(len(row) != n for row in A):
        raise DimensionError(f"matrix must be {n}x{n}")
    A = [[as_fraction(v) for v in row] for row in A]
    Ainv = _inverse(A) if n else []
    x_img = [sum((XUPoly.x(n, k + 1).scale(A[i][k]) for k in range(n)), XUPoly.zero(n))
             for i in range(n)]
    # (A^{-T})_{ik} = (A^{-1})_{ki}
    u_img = [sum((XUPoly.u(n, k + 1).scale(Ainv[k][i]) for k in range(n)), XUPoly.zero(n))
             for i in range(n)]
    images = x_img + u_img
    powers: dict = {}

    def power(i, k):
        if (i, k) not in powers:
            powers[i, k] = images[i] ** k
        return powers[i, k]

    out = XUPoly.zero(n)
    for (e, pm), c in a._terms.items():
        term = XUPoly._raw(n, {((0,) * (2 * n), pm): c})
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        out = out + term
    return out

