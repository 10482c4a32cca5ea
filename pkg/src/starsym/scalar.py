"""Exact scalars: rationals times monomials in formal parameters such as theta."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import UnassignedParameter

# A parameter monomial is a sorted tuple of (name, exponent) pairs, exponents > 0.
ParamMonomial = tuple

ONE_MONO: ParamMonomial = ()


def mono_mul(a: ParamMonomial, b: ParamMonomial) -> ParamMonomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for name, e in b:
        merged[name] = merged.get(name, 0) + e
    return tuple(sorted(merged.items()))


def mono_pow(a: ParamMonomial, k: int) -> ParamMonomial:
    if k == 0 or not a:
        return ONE_MONO
    return tuple((name, e * k) for name, e in a)


def mono_eval(a: ParamMonomial, values: Mapping[str, Fraction]) -> Fraction:
    out = Fraction(1)
    for name, e in a:
        try:
            out *= Fraction(values[name]) ** e
        except KeyError:
            raise UnassignedParameter(f"no value assigned to parameter {name!r}") from None
    return out


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not supported; use Fraction or str")
    return Fraction(value)


class ParamScalar:
    """A finite sum ``sum_k c_k * theta^k`` with exact rational ``c_k``.

    Values are immutable and kept canonical: no zero coefficients are
    stored, so structural equality is mathematical equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[ParamMonomial, object] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = as_fraction(c)
            if c:
                mono = tuple(sorted((str(n), int(e)) for n, e in mono if e))
                clean[mono] = clean.get(mono, 0) + c
                if not clean[mono]:
                    del clean[mono]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "ParamScalar":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, value) -> "ParamScalar":
        value = as_fraction(value)
        return cls._raw({ONE_MONO: value} if value else {})

    @classmethod
    def param(cls, name: str, power: int = 1) -> "ParamScalar":
        return cls._raw({((name, power),) if power else ONE_MONO: Fraction(1)})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def parameters(self) -> set:
        return {name for mono in self._terms for name, _ in mono}

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} depends on parameters")
        return self._terms.get(ONE_MONO, Fraction(0))

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        return sum((c * mono_eval(m, values) for m, c in self._terms.items()), Fraction(0))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return ParamScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return ParamScalar._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of parameter scalars are not supported")
        out = ParamScalar.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"ParamScalar({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, c in sorted(self._terms.items(), key=lambda mc: mc[0]):
            factors = [f"{n}^{e}" if e != 1 else n for n, e in mono]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        return " + ".join(parts).replace("+ -", "- ")


def _coerce(value):
    if isinstance(value, ParamScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return ParamScalar.const(value)
    return NotImplemented


def param_names(scalars: Iterable[ParamScalar]) -> set:
    names: set = set()
    for s in scalars:
        names |= s.parameters
    return names
