"""JSON encoding of core values (schema version 1).

A symbol is encoded as::

    {"schema": 1, "type": "w" | "sw" | "tw", "n": int, "order": int | null,
     "terms": [{"hbar": j, "t": d?, "sdepth": k?,
                "monomial": {"x1": a, ..., "u1": b, ...},
                "coeff": {"num": "...", "den": "...", "params": {"theta": e}}}],
     ...truncation fields...}

Integers inside coefficients are decimal strings so consumers never lose
precision. ``null`` in a floor position means "exact at every level".
"""

from __future__ import annotations

import json
from fractions import Fraction

from .laplace import PrecisionWindow, TWSymbol
from .poly import XUPoly
from .scalar import ParamScalar
from .swsymbol import SWSymbol
from .wsymbol import MINUS_INFINITY, WSymbol

SCHEMA = 1


def _floor_out(f):
    return None if f == MINUS_INFINITY else int(f)


def _floor_in(f):
    return MINUS_INFINITY if f is None else int(f)


def _coeff(c: Fraction, pm) -> dict:
    return {"num": str(c.numerator), "den": str(c.denominator), "params": dict(pm)}


def _monomial(n: int, e) -> dict:
    out = {f"x{i + 1}": a for i, a in enumerate(e[:n]) if a}
    out.update({f"u{i + 1}": b for i, b in enumerate(e[n:]) if b})
    return out


def _term_sort_key(term):
    return (-term["hbar"], term.get("t", term.get("sdepth", 0)),
            sorted(term["monomial"].items()), sorted(term["coeff"]["params"].items()))


def _terms(n: int, entries, aux_name=None) -> list:
    terms = []
    for j, aux, e, pm, c in entries:
        term = {"hbar": j, "monomial": _monomial(n, e), "coeff": _coeff(c, pm)}
        if aux_name:
            term[aux_name] = aux
        terms.append(term)
    return sorted(terms, key=_term_sort_key)


def to_json(value) -> dict:
    if isinstance(value, WSymbol):
        return {"schema": SCHEMA, "type": "w", "n": value.n, "order": _floor_out(value.m),
                "j_min": _floor_out(value.j_min), "terms": _terms(value.n, value.entries())}
    if isinstance(value, SWSymbol):
        return {"schema": SCHEMA, "type": "sw", "n": value.n, "order": _floor_out(value.m),
                "j_min": _floor_out(value.j_min), "Ns": value.Ns,
                "terms": _terms(value.n, value.entries(), "sdepth")}
    if isinstance(value, TWSymbol):
        return {"schema": SCHEMA, "type": "tw", "n": value.n, "order": value.m, "D": value.D,
                "window": [_floor_out(f) for f in value.window.floors],
                "terms": _terms(value.n, value.entries(), "t")}
    if isinstance(value, XUPoly):
        entries = [(0, 0, e, pm, c) for (e, pm), c in value.flat_items()]
        return {"schema": SCHEMA, "type": "poly", "n": value.n,
                "terms": [{k: v for k, v in t.items() if k != "hbar"}
                          for t in _terms(value.n, entries)]}
    if isinstance(value, ParamScalar):
        return {"schema": SCHEMA, "type": "scalar",
                "terms": sorted((_coeff(c, pm) for pm, c in value.items()),
                                key=lambda t: sorted(t["params"].items()))}
    raise TypeError(f"cannot serialise {type(value).__name__}")


def _parse_term(n: int, term: dict):
    e = [0] * (2 * n)
    for name, a in term["monomial"].items():
        kind, idx = name[0], int(name[1:])
        if kind not in "xu" or not 1 <= idx <= n:
            raise ValueError(f"bad monomial variable {name!r}")
        e[idx - 1 + (n if kind == "u" else 0)] = int(a)
    coeff = term["coeff"]
    c = Fraction(int(coeff["num"]), int(coeff["den"]))
    pm = tuple(sorted((k, int(v)) for k, v in coeff.get("params", {}).items() if v))
    return tuple(e), pm, c


def _cells(n: int, terms, aux_name=None) -> dict:
    grouped: dict = {}
    for term in terms:
        e, pm, c = _parse_term(n, term)
        key = (term.get("hbar", 0), term.get(aux_name, 0) if aux_name else 0)
        bucket = grouped.setdefault(key, {})
        bucket[(e, pm)] = bucket.get((e, pm), 0) + c
    return {key: XUPoly._raw(n, {k: v for k, v in b.items() if v}) for key, b in grouped.items()}


def from_json(data: dict):
    if data.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {data.get('schema')!r}")
    kind = data["type"]
    if kind == "scalar":
        return ParamScalar({tuple(t["params"].items()): Fraction(int(t["num"]), int(t["den"]))
                            for t in data["terms"]})
    n = int(data["n"])
    if kind == "poly":
        cells = _cells(n, data["terms"])
        return cells.get((0, 0), XUPoly.zero(n))
    if kind == "w":
        cells = _cells(n, data["terms"])
        return WSymbol(n, {j: p for (j, _), p in cells.items()}, _floor_in(data["j_min"]))
    if kind == "sw":
        return SWSymbol.from_cells(n, int(data["Ns"]), _cells(n, data["terms"], "sdepth"),
                                   _floor_in(data["j_min"]))
    if kind == "tw":
        window = PrecisionWindow(tuple(_floor_in(f) for f in data["window"]))
        return TWSymbol.from_cells(n, int(data["D"]), int(data["order"]),
                                   _cells(n, data["terms"], "t"), window)
    raise ValueError(f"unknown type {kind!r}")


def dumps(value, **kwargs) -> str:
    return json.dumps(to_json(value), sort_keys=True, **kwargs)


def loads(text: str):
    return from_json(json.loads(text))


def fraction_json(q) -> dict | None:
    if q is None:
        return None
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}
