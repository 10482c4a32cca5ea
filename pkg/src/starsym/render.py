"""Canonical ASCII printer. Output reparses with :mod:`starsym.parser`.

Terms are listed leading hbar-level first; within a term the factor order is
coefficient, parameters, h, t, x_i, u_i, sinv.
"""

from __future__ import annotations


def _power(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def _term_factors(n, level, kind, aux, exps, pm):
    factors = [_power(name, e) for name, e in pm]
    if level:
        factors.append(_power("h", -level))
    if kind == "t" and aux:
        factors.append(_power("t", aux))
    factors += [_power(f"x{i + 1}", e) for i, e in enumerate(exps[:n]) if e]
    factors += [_power(f"u{i + 1}", e) for i, e in enumerate(exps[n:]) if e]
    if kind == "s":
        factors.append(_power("sinv", aux + 1))
    return factors


def _sort_key(n, level, aux, exps, pm):
    return (-level, aux, -sum(exps), tuple(-e for e in exps), pm)


def render_terms(n: int, kind: str, entries) -> str:
    """``entries``: iterable of (level, aux, exps, pm, coeff); kind in {"w", "s", "t"}."""
    rows = sorted(entries, key=lambda r: _sort_key(n, r[0], r[1], r[2], r[3]))
    if not rows:
        return "0"
    out = []
    for level, aux, exps, pm, c in rows:
        factors = _term_factors(n, level, kind, aux, exps, pm)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def render_poly(p) -> str:
    return render_terms(p.n, "w", [(0, 0, e, pm, c) for (e, pm), c in p.flat_items()])


def render_symbol(sym) -> str:
    from .laplace import TWSymbol
    from .swsymbol import SWSymbol

    if isinstance(sym, TWSymbol):
        kind = "t"
    elif isinstance(sym, SWSymbol):
        kind = "s"
    else:
        kind = "w"
    return render_terms(sym.n, kind, sym.entries())
