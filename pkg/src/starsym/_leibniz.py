"""Shared kernel for the normal-ordered Leibniz product.

    sigma(P o Q) = sum_alpha hbar^|alpha| / alpha! * d_u^alpha sigma(P) . d_x^alpha sigma(Q)

All three symbol algebras use it; they differ only in how the auxiliary
grading (nothing for W, s-depth for SW, t-degree for TW) combines, which the
caller supplies as ``combine(a1, a2) -> (aux, integer_weight) | None``.

Entries are tuples ``(level, aux, exponents, param_monomial, coefficient)``
where ``level`` is the hbar key j of hbar^{-j}.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import comb

from .poly import falling
from .scalar import mono_mul


@lru_cache(maxsize=None)
def _alpha_terms(b: tuple, g: tuple) -> tuple:
    """All alpha <= min(b, g), each with its integer weight.

    For one index: b!/(b-a)! * g!/(g-a)! / a! = falling(b, a) * C(g, a).
    """
    out = []
    for alpha in product(*(range(min(bi, gi) + 1) for bi, gi in zip(b, g))):
        w = 1
        for bi, gi, ai in zip(b, g, alpha):
            w *= falling(bi, ai) * comb(gi, ai)
        out.append((alpha, w, sum(alpha)))
    return tuple(out)


def leibniz(n: int, left, right, combine, keep_level=None) -> dict:
    """Star product of two entry lists; returns ``{(level, aux, exps, pm): coeff}``.

    ``keep_level(level)`` may reject output levels known to be outside the
    caller's exactness window, which saves work but never changes kept cells.
    """
    out: dict = {}
    for j1, a1, e1, p1, c1 in left:
        x1, b = e1[:n], e1[n:]
        for j2, a2, e2, p2, c2 in right:
            combined = combine(a1, a2)
            if combined is None:
                continue
            aux, w0 = combined
            g, u2 = e2[:n], e2[n:]
            c12 = c1 * c2 * w0
            pm = mono_mul(p1, p2)
            for alpha, w, size in _alpha_terms(b, g):
                level = j1 + j2 - size
                if keep_level is not None and not keep_level(level, aux):
                    continue
                exps = tuple(xi + gi - ai for xi, gi, ai in zip(x1, g, alpha)) + \
                    tuple(bi - ai + vi for bi, ai, vi in zip(b, alpha, u2))
                key = (level, aux, exps, pm)
                v = out.get(key, 0) + c12 * w
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
    return out
