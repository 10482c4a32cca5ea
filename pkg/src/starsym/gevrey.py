"""Growth diagnostics for hbar-series coefficients.

The analytic classes require |a_j| <= C eps^{-j} (-j)! for j < 0. On a finite
window we measure r_j = (|a_j| / (-j)!)^{1/(-j)} and report its supremum.
Every verdict is decided with exact rationals; k-th roots are bracketed by
rational intervals, which collapse to a point when the root is rational.

The sup over a compact set is replaced by the coefficient norm (sum of
absolute values of coefficients), an upper bound for the sup over the closed
unit polydisc.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Mapping

import gmpy2

from .laplace import TWSymbol, filtration_violations, laplace
from .poly import XUPoly
from .scalar import ParamScalar
from .swsymbol import SWSymbol

NORM_NOTE = "coefficient norm: sum of |coefficients|, a bound for sup over the unit polydisc"
ROOT_BITS = 64


def coeff_norm(p, values: Mapping[str, object] | None = None) -> Fraction:
    """Sum of absolute values of the rational coefficients after substituting parameters."""
    values = values or {}
    if isinstance(p, XUPoly):
        p = p.evaluate_params(values)
        return sum((abs(c) for _, c in p.flat_items()), Fraction(0))
    if isinstance(p, ParamScalar):
        return abs(p.evaluate(values))
    return abs(Fraction(p))


def root_bounds(q: Fraction, k: int, bits: int = ROOT_BITS) -> tuple:
    """Rational ``(lo, hi)`` with lo <= q^{1/k} <= hi; lo == hi when the root is rational."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("root of a negative number")
    if k == 1 or q == 0:
        return q, q
    rn, exact_n = gmpy2.iroot(gmpy2.mpz(q.numerator), k)
    rd, exact_d = gmpy2.iroot(gmpy2.mpz(q.denominator), k)
    if exact_n and exact_d:
        r = Fraction(int(rn), int(rd))
        return r, r
    scale = 1 << (k * bits)
    num = q.numerator * scale
    lo_int, _ = gmpy2.iroot(gmpy2.mpz(num // q.denominator), k)
    hi_int, _ = gmpy2.iroot(gmpy2.mpz(-(-num // q.denominator)), k)
    return Fraction(int(lo_int), 1 << bits), Fraction(int(hi_int) + 1, 1 << bits)


@dataclass
class GevreyReport:
    per_level_ratio: dict
    fitted_epsilon: Fraction | None
    fitted_C: Fraction | None
    threshold: Fraction
    verdict: bool
    norm: str = NORM_NOTE

    @property
    def exact(self) -> bool:
        return all(lo == hi for lo, hi in self.per_level_ratio.values())


def fit_gevrey_tail(levels: Mapping[int, object], values: Mapping[str, object] | None = None,
                    threshold=Fraction(2)) -> GevreyReport:
    """Fit eps (and a witness C) to the negative levels of an hbar-series.

    ``fitted_epsilon`` is the largest upper bracket of r_j; the verdict passes
    iff it does not exceed ``threshold``.
    """
    threshold = Fraction(threshold)
    tail = {j: a for j, a in levels.items() if j < 0}
    if not tail:
        raise ValueError("empty window: need at least one level j < 0")
    ratios = {}
    norms = {}
    for j in sorted(tail, reverse=True):
        k = -j
        norms[j] = coeff_norm(tail[j], values)
        ratios[j] = root_bounds(norms[j] / factorial(k), k)
    eps = max(hi for _, hi in ratios.values())
    if eps:
        C = max(norms[j] / (eps ** -j * factorial(-j)) for j in norms)
    else:
        C = Fraction(0)
    return GevreyReport(ratios, eps, C, threshold, eps <= threshold)


@dataclass
class TWPositiveReport:
    structural_pass: bool
    violations: list
    decay_ratios: dict = field(default_factory=dict)
    fitted_R: Fraction | None = None
    fitted_M: Fraction | None = None
    norm: str = NORM_NOTE


def check_tw_positive_part(F: TWSymbol, values: Mapping[str, object] | None = None
                           ) -> TWPositiveReport:
    """Vanishing order at t = 0 above the declared order (exact), plus a fit of
    |f_{j, t^{j-m}}| (j-m)! <= M R^{j-m} over the stored levels (diagnostic)."""
    bad = filtration_violations(F)
    ratios = {}
    weights = {}
    for j, f in sorted(F.coeffs.items()):
        k = j - F.m
        if k <= 0 or k > F.D:
            continue
        weights[j] = coeff_norm(f[k], values) * factorial(k)
        ratios[j] = root_bounds(weights[j], k)
    report = TWPositiveReport(not bad, bad, ratios)
    if ratios:
        R = max(hi for _, hi in ratios.values())
        report.fitted_R = R
        report.fitted_M = max(w / R ** (j - F.m) for j, w in weights.items()) if R else Fraction(0)
    return report


# -- the formal-case counterexample ---------------------------------------

FAMILIES: dict = {
    "factorial-squared": lambda j: Fraction(factorial(-j) ** 2),
    "factorial": lambda j: Fraction(factorial(-j)),
    "one": lambda j: Fraction(1),
}


@dataclass
class DivergenceReport:
    family: str
    depth: int
    t_coefficients: list
    root_test: dict
    divergent: bool
    radius_estimate: tuple | None
    laplace_consistent: bool
    slope: Fraction

    @property
    def verdict(self) -> str:
        return "divergent" if self.divergent else "convergent"


def formal_counterexample_demo(depth: int = 8, family: str | Callable = "factorial-squared",
                               slope=Fraction(1, 8)) -> DivergenceReport:
    """Laplace-transform f = sum_{j <= 0} c_j hbar^{-j} / (s - 1) and inspect the
    hbar^0 coefficient sum_n c_{-n} t^n / n! with a root test.

    Divergence is reported when n-th roots of the t-coefficients climb at an
    average rate of at least ``slope`` per step over the second half of the
    window, the finite-window signature of a zero radius of convergence.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    name = family if isinstance(family, str) else getattr(family, "__name__", "custom")
    c = FAMILIES[family] if isinstance(family, str) else family
    slope = Fraction(slope)
    one = XUPoly.const(0, 1)
    # 1/(s - 1) = sum_k s^{-k-1}; levels below -depth are truncated away
    cells = {(j, k): one.scale(c(j)) for j in range(-depth, 1) for k in range(depth + 1)}
    f = SWSymbol.from_cells(0, depth, cells, j_min=-depth)
    image = laplace(f, depth)
    level0 = image[0]
    coeffs = [level0[d].constant_term().constant_value() for d in range(depth + 1)]
    expected = [c(-d) / factorial(d) for d in range(depth + 1)]
    roots = {d: root_bounds(abs(coeffs[d]), d) for d in range(1, depth + 1)}
    half = max(1, depth // 2)
    if half < depth:
        rise = roots[depth][0] - roots[half][1]
        divergent = rise >= slope * (depth - half)
    else:
        divergent = False
    radius = None
    if not divergent:
        lo, hi = roots[depth]
        radius = (1 / hi if hi else None, 1 / lo if lo else None)
    return DivergenceReport(name, depth, coeffs, roots, divergent, radius,
                            coeffs == expected, slope)
