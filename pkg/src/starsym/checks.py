"""Executable law suites behind ``starsym check``.

Each check returns a plain dict ``{"name", "passed", "cases", "detail"}`` so
the CLI can emit it as JSON unchanged. All randomness flows from one seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import factorial

from . import randgen
from .errors import FiltrationViolation
from .gevrey import coeff_norm, fit_gevrey_tail, formal_counterexample_demo
from .laplace import (PrecisionWindow, TWSymbol, agree, inverse_laplace, iota_t, laplace, res_t,
                      satisfies_filtration, tw_star)
from .poly import XUPoly, affine_substitute, poly_derive
from .starexp import oscillator_closed_form, satisfies_evolution, starexp_routes, starexp_series
from .swsymbol import SWSymbol, iota, res_s, sw_star
from .wsymbol import (WSymbol, principal_symbol, w_commutator, w_star, w_substitute)


def _result(name, failures, cases, detail=""):
    return {"name": name, "passed": not failures, "cases": cases,
            "detail": detail or ("; ".join(failures[:3]) if failures else "ok")}


def _run(name, cases, body):
    failures = []
    for i in range(cases):
        msg = body(i)
        if msg:
            failures.append(f"case {i}: {msg}")
    return _result(name, failures, cases)


# -- laws -----------------------------------------------------------------

def check_poly_ring(rng, cases):
    def body(_):
        n = rng.randint(1, 2)
        a, b, c = (randgen.random_poly(rng, n, params=("theta",)) for _ in range(3))
        if (a * b) * c != a * (b * c):
            return "associativity"
        if a * b != b * a or a + b != b + a:
            return "commutativity"
        if a * (b + c) != a * b + a * c:
            return "distributivity"
        alpha = tuple(rng.randint(0, 2) for _ in range(n))
        beta = tuple(rng.randint(0, 2) for _ in range(n))
        zero = (0,) * n
        if poly_derive(poly_derive(a, alpha, zero), zero, beta) != \
                poly_derive(poly_derive(a, zero, beta), alpha, zero):
            return "derivatives do not commute"
    return _run("xupoly ring laws and commuting derivatives", cases, body)


def _pairing(a, b):
    n = a.n
    out = XUPoly.zero(n)
    for i in range(n):
        e = tuple(int(k == i) for k in range(n))
        out = out + poly_derive(a, e, (0,) * n) * poly_derive(b, (0,) * n, e)
    return out


def check_affine(rng, cases):
    def body(_):
        n = 2
        A = randgen.random_invertible_matrix(rng, n)
        a, b = randgen.random_poly(rng, n), randgen.random_poly(rng, n)
        sa, sb = affine_substitute(a, A), affine_substitute(b, A)
        if affine_substitute(a * b, A) != sa * sb:
            return "substitution is not multiplicative"
        if _pairing(sa, sb) != affine_substitute(_pairing(a, b), A):
            return "<d_u, d_x> pairing not invariant"
        P, Q = randgen.random_wsymbol(rng, n), randgen.random_wsymbol(rng, n)
        if w_star(w_substitute(P, A), w_substitute(Q, A)) != w_substitute(w_star(P, Q), A):
            return "star product not affine covariant"
    return _run("affine covariance", cases, body)


def check_w_laws(rng, cases):
    def body(_):
        n = rng.randint(1, 2)
        P, Q, R = (randgen.random_wsymbol(rng, n, params=("theta",)) for _ in range(3))
        if w_star(w_star(P, Q), R) != w_star(P, w_star(Q, R)):
            return "associativity"
        one = WSymbol.one(n)
        if w_star(one, P) != P or w_star(P, one) != P:
            return "unit"
        PQ = w_star(P, Q)
        if PQ.m > P.m + Q.m:
            return "filtration"
        mp, sp = principal_symbol(P)
        mq, sq = principal_symbol(Q)
        if sp * sq and principal_symbol(PQ) != (mp + mq, sp * sq):
            return "principal symbol not multiplicative"
        if w_commutator(P, Q).m > P.m + Q.m - 1:
            return "commutator does not drop order"
        c = WSymbol(n, {rng.randint(-1, 1): XUPoly.const(n, Fraction(rng.randint(1, 5), 3))})
        if w_star(c, P) != w_star(P, c):
            return "scalars not central"
    return _run("W star: associativity, unit, filtration, principal symbol", cases, body)


def check_ccr(rng, cases):
    failures = []
    n = 2
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            ui, xj = WSymbol.from_poly(XUPoly.u(n, i)), WSymbol.from_poly(XUPoly.x(n, j))
            expected = WSymbol.hbar(n) if i == j else WSymbol(n)
            if w_commutator(ui, xj) != expected:
                failures.append(f"[u{i}, x{j}]")
    return _result("canonical commutation [u_i, x_j] = delta_ij h", failures, n * n)


def check_sw_laws(rng, cases, Ns=4):
    def body(_):
        n = rng.randint(1, 2)
        P, Q, R = (randgen.random_swsymbol(rng, n, Ns, max_depth=2) for _ in range(3))
        if sw_star(sw_star(P, Q), R) != sw_star(P, sw_star(Q, R)):
            return "associativity"
        unit = iota(WSymbol.one(n), Ns)
        if sw_star(unit, P) != P or sw_star(P, unit) != P:
            return "unit"
        A, B = randgen.random_wsymbol(rng, n), randgen.random_wsymbol(rng, n)
        if res_s(iota(A, Ns)) != A:
            return "res o iota != id"
        if sw_star(iota(A, Ns), iota(B, Ns)) != iota(w_star(A, B), Ns):
            return "iota not multiplicative"
        if res_s(sw_star(P, Q)) != w_star(res_s(P), res_s(Q)):
            return "res not multiplicative"
    return _run("SW star: associativity, unit, iota/res morphisms", cases, body)


def check_tw_laws(rng, cases, D=3):
    def body(_):
        n = rng.randint(1, 2)
        F, G, H = (randgen.random_twsymbol(rng, n, D, m=rng.randint(-1, 1), low=-1,
                                           density=0.25) for _ in range(3))
        if tw_star(tw_star(F, G), H) != tw_star(F, tw_star(G, H)):
            return "associativity"
        one = TWSymbol.one(n, D)
        if tw_star(one, F) != F or tw_star(F, one) != F:
            return "unit"
        A, B = randgen.random_wsymbol(rng, n), randgen.random_wsymbol(rng, n)
        if res_t(iota_t(A, D)) != A:
            return "res_t o iota_t != id"
        if tw_star(iota_t(A, D), iota_t(B, D)) != iota_t(w_star(A, B), D):
            return "iota_t not multiplicative"
        if res_t(tw_star(F, G)) != w_star(res_t(F), res_t(G)):
            return "res_t not multiplicative"
    return _run("TW star: associativity, unit, iota_t/res_t morphisms", cases, body)


def check_starexp(rng, cases, D=4):
    def body(_):
        n = rng.randint(1, 2)
        P = randgen.random_wsymbol(rng, n, levels=(-2, 0), max_degree=2)
        routes = starexp_routes(P, D)
        if not routes.agreement:
            return f"routes disagree for P = {P}"
        for name, E in routes.computed().items():
            if not satisfies_evolution(E, P):
                return f"{name} route violates the evolution law"
            if not satisfies_filtration(E):
                return f"{name} route is not in TW(0)"
    return _run("star-exponential routes agree and solve the evolution law", cases, body)


def check_oscillator(rng, cases, D=6):
    P = WSymbol.from_poly(XUPoly.param(1, "theta") * XUPoly.x(1, 1) * XUPoly.u(1, 1))
    ok = starexp_series(P, D) == oscillator_closed_form("theta", D)
    return _result(f"oscillator closed form through t^{D}", [] if ok else ["mismatch"], 1)


def run_laws(seed: int = 0, cases: int = 20) -> list:
    rng = random.Random(seed)
    return [
        check_poly_ring(rng, cases),
        check_affine(rng, cases),
        check_w_laws(rng, cases),
        check_ccr(rng, cases),
        check_sw_laws(rng, cases),
        check_tw_laws(rng, cases),
        check_starexp(rng, max(1, cases // 2)),
        check_oscillator(rng, 1),
    ]


# -- laplace --------------------------------------------------------------

def check_laplace_morphism(rng, cases, Ns=8, D=8):
    def body(_):
        n = rng.randint(1, 2)
        f = randgen.random_swsymbol(rng, n, Ns, max_depth=3)
        g = randgen.random_swsymbol(rng, n, Ns, max_depth=3)
        if not agree(laplace(sw_star(f, g), D), tw_star(laplace(f, D), laplace(g, D))):
            return "L(f * g) != L(f) L(g)"
    return _run("Laplace transform is an algebra morphism", cases, body)


def check_round_trip(rng, cases, Ns=6):
    def body(_):
        n = rng.randint(1, 2)
        f = randgen.random_swsymbol(rng, n, Ns)
        if inverse_laplace(laplace(f, Ns)) != f:
            return "inverse_laplace o laplace != id"
        F = randgen.random_twsymbol(rng, n, Ns, m=rng.randint(-1, 1))
        if not agree(laplace(inverse_laplace(F), Ns, order=F.m), F):
            return "laplace o inverse_laplace != id"
    return _run("Laplace round trips", cases, body)


def check_violation_rejected(rng, cases):
    bad = TWSymbol.from_cells(1, 3, 0, {(1, 0): XUPoly.const(1, 1)})
    try:
        inverse_laplace(bad)
    except FiltrationViolation:
        return _result("inverse_laplace rejects a filtration violator", [], 1)
    return _result("inverse_laplace rejects a filtration violator", ["accepted"], 1)


def check_filtration_closure(rng, cases, D=4):
    def body(_):
        n = rng.randint(1, 2)
        F = randgen.random_twsymbol(rng, n, D, m=rng.randint(-1, 1))
        G = randgen.random_twsymbol(rng, n, D, m=rng.randint(-1, 1))
        H = tw_star(F, G)
        if H.m != F.m + G.m or not satisfies_filtration(H):
            return "product leaves TW(m + m')"
        for k in (-1, 1):
            if not satisfies_filtration(F.hbar_shift(k)) or F.hbar_shift(k).m != F.m + k:
                return "hbar shift breaks the filtration"
    return _run("TW filtration closure and hbar shift", cases, body)


def check_windows(rng, cases, D=3):
    """Products of truncated symbols agree with the exact product on the claimed window,
    and with a product recomputed from a floor five levels lower."""
    def body(_):
        n = 1
        F = randgen.random_twsymbol(rng, n, D, m=0, low=-4, density=0.4)
        G = randgen.random_twsymbol(rng, n, D, m=0, low=-4, density=0.4)
        floor = rng.randint(-3, 0)
        cut = PrecisionWindow.uniform(floor, D)
        deeper = PrecisionWindow.uniform(floor - 5, D)
        truncated = tw_star(F.restrict(cut), G.restrict(cut))
        if truncated.window.is_exact():
            return "window unexpectedly exact"
        if not agree(truncated, tw_star(F, G)):
            return "truncated product wrong inside its window"
        if not agree(truncated, tw_star(F.restrict(deeper), G.restrict(deeper))):
            return "disagrees with the lowered-floor recomputation"
        P = randgen.random_wsymbol(rng, n, levels=(-4, 0))
        Q = randgen.random_wsymbol(rng, n, levels=(-4, 0))
        PQ = w_star(P.truncate(floor), Q.truncate(floor))
        if w_star(P, Q).truncate(PQ.j_min) != PQ:
            return "W floor wrong"
    return _run("precision windows validated against exact recomputation", cases, body)


def run_laplace(seed: int = 0, cases: int = 20) -> list:
    rng = random.Random(seed)
    return [
        check_laplace_morphism(rng, cases),
        check_round_trip(rng, cases),
        check_violation_rejected(rng, 1),
        check_filtration_closure(rng, cases),
        check_windows(rng, cases),
    ]


# -- gevrey ---------------------------------------------------------------

def check_norm(rng, cases):
    def body(_):
        n = rng.randint(1, 2)
        p, q = randgen.random_poly(rng, n), randgen.random_poly(rng, n)
        if coeff_norm(p * q) > coeff_norm(p) * coeff_norm(q):
            return "not submultiplicative"
        if coeff_norm(p + q) > coeff_norm(p) + coeff_norm(q):
            return "not subadditive"
    return _run("coefficient norm is sub-additive and sub-multiplicative", cases, body)


def check_gevrey_fits(rng, cases, depth=8):
    failures = []
    sat = {j: Fraction(1, 2) ** -j * factorial(-j) for j in range(-depth, 0)}
    rep = fit_gevrey_tail(sat)
    if rep.fitted_epsilon != Fraction(1, 2) or not rep.verdict:
        failures.append(f"saturating tail fitted {rep.fitted_epsilon}")
    sq = {j: Fraction(factorial(-j) ** 2) for j in range(-depth, 0)}
    if fit_gevrey_tail(sq).verdict:
        failures.append("((-j)!)^2 tail passed")
    eps = [fit_gevrey_tail({j: a for j, a in sq.items() if j >= -k}).fitted_epsilon
           for k in range(1, depth + 1)]
    if any(b < a for a, b in zip(eps, eps[1:])):
        failures.append("fitted epsilon decreased when deepening the window")
    return _result("Gevrey tail fits", failures, 3)


def check_gevrey_closure(rng, cases, depth=6):
    def body(_):
        eps0 = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        n = 1
        levels = {}
        for j in range(-depth, 1):
            e = [rng.randint(0, 1) for _ in range(2 * n)]
            levels[j] = XUPoly(n, {(tuple(e[:n]), tuple(e[n:])): eps0 ** -j * factorial(-j)})
        P = WSymbol(n, levels)
        Q = WSymbol(n, dict(levels))
        PQ = w_star(P, Q)
        window = {j: PQ[j] for j in range(-depth, 0)}
        fitted = fit_gevrey_tail(window, threshold=10 ** 6).fitted_epsilon
        if fitted > 4 * eps0 + 2:
            return f"fitted eps {float(fitted):.3g} vs eps0 {eps0}"
    return _run("Gevrey class closed under the star product (window evidence)", cases, body)


def run_gevrey(seed: int = 0, cases: int = 20, demo: str | None = None) -> list:
    rng = random.Random(seed)
    results = [check_norm(rng, cases), check_gevrey_fits(rng, 1),
               check_gevrey_closure(rng, max(1, cases // 4))]
    if demo == "formal-counterexample":
        rep = formal_counterexample_demo(8, "factorial-squared")
        ok = rep.divergent and rep.laplace_consistent
        results.append(_result("formal counterexample diverges (expected)",
                               [] if ok else ["no divergence detected"], 1,
                               f"verdict: {rep.verdict}; t-coefficients "
                               f"{[str(c) for c in rep.t_coefficients]}"))
    return results


SUITES = {"laws": run_laws, "laplace": run_laplace, "gevrey": run_gevrey}
