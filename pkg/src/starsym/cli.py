"""Command-line interface.

    starsym star --target w "u1" "x1"
    starsym starexp "theta*x1*u1" --D 2 --routes all
    starsym oscillator --theta theta --D 6
    starsym laplace "x1*sinv^2" --D 4
    starsym check laws --seed 7

Exit codes: 0 success, 2 parse/lowering error, 3 precondition or dimension
error, 4 a mathematical law failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import checks
from .errors import (DimensionError, FiltrationViolation, LowerError, OrderError, ParseError,
                     SingularMatrixError, StarsymError)
from .laplace import TWSymbol, inverse_laplace, laplace, tw_star
from .parser import infer_n, parse_symbol
from .poly import XUPoly
from .render import render_symbol
from .serialize import to_json
from .starexp import ROUTES, fpi_oscillator, oscillator_closed_form, starexp_routes
from .scalar import ParamScalar
from .swsymbol import sw_star
from .wsymbol import MINUS_INFINITY, WSymbol, w_star

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_LAW = 0, 2, 3, 4

DEFAULTS = {"n": None, "params": "theta", "hbar_min": None, "D": 6, "Ns": 6, "format": "human"}


class LawViolation(Exception):
    pass


def _common_options() -> argparse.ArgumentParser:
    # SUPPRESS so an option given before the subcommand is not reset by the subparser
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n", type=int, default=argparse.SUPPRESS,
                   help="half-dimension (inferred from the largest x/u index if absent)")
    p.add_argument("--params", default=argparse.SUPPRESS,
                   help="comma-separated parameter names (default: theta)")
    p.add_argument("--hbar-min", dest="hbar_min", type=int, default=argparse.SUPPRESS,
                   help="drop hbar levels below this key and mark them unknown")
    p.add_argument("--D", type=int, default=argparse.SUPPRESS, help="t-degree truncation")
    p.add_argument("--Ns", type=int, default=argparse.SUPPRESS, help="s-depth truncation")
    p.add_argument("--format", choices=("human", "json"), default=argparse.SUPPRESS)
    p.add_argument("--config", default=argparse.SUPPRESS,
                   help="JSON file with any of: n, params, hbar_min, D, Ns, format")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="starsym", parents=[common],
                                     description="Exact star-product symbol calculus.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("star", parents=[common], help="star product of two expressions")
    p.add_argument("--target", choices=("w", "sw", "tw"), default="w")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("starexp", parents=[common], help="star-exponential exp(t P / h)")
    p.add_argument("P")
    p.add_argument("--routes", default="all",
                   help="'all' or a comma-separated subset of series,ode,resolvent")

    p = sub.add_parser("oscillator", parents=[common],
                       help="compare exp(t theta x u / h) with its closed forms")
    p.add_argument("--theta", default="theta",
                   help="parameter name or rational value (default: symbolic theta)")

    p = sub.add_parser("laplace", parents=[common], help="Laplace transform SW -> TW")
    p.add_argument("expr")
    p.add_argument("--inverse", action="store_true", help="transform a TW expression back to SW")

    p = sub.add_parser("check", parents=[common], help="run a law suite")
    p.add_argument("suite", choices=sorted(checks.SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--demo", choices=("formal-counterexample",), default=None)
    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    config = dict(DEFAULTS)
    path = getattr(args, "config", None)
    if path:
        with open(path) as fh:
            loaded = json.load(fh)
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        config.update(loaded)
    for key in DEFAULTS:
        if hasattr(args, key):
            config[key] = getattr(args, key)
    params = config["params"]
    if isinstance(params, str):
        params = [p.strip() for p in params.split(",") if p.strip()]
    config["params"] = list(params)
    for key in ("D", "Ns"):
        if config[key] < 0:
            raise OrderError(f"{key} must be >= 0, got {config[key]}")
    return config


# -- output ---------------------------------------------------------------

def window_text(sym) -> str:
    if isinstance(sym, TWSymbol):
        if sym.window.is_exact():
            return "exact"
        return ", ".join(f"t^{d}: j >= {f}" for d, f in enumerate(sym.window.floors)
                         if f != MINUS_INFINITY) + " (other cells exact)"
    return "exact" if sym.j_min == MINUS_INFINITY else f"j >= {sym.j_min}"


def _emit(config: dict, payload: dict, lines: list):
    if config["format"] == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))


def _symbol_lines(sym, label: str | None = None) -> list:
    head = render_symbol(sym)
    return [f"{label}: {head}" if label else head, f"  window: {window_text(sym)}"]


# -- commands -------------------------------------------------------------

def _n_for(config: dict, *sources: str) -> int:
    return config["n"] if config["n"] is not None else infer_n(*sources)


def cmd_star(args, config) -> int:
    n = _n_for(config, args.left, args.right)
    kw = {"D": config["D"], "Ns": config["Ns"], "hbar_min": config["hbar_min"]}
    a = parse_symbol(args.left, args.target, n, config["params"], **kw)
    b = parse_symbol(args.right, args.target, n, config["params"], **kw)
    product = {"w": w_star, "sw": sw_star, "tw": tw_star}[args.target](a, b)
    _emit(config, {"command": "star", "target": args.target, "result": to_json(product)},
          _symbol_lines(product))
    return EXIT_OK


def _routes(spec: str) -> tuple:
    if spec == "all":
        return ROUTES
    chosen = tuple(r.strip() for r in spec.split(",") if r.strip())
    bad = [r for r in chosen if r not in ROUTES]
    if bad or not chosen:
        raise ParseError(f"unknown route(s) {', '.join(bad) or '(none)'}; choose from "
                         f"{', '.join(ROUTES)} or all", 1, 1)
    return chosen


def cmd_starexp(args, config) -> int:
    routes = _routes(args.routes)
    n = _n_for(config, args.P)
    P = parse_symbol(args.P, "w", n, config["params"], hbar_min=config["hbar_min"])
    result = starexp_routes(P, config["D"], routes)
    computed = result.computed()
    payload = {"command": "starexp", "P": to_json(P), "D": config["D"],
               "routes": {name: to_json(E) for name, E in computed.items()},
               "agreement": result.agreement,
               "agree_window": [None if f == MINUS_INFINITY else f
                                for f in result.agree_window.floors]}
    first = next(iter(computed.values()))
    lines = _symbol_lines(first)
    lines.append(f"  routes: {', '.join(computed)}; agreement: {str(result.agreement).lower()}")
    if not result.agreement:
        for name, E in computed.items():
            lines += _symbol_lines(E, name)
    _emit(config, payload, lines)
    if not result.agreement:
        raise LawViolation("star-exponential routes disagree inside the shared window")
    return EXIT_OK


def _theta_value(spec: str):
    try:
        return Fraction(spec)
    except ValueError:
        if not spec.isidentifier():
            raise ParseError(f"--theta must be a parameter name or a rational, got {spec!r}", 1, 1)
        return spec


def cmd_oscillator(args, config) -> int:
    D = config["D"]
    theta = _theta_value(args.theta)
    coeff = theta if isinstance(theta, Fraction) else ParamScalar.param(theta)
    P = WSymbol.from_poly(XUPoly.x(1, 1) * XUPoly.u(1, 1)).scale(coeff)
    closed = oscillator_closed_form(theta, D)
    result = starexp_routes(P, D)
    verdicts = {f"{name}_matches_closed_form": E == closed
                for name, E in result.computed().items()}
    fpi = fpi_oscillator(theta, D, starexp=result.series)
    verdicts["routes_agree"] = result.agreement
    verdicts["fpi_identity"] = bool(fpi.verified)
    payload = {"command": "oscillator", "theta": str(theta), "D": D,
               "starexp": to_json(result.series), "closed_form": to_json(closed),
               "verdicts": verdicts}
    lines = _symbol_lines(result.series, "starexp")
    lines += [f"{name}: {str(ok).lower()}" for name, ok in verdicts.items()]
    _emit(config, payload, lines)
    if not all(verdicts.values()):
        raise LawViolation("oscillator identities failed")
    return EXIT_OK


def cmd_laplace(args, config) -> int:
    n = _n_for(config, args.expr)
    kw = {"D": config["D"], "Ns": config["Ns"], "hbar_min": config["hbar_min"]}
    if args.inverse:
        out = inverse_laplace(parse_symbol(args.expr, "tw", n, config["params"], **kw))
    else:
        out = laplace(parse_symbol(args.expr, "sw", n, config["params"], **kw), config["D"])
    _emit(config, {"command": "laplace", "inverse": args.inverse, "result": to_json(out)},
          _symbol_lines(out))
    return EXIT_OK


def cmd_check(args, config) -> int:
    kw = {"demo": args.demo} if args.suite == "gevrey" else {}
    if args.demo and args.suite != "gevrey":
        raise OrderError("--demo formal-counterexample belongs to the gevrey suite")
    results = checks.SUITES[args.suite](args.seed, args.cases, **kw)
    passed = all(r["passed"] for r in results)
    payload = {"command": "check", "suite": args.suite, "seed": args.seed,
               "cases": args.cases, "passed": passed, "results": results}
    lines = [f"{'PASS' if r['passed'] else 'FAIL'}  {r['name']} ({r['cases']} cases)"
             + ("" if r["detail"] == "ok" else f": {r['detail']}") for r in results]
    _emit(config, payload, lines)
    return EXIT_OK if passed else EXIT_LAW


COMMANDS = {"star": cmd_star, "starexp": cmd_starexp, "oscillator": cmd_oscillator,
            "laplace": cmd_laplace, "check": cmd_check}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = resolve_config(args)
        return COMMANDS[args.command](args, config)
    except (ParseError, LowerError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (OrderError, DimensionError, FiltrationViolation, SingularMatrixError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except LawViolation as exc:
        print(f"law violation: {exc}", file=sys.stderr)
        return EXIT_LAW
    except (OSError, ValueError, StarsymError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
