"""Expression front end: tokenizer, Pratt parser and lowering to symbols.

Grammar (EBNF)::

    expr     = term , { ( "+" | "-" ) , term } ;
    term     = unary , { "*" , unary } ;
    unary    = "-" , unary | power ;
    power    = primary , [ "^" , exponent ] ;
    exponent = INT | "-" , INT | "(" , [ "-" ] , INT , ")" ;   (* negative only on h *)
    primary  = NUMBER | IDENT | "(" , expr , ")" ;
    NUMBER   = INT , [ "/" , INT ] | INT , "." , INT ;          (* no spaces inside *)
    IDENT    = x<i> | u<i> | t | h | sinv | parameter name ;

``h`` is hbar, ``sinv`` is 1/s (``ℏ`` and ``ς`` are accepted as aliases).
Division is not an operator; ``3/4`` is only read as a rational literal.
Juxtaposition is not multiplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import LowerError, ParseError
from .laplace import PrecisionWindow, TWSymbol
from .poly import XUPoly
from .scalar import mono_mul
from .swsymbol import SWSymbol
from .wsymbol import MINUS_INFINITY, WSymbol

RESERVED = {"t", "h", "sinv"}
ALIASES = {"ℏ": "h", "ς": "sinv"}

# -- AST ------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: tuple


@dataclass(frozen=True)
class Atom:
    """kind is one of "x", "u", "t", "h", "sinv", "param"; index is 1-based for x/u."""
    kind: str
    name: str
    index: int
    pos: tuple


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: tuple


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    pos: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: tuple


# -- tokens ---------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # NUMBER, IDENT, OP, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+) |
    (?P<nl>\n) |
    (?P<number>\d+(?:/\d+|\.\d+)?) |
    (?P<ident>[A-Za-z_][A-Za-z0-9_]*|ℏ|ς) |
    (?P<op>[-+*^()])
""", re.VERBOSE)


def tokenize(src: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        col = pos - line_start + 1
        if not m:
            ch = src[pos]
            if ch == "/":
                raise ParseError("division is not part of the grammar "
                                 "(only integer/integer rational literals)", line, col)
            raise ParseError(f"unexpected character {ch!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind != "ws":
            tokens.append(Token(kind.upper(), text, line, col))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


# -- parser ---------------------------------------------------------------

_INFIX = {"+": 10, "-": 10, "*": 20}
_PREFIX_MINUS = 30
MAX_EXPONENT = 256


class Parser:
    def __init__(self, src: str, n: int, parameters: Sequence[str] = ()):
        self.tokens = tokenize(src)
        self.i = 0
        self.n = n
        self.parameters = set(parameters)
        clash = self.parameters & (RESERVED | {"x", "u"})
        if clash:
            raise ValueError(f"parameter names clash with reserved atoms: {sorted(clash)}")

    @property
    def current(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "EOF":
            self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.current
        return ParseError(message, tok.line, tok.col)

    def expect(self, text):
        tok = self.current
        if tok.text != text or tok.kind == "EOF":
            found = "end of input" if tok.kind == "EOF" else repr(tok.text)
            raise self.error(f"expected {text!r}, found {found}")
        return self.advance()

    def parse(self):
        if self.current.kind == "EOF":
            raise self.error("empty expression")
        node = self.expression(0)
        tok = self.current
        if tok.kind != "EOF":
            if tok.text == ")":
                raise self.error("unbalanced parenthesis ')'")
            raise self.error(f"unexpected {tok.text!r} (multiplication must be written with '*')")
        return node

    def expression(self, min_bp: int):
        left = self.prefix()
        while True:
            tok = self.current
            bp = _INFIX.get(tok.text) if tok.kind == "OP" else None
            if bp is None or bp <= min_bp:
                return left
            self.advance()
            right = self.expression(bp)
            left = BinOp(tok.text, left, right, (tok.line, tok.col))

    def prefix(self):
        tok = self.current
        if tok.kind == "OP" and tok.text == "-":
            self.advance()
            return Neg(self.expression(_PREFIX_MINUS), (tok.line, tok.col))
        return self.power()

    def power(self):
        base = self.primary()
        tok = self.current
        if tok.kind == "OP" and tok.text == "^":
            self.advance()
            exponent = self.exponent(base, tok)
            node = Pow(base, exponent, (tok.line, tok.col))
            if self.current.text == "^" and self.current.kind == "OP":
                raise self.error("chained exponents are ambiguous; use parentheses")
            return node
        return base

    def exponent(self, base, caret: Token) -> int:
        paren = self.current.kind == "OP" and self.current.text == "("
        if paren:
            self.advance()
        negative = self.current.kind == "OP" and self.current.text == "-"
        if negative:
            self.advance()
        tok = self.current
        if tok.kind != "NUMBER" or not tok.text.isdigit():
            raise self.error("malformed exponent: expected a nonnegative integer literal")
        self.advance()
        if paren:
            self.expect(")")
        value = int(tok.text)
        if value > MAX_EXPONENT:
            raise self.error(f"exponent {value} exceeds the limit {MAX_EXPONENT}", tok)
        if negative:
            if not (isinstance(base, Atom) and base.kind == "h"):
                raise self.error("malformed exponent: only h admits a negative exponent", caret)
            value = -value
        return value

    def primary(self):
        tok = self.current
        if tok.kind == "NUMBER":
            self.advance()
            try:
                value = Fraction(tok.text)
            except ZeroDivisionError:
                raise self.error("rational literal with zero denominator", tok) from None
            return Num(value, (tok.line, tok.col))
        if tok.kind == "IDENT":
            self.advance()
            return self.atom(tok)
        if tok.kind == "OP" and tok.text == "(":
            self.advance()
            node = self.expression(0)
            if self.current.text != ")" or self.current.kind != "OP":
                raise self.error("unbalanced parenthesis: missing ')'")
            self.advance()
            return node
        if tok.kind == "EOF":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {tok.text!r}")

    def atom(self, tok: Token) -> Atom:
        name = ALIASES.get(tok.text, tok.text)
        pos = (tok.line, tok.col)
        if name in RESERVED:
            return Atom(name, name, 0, pos)
        if name in self.parameters:
            return Atom("param", name, 0, pos)
        m = re.fullmatch(r"([xu])([1-9][0-9]*)", name)
        if m:
            i = int(m.group(2))
            if i > self.n:
                raise ParseError(f"unknown identifier {name!r}: index exceeds n = {self.n}",
                                 tok.line, tok.col)
            return Atom(m.group(1), name, i, pos)
        raise ParseError(f"unknown identifier {name!r}", tok.line, tok.col)


def parse_expr(src: str, n: int, parameters: Sequence[str] = ()):
    """Parse ``src``; every failure is a ParseError carrying line and column."""
    parser = Parser(src, n, parameters)
    try:
        return parser.parse()
    except RecursionError:
        raise parser.error("expression nested too deeply") from None


# -- lowering -------------------------------------------------------------
# An expansion maps (level, t_degree, sinv_power, exps, param_monomial) -> Fraction.


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (j1, d1, p1, e1, m1), c1 in a.items():
        for (j2, d2, p2, e2, m2), c2 in b.items():
            key = (j1 + j2, d1 + d2, p1 + p2, tuple(x + y for x, y in zip(e1, e2)),
                   mono_mul(m1, m2))
            v = out.get(key, 0) + c1 * c2
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def _add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + sign * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def expand(node, n: int) -> dict:
    zero = (0,) * (2 * n)
    if isinstance(node, Num):
        return {(0, 0, 0, zero, ()): node.value} if node.value else {}
    if isinstance(node, Atom):
        if node.kind == "x" or node.kind == "u":
            e = [0] * (2 * n)
            e[node.index - 1 + (n if node.kind == "u" else 0)] = 1
            return {(0, 0, 0, tuple(e), ()): Fraction(1)}
        if node.kind == "h":
            return {(-1, 0, 0, zero, ()): Fraction(1)}
        if node.kind == "t":
            return {(0, 1, 0, zero, ()): Fraction(1)}
        if node.kind == "sinv":
            return {(0, 0, 1, zero, ()): Fraction(1)}
        return {(0, 0, 0, zero, ((node.name, 1),)): Fraction(1)}
    if isinstance(node, Neg):
        return {k: -c for k, c in expand(node.operand, n).items()}
    if isinstance(node, BinOp):
        left, right = expand(node.left, n), expand(node.right, n)
        if node.op == "+":
            return _add(left, right)
        if node.op == "-":
            return _add(left, right, -1)
        return _mul(left, right)
    if isinstance(node, Pow):
        if isinstance(node.base, Atom) and node.base.kind == "h":
            return {(-node.exponent, 0, 0, zero, ()): Fraction(1)}
        base = expand(node.base, n)
        out = {(0, 0, 0, zero, ()): Fraction(1)}
        for _ in range(node.exponent):
            out = _mul(out, base)
        return out
    raise TypeError(f"not an expression node: {node!r}")


def _cells(expansion: dict, n: int) -> dict:
    cells: dict = {}
    for (j, d, p, e, pm), c in expansion.items():
        cells.setdefault((j, d, p), {})[(e, pm)] = c
    return {key: XUPoly._raw(n, terms) for key, terms in cells.items()}


def lower(ast, target: str, n: int, *, D: int = 8, Ns: int = 8, hbar_min=None,
          order: int | None = None):
    """Lower an AST to a WSymbol ("w"), SWSymbol ("sw") or TWSymbol ("tw").

    ``hbar_min`` truncates the result to levels >= hbar_min (marking it
    inexact below). For "tw" the declared order defaults to the least m for
    which the t-vanishing condition holds.
    """
    cells = _cells(expand(ast, n), n)
    floor = MINUS_INFINITY if hbar_min is None else hbar_min
    if target == "w":
        for (j, d, p) in cells:
            if d:
                raise LowerError("t is not allowed in a W symbol (W symbols are t-independent)")
            if p:
                raise LowerError("sinv is only allowed in SW symbols")
        return WSymbol(n, {j: poly for (j, _, _), poly in cells.items()}, floor)
    if target == "sw":
        out = {}
        for (j, d, p), poly in cells.items():
            if d:
                raise LowerError("t is not allowed in an SW symbol (use target tw)")
            if p == 0:
                raise LowerError("SW terms need a factor sinv: terms entire in s "
                                 "represent the zero class")
            if p - 1 > Ns:
                raise LowerError(f"sinv^{p} exceeds the s-truncation depth Ns = {Ns}")
            out[j, p - 1] = poly
        return SWSymbol.from_cells(n, Ns, out, floor)
    if target == "tw":
        out = {}
        for (j, d, p), poly in cells.items():
            if p:
                raise LowerError("sinv is not allowed in a TW symbol (use target sw)")
            if d > D:
                raise LowerError(f"t^{d} exceeds the t-truncation degree D = {D}")
            out[j, d] = poly
        if order is None:
            order = max((j - d for (j, d) in out), default=0)
        window = PrecisionWindow.uniform(floor, D)
        return TWSymbol.from_cells(n, D, order, out, window)
    raise ValueError(f"unknown target {target!r}")


def parse_symbol(src: str, target: str, n: int, parameters: Sequence[str] = (), **kwargs):
    return lower(parse_expr(src, n, parameters), target, n, **kwargs)


def infer_n(*sources: str) -> int:
    """Largest x/u index used, at least 1."""
    best = 1
    for src in sources:
        for m in re.finditer(r"\b[xu]([1-9][0-9]*)\b", src):
            best = max(best, int(m.group(1)))
    return best
