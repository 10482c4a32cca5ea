"""Independent reference computations built on sympy.

Nothing here calls the package's product code: symbols are converted to
sympy expressions and products are recomputed by composing differential
operators, by symbolic integration or by Taylor expansion.
"""

import sympy as sp

H, T, S = sp.symbols("h t s")


def xvars(n):
    return sp.symbols(f"x1:{n + 1}")


def uvars(n):
    return sp.symbols(f"u1:{n + 1}")


def entry_expr(n, j, e, pm, c):
    x, u = xvars(n), uvars(n)
    term = sp.Rational(c.numerator, c.denominator) * H ** (-j)
    for name, k in pm:
        term *= sp.Symbol(name) ** k
    for i in range(n):
        term *= x[i] ** e[i] * u[i] ** e[n + i]
    return term


def to_sympy(sym, aux=None):
    """Total symbol as a commutative sympy expression; aux is "t" or "s"."""
    out = sp.Integer(0)
    for j, a, e, pm, c in sym.entries():
        term = entry_expr(sym.n, j, e, pm, c)
        if aux == "t":
            term *= T ** a
        elif aux == "s":
            term *= S ** (-a - 1)
        out += term
    return sp.expand(out)


def apply_op(expr, f, n):
    """Normal-ordered quantization: x^a u^b acts as x^a (h d/dx)^b."""
    x, u = xvars(n), uvars(n)
    poly = sp.Poly(sp.expand(expr), *u)
    out = sp.Integer(0)
    for exps, coeff in poly.terms():
        g = f
        for i, b in enumerate(exps):
            if b:
                g = sp.diff(g, x[i], b) * H ** b
        out += coeff * g
    return sp.expand(out)


def symbol_of_operator(op_on_exp, n):
    """Read the normal-ordered symbol of an operator from its action on
    exp(<k, x>): the result is symbol(x, h k) exp(<k, x>)."""
    x, u = xvars(n), uvars(n)
    k = sp.symbols(f"k1:{n + 1}")
    f = sp.exp(sum(ki * xi for ki, xi in zip(k, x)))
    g = sp.expand(op_on_exp(f)).replace(sp.exp, lambda *_: 1)
    return sp.expand(g.subs({ki: ui / H for ki, ui in zip(k, u)}, simultaneous=True))


def star_oracle(a, b, n):
    """Symbol of Op(a) Op(b) for commutative sympy expressions a, b in x, u, h (and t)."""
    return symbol_of_operator(lambda f: apply_op(a, apply_op(b, f, n), n), n)


def truncate_t(expr, D):
    expr = sp.expand(expr)
    return sp.expand(sum(expr.coeff(T, d) * T ** d for d in range(D + 1)))


def oscillator_taylor(D, theta=sp.Symbol("theta")):
    """Taylor expansion in t of exp((e^{theta t} - 1) x1 u1 / h) through t^D."""
    x, u = sp.symbols("x1 u1")
    expr = sp.exp((sp.exp(theta * T) - 1) * x * u / H)
    return sp.expand(sp.series(expr, T, 0, D + 1).removeO())


def fpi_taylor(j_max, D, theta=sp.Symbol("theta")):
    """exp(e^{theta t} x1 u1 / h) through (x1 u1 / h)^{j_max} and t^D."""
    x, u = sp.symbols("x1 u1")
    X = sp.Symbol("X")
    expr = sum(sp.exp(k * theta * T) * X ** k / sp.factorial(k) for k in range(j_max + 1))
    expr = sp.series(expr, T, 0, D + 1).removeO()
    return sp.expand(expr.subs(X, x * u / H))


def laplace_of_t_power(n):
    """Classical Laplace transform of t^n / n!, i.e. s^{-n-1}."""
    return sp.laplace_transform(T ** n / sp.factorial(n), T, S, noconds=True)


def convolution_integral(n, m):
    """(t^n/n!) * (t^m/m!) under the Laplace convolution, integrated directly."""
    tau = sp.Symbol("tau")
    return sp.integrate(tau ** n / sp.factorial(n) * (T - tau) ** m / sp.factorial(m), (tau, 0, T))
