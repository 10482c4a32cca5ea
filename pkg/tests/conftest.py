from fractions import Fraction
from itertools import product

from hypothesis import settings, strategies as st

from starsym import SWSymbol, WSymbol, XUPoly

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

fractions = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def exponents(n, max_degree=2):
    monomials = [e for e in product(range(max_degree + 1), repeat=2 * n) if sum(e) <= max_degree]
    return st.sampled_from(monomials)


@st.composite
def polys(draw, n=1, max_degree=2, max_terms=4):
    terms = draw(st.dictionaries(exponents(n, max_degree), fractions, max_size=max_terms))
    return XUPoly(n, {(tuple(e[:n]), tuple(e[n:])): c for e, c in terms.items()})


@st.composite
def wsymbols(draw, n=1, levels=(-2, 0)):
    coeffs = draw(st.dictionaries(st.integers(*levels), polys(n), max_size=3))
    return WSymbol(n, coeffs)


@st.composite
def swsymbols(draw, n=1, Ns=4, levels=(-1, 0)):
    cells = draw(st.dictionaries(st.tuples(st.integers(*levels), st.integers(0, Ns)),
                                 polys(n, max_terms=2), max_size=3))
    return SWSymbol.from_cells(n, Ns, cells)


def q(a, b=1):
    return Fraction(a, b)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
