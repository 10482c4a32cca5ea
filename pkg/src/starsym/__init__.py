"""Exact symbol calculus for normal-ordered star products.

Symbols are finite sums of polynomial coefficients in (x, u) indexed by
powers of hbar (key j stands for hbar^{-j}), optionally graded further by
s^{-1} depth or t degree. All arithmetic is over the rationals, extended by
named symbolic parameters.
"""

from .errors import (DimensionError, FiltrationViolation, LowerError, OrderError, ParseError,
                     SingularMatrixError, StarsymError, UnassignedParameter)
from .gevrey import (check_tw_positive_part, coeff_norm, fit_gevrey_tail,
                     formal_counterexample_demo)
from .laplace import (PrecisionWindow, TWSymbol, agree, inverse_laplace, iota_t, laplace, res_t,
                      satisfies_filtration, tw_star)
from .parser import lower, parse_expr, parse_symbol
from .poly import XUPoly, affine_substitute
from .render import render_symbol
from .scalar import ParamScalar
from .serialize import from_json, to_json
from .series import SLaurent, TPoly, s_convolve
from .starexp import (fpi_oscillator, oscillator_closed_form, satisfies_evolution,
                      starexp_ode, starexp_routes, starexp_series, starexp_via_resolvent)
from .swsymbol import SWSymbol, iota, res_s, resolvent, sw_star
from .wsymbol import (MINUS_INFINITY, WSymbol, principal_symbol, w_commutator, w_order,
                      w_star, w_substitute)

__version__ = "0.1.0"
