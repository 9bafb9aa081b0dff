"""Gosper and Zeilberger summation of hypergeometric terms.

>>> from hypersum import parse, gosper, sumrecursion
>>> str(gosper(parse("k*factorial(k)"), "k"))
'(k + 1)*factorial(k)'
>>> str(sumrecursion(parse("binomial(n,k)"), "k", "n"))
'2*sum(n - 1) - sum(n)'
"""

from .config import Config, Trace
from .errors import (ArityError, GosperNotApplicable, HypersumError, NoClosedForm,
                     OrderExceeded, ParseError, ZeilbergerNotApplicable)
from .expr import Expr, Substitution, substitute
from .gosper import Antidifference, GosperForm, gosper, gosper_definite, gpp_decompose
from .hyper import HyperSpec, hyperrecursion, hyperterm
from .normalize import (gamma_to_factorial, simplify_combinatorial, simplify_gamma,
                        term_ratio, to_gamma_product)
from .parser import parse
from .poly import Polynomial, RationalFunction, dispersion_set, poly_gcd
from .printer import to_str
from .verify import (check_antidifference, check_recurrence, finite_sum,
                     recurrences_equal)
from .zeilberger import Recurrence, first_order_closed_form, sumrecursion, to_direction

__all__ = [
    "Config", "Trace", "ArityError", "GosperNotApplicable", "HypersumError",
    "NoClosedForm", "OrderExceeded", "ParseError", "ZeilbergerNotApplicable",
    "Expr", "Substitution", "substitute", "Antidifference", "GosperForm",
    "gosper", "gosper_definite", "gpp_decompose", "HyperSpec", "hyperrecursion",
    "hyperterm", "gamma_to_factorial", "simplify_combinatorial", "simplify_gamma",
    "term_ratio", "to_gamma_product", "parse", "Polynomial", "RationalFunction",
    "dispersion_set", "poly_gcd", "to_str", "check_antidifference",
    "check_recurrence", "finite_sum", "recurrences_equal", "Recurrence",
    "first_order_closed_form", "sumrecursion", "to_direction",
]

__version__ = "0.1.0"
