"""Generalized hypergeometric series pFq in term form."""

from __future__ import annotations

from dataclasses import dataclass

from .config import Trace
from .errors import ZeilbergerNotApplicable
from .expr import (Expr, Num, Symbol, as_expr, div, free_symbols, has_symbol,
                   make_factorial, make_pochhammer, mul, pow_)
from .zeilberger import ZeilbergerResult, sumrecursion

__all__ = ["HyperSpec", "hyperterm", "hyperrecursion"]


@dataclass(frozen=True)
class HyperSpec:
    """Upper parameters, lower parameters and argument of pFq."""

    upper: tuple
    lower: tuple
    x: Expr

    def __init__(self, upper, lower, x):
        upper = tuple(as_expr(a) for a in upper)
        lower = tuple(as_expr(b) for b in lower)
        for b in lower:
            if isinstance(b, Num) and b.value.denominator == 1 and b.value <= 0:
                raise ValueError(f"lower parameter {b} is a nonpositive integer")
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "x", as_expr(x))

    def __str__(self):
        up = ",".join(str(a) for a in self.upper)
        lo = ",".join(str(b) for b in self.lower)
        return f"{len(self.upper)}F{len(self.lower)}({{{up}}},{{{lo}}},{self.x})"


def hyperterm(spec: HyperSpec, k) -> Expr:
    """``prod (a_i)_k / (prod (b_j)_k * k!) * x^k``."""
    K = Symbol(k) if isinstance(k, str) else k
    num = mul(*(make_pochhammer(a, K) for a in spec.upper), pow_(spec.x, K))
    den = mul(*(make_pochhammer(b, K) for b in spec.lower), make_factorial(K))
    return div(num, den)


def hyperrecursion(spec: HyperSpec, n, order: int | None = None, max_order: int = 5,
                   trace: Trace | None = None, direction: str = "down",
                   k: str = "k") -> ZeilbergerResult:
    """Recurrence in ``n`` for ``pFq(upper; lower; x)``."""
    n = n.name if isinstance(n, Symbol) else n
    if has_symbol(spec.x, n):
        raise ZeilbergerNotApplicable(f"the argument {spec.x} depends on {n}")
    if not any(has_symbol(p, n) for p in spec.upper + spec.lower):
        raise ValueError(f"{n} occurs in no parameter")
    names = {n}
    for p in spec.upper + spec.lower + (spec.x,):
        names |= free_symbols(p)
    while k in names:
        k = k + "_"
    return sumrecursion(hyperterm(spec, k), k, n, order=order, max_order=max_order,
                        trace=trace, direction=direction)

