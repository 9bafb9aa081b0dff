"""Hypergeometric term recognition, term ratios and Gamma simplification.

A product of rational functions, powers, factorials, Gamma terms, binomial
coefficients, Pochhammer symbols and finite products is brought into a
:class:`GammaProduct`.  Gamma arguments that differ by an integer are merged
onto the smallest member of their class using ``Gamma(a+1) = a*Gamma(a)``,
which decides rationality of integer-linear Gamma term ratios.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial as _ifact

import flint

from .errors import NotGammaRepresentable, NotHypergeometric, NotRational
from .expr import (Add, Binomial, Expr, Factorial, Gamma, Mul, Num, Pochhammer,
                   Pow, Prod, SumRef, Symbol, ONE, ZERO, add, as_expr, expand,
                   has_symbol, make_factorial, make_gamma, mul,
                   pow_, rebuild, sub, substitute, substitute_many)
from .poly import RationalFunction, to_rational

__all__ = [
    "GammaProduct", "TermRatio", "to_gamma_product", "simplify_gamma",
    "simplify_combinatorial", "gamma_to_factorial", "term_ratio",
    "split_rational_factor",
]


def _split_const(e: Expr):
    """``e = rest + c`` with c a rational number."""
    if isinstance(e, Num):
        return ZERO, e.value
    if isinstance(e, Add) and isinstance(e.args[0], Num):
        rest = e.args[1:]
        return (rest[0] if len(rest) == 1 else Add(rest)), e.args[0].value
    return e, Fraction(0)


def _rf_one():
    return RationalFunction.const(1)


def _try_rational(e: Expr):
    try:
        return to_rational(e)
    except (NotRational, ZeroDivisionError):
        return None


def _check_integer_linear(arg: Expr, var: str | None, what: str):
    if var is None or not has_symbol(arg, var):
        return
    rf = _try_rational(arg)
    if rf is None or not rf.den.is_constant() or rf.num.degree(var) != 1:
        raise NotGammaRepresentable(f"{what} argument {arg} is not integer-linear in {var}")
    lead = rf.num.coeffs_in(var)[1] * (1 / rf.den.constant_value())
    if not lead.is_constant() or lead.constant_value().denominator != 1:
        raise NotGammaRepresentable(f"{what} argument {arg} is not integer-linear in {var}")


def _prime_powers(v: Fraction, exp: Expr):
    """Split ``v^exp`` (v rational, exp symbolic) into prime-base powers."""
    out = []
    if v < 0:
        out.append((Num(-1), exp))
        v = -v
    for part, sign in ((v.numerator, 1), (v.denominator, -1)):
        if part == 1:
            continue
        for p, e in flint.fmpz(part).factor():
            out.append((Num(int(p)), expand(mul(Num(sign * int(e)), exp))))
    return out


def _prod_key(p: Prod):
    body = substitute_many(p.body, {p.index.name: Symbol("%j")})
    rest, c = _split_const(p.upper)
    return (body, p.lower, rest), c


class GammaProduct:
    """``prefactor * prod(base^exp) * prod(Gamma(arg)^m) * prod(Prod^m)``."""

    __slots__ = ("prefactor", "powers", "gammas", "prods")

    def __init__(self, prefactor=None, powers=None, gammas=None, prods=None):
        self.prefactor = prefactor if prefactor is not None else _rf_one()
        self.powers = dict(powers or {})
        self.gammas = dict(gammas or {})
        self.prods = dict(prods or {})

    @classmethod
    def rational(cls, rf) -> GammaProduct:
        return cls(prefactor=rf)

    def copy(self) -> GammaProduct:
        return GammaProduct(self.prefactor, self.powers, self.gammas, self.prods)

    def is_rational(self) -> bool:
        return not (self.powers or self.gammas or self.prods)

    def __mul__(self, other: GammaProduct) -> GammaProduct:
        out = self.copy()
        out.prefactor = self.prefactor * other.prefactor
        for b, x in other.powers.items():
            out.powers[b] = add(out.powers[b], x) if b in out.powers else x
        for a, m in other.gammas.items():
            out.gammas[a] = out.gammas.get(a, 0) + m
        for p, m in other.prods.items():
            out.prods[p] = out.prods.get(p, 0) + m
        out._drop_zeros()
        return out

    def __pow__(self, m: int) -> GammaProduct:
        if m == 0:
            return GammaProduct()
        return GammaProduct(
            self.prefactor ** m,
            {b: expand(mul(Num(m), x)) for b, x in self.powers.items()},
            {a: k * m for a, k in self.gammas.items()},
            {p: k * m for p, k in self.prods.items()},
        )

    def inverse(self) -> GammaProduct:
        return self ** -1

    def __truediv__(self, other: GammaProduct) -> GammaProduct:
        return self * other.inverse()

    def _drop_zeros(self):
        self.powers = {b: x for b, x in self.powers.items() if x != ZERO}
        self.gammas = {a: m for a, m in self.gammas.items() if m}
        self.prods = {p: m for p, m in self.prods.items() if m}

    # -- simplification ----------------------------------------------------
    def simplify(self) -> GammaProduct:
        """Merge Gamma and product classes, fold rational powers."""
        out = GammaProduct(self.prefactor)
        pre = self.prefactor

        classes: dict = {}
        for a, m in self.gammas.items():
            rest, c = _split_const(a)
            classes.setdefault((rest, c - (c.numerator // c.denominator)), []).append((c, m))
        for (rest, _frac), members in classes.items():
            if rest == Num(0) and _frac == 0:
                # integer constants: fold Gamma(c) for c > 0, keep formal poles
                for c, m in members:
                    if c > 0:
                        pre = pre * RationalFunction.const(_ifact(int(c) - 1)) ** m
                    else:
                        out.gammas[Num(c)] = out.gammas.get(Num(c), 0) + m
                continue
            lo = min(c for c, _ in members)
            rep = add(rest, Num(lo))
            total = 0
            for c, m in members:
                shift = int(c - lo)
                if shift:
                    poch = to_rational(mul(*(add(rep, Num(i)) for i in range(shift))))
                    pre = pre * poch ** m
                total += m
            if total == 0:
                continue
            if isinstance(rep, Num) and rep.value.denominator == 1 and rep.value > 0:
                pre = pre * RationalFunction.const(_ifact(int(rep.value) - 1)) ** total
                continue
            out.gammas[rep] = total
        out.gammas = {a: m for a, m in out.gammas.items() if m}

        for b, x in self.powers.items():
            if x == ZERO:
                continue
            if isinstance(x, Num) and x.value.denominator == 1:
                rf = _try_rational(b)
                if rf is not None:
                    pre = pre * rf ** int(x.value)
                    continue
            out.powers[b] = x

        pclasses: dict = {}
        for p, m in self.prods.items():
            key, c = _prod_key(p)
            pclasses.setdefault((key, c - (c.numerator // c.denominator)), []).append((c, m, p))
        extra = GammaProduct()
        for _key, members in pclasses.items():
            lo_c, _m, lo_p = min(members, key=lambda t: t[0])
            total = 0
            for c, m, p in members:
                shift = int(c - lo_c)
                for i in range(1, shift + 1):
                    val = substitute(lo_p.body, lo_p.index.name, add(lo_p.upper, Num(i)))
                    extra = extra * to_gamma_product(val) ** m
                total += m
            if total:
                out.prods[lo_p] = total
        out.prefactor = pre
        if extra.is_rational():
            out.prefactor = pre * extra.prefactor
            return out
        return (out * extra).simplify()

    # -- conversion ------------------------------------------------------
    def to_expr(self, factor: bool = True) -> Expr:
        parts = [self.prefactor.to_expr(factor)]
        for b, x in self.powers.items():
            parts.append(pow_(b, x))
        for a, m in self.gammas.items():
            parts.append(pow_(make_gamma(a), Num(m)))
        for p, m in self.prods.items():
            parts.append(pow_(p, Num(m)))
        return mul(*parts)

    def __repr__(self):
        return f"GammaProduct<{self.to_expr()}>"


def _gp_gamma(arg: Expr, m: int = 1) -> GammaProduct:
    arg = expand(arg)
    return GammaProduct(gammas={arg: m})


def to_gamma_product(e, var: str | None = None) -> GammaProduct:
    """Rewrite ``e`` as a :class:`GammaProduct`.

    With ``var`` given, every Gamma argument must be integer-linear in
    ``var``; otherwise :class:`NotGammaRepresentable` is raised.
    """
    e = as_expr(e)
    if isinstance(e, (Num, Symbol)):
        return GammaProduct.rational(to_rational(e))
    if isinstance(e, SumRef):
        raise NotHypergeometric("sum(...) is not a term")
    if isinstance(e, Mul):
        acc = GammaProduct()
        for f in e.args:
            acc = acc * to_gamma_product(f, var)
        return acc
    if isinstance(e, Add):
        rf = _try_rational(e)
        if rf is not None:
            return GammaProduct.rational(rf)
        return _similar_sum(e, var)
    if isinstance(e, Pow):
        b, x = e.base, e.exp
        if isinstance(x, Num) and x.value.denominator == 1:
            return to_gamma_product(b, var) ** int(x.value)
        if isinstance(b, Num):
            return GammaProduct(powers=dict(_prime_powers(b.value, expand(x))))
        return GammaProduct(powers={b: expand(x)})
    if isinstance(e, Factorial):
        _check_integer_linear(e.arg, var, "factorial")
        return _gp_gamma(add(e.arg, ONE))
    if isinstance(e, Gamma):
        _check_integer_linear(e.arg, var, "gamma")
        return _gp_gamma(e.arg)
    if isinstance(e, Binomial):
        _check_integer_linear(e.top, var, "binomial")
        _check_integer_linear(e.bottom, var, "binomial")
        return (_gp_gamma(add(e.top, ONE)) * _gp_gamma(add(e.bottom, ONE), -1)
                * _gp_gamma(add(sub(e.top, e.bottom), ONE), -1))
    if isinstance(e, Pochhammer):
        _check_integer_linear(e.base, var, "pochhammer")
        _check_integer_linear(e.count, var, "pochhammer")
        return _gp_gamma(add(e.base, e.count)) * _gp_gamma(e.base, -1)
    if isinstance(e, Prod):
        return GammaProduct(prods={e: 1})
    raise NotHypergeometric(f"cannot interpret {e}")


def _similar_sum(e: Add, var):
    """``t0 * sum(t_i/t0)`` when every ratio is rational, else an opaque factor."""
    parts = [to_gamma_product(t, var) for t in e.args]
    base = parts[0].simplify()
    total = RationalFunction.const(0)
    inv = base.inverse()
    for p in parts:
        r = (p * inv).simplify()
        if not r.is_rational():
            return GammaProduct(powers={e: ONE})
        total = total + r.prefactor
    out = base.copy()
    out.prefactor = base.prefactor * total
    return out


def simplify_gamma(e) -> Expr:
    """Apply ``Gamma(a+1) = a*Gamma(a)`` until no two arguments differ by an integer."""
    return to_gamma_product(e).simplify().to_expr()


def simplify_combinatorial(e) -> Expr:
    """Convert to Gamma form and simplify; rational results come back factored."""
    return simplify_gamma(e)


def gamma_to_factorial(e) -> Expr:
    """Rewrite every ``gamma(x)`` as ``factorial(x - 1)``."""
    e = as_expr(e)
    if isinstance(e, Gamma):
        return make_factorial(expand(sub(gamma_to_factorial(e.arg), ONE)))
    if not e.args or isinstance(e, (Num, Symbol, SumRef)):
        return e
    return rebuild(e, [gamma_to_factorial(a) for a in e.args])


class TermRatio:
    """Reduced rational ratio ``a_k/a_{k-1}`` (down) or ``a_{k+1}/a_k`` (up)."""

    __slots__ = ("ratio", "var", "direction")

    def __init__(self, ratio: RationalFunction, var: str, direction: str = "down"):
        self.ratio = ratio
        self.var = var
        self.direction = direction

    def to_direction(self, direction: str) -> TermRatio:
        if direction == self.direction:
            return self
        shift = 1 if direction == "up" else -1
        return TermRatio(self.ratio.shift(self.var, shift), self.var, direction)

    def __repr__(self):
        return f"TermRatio({self.direction}: {self.ratio})"


def term_ratio(e, var: str, direction: str = "down") -> TermRatio:
    """Exact term ratio; raises :class:`NotHypergeometric` when it is not rational."""
    e = as_expr(e)
    if isinstance(var, Symbol):
        var = var.name
    gp = to_gamma_product(e, var)
    if not has_symbol(e, var):
        return TermRatio(RationalFunction.const(1), var, direction)
    shifted = to_gamma_product(substitute(e, var, add(Symbol(var), Num(-1))), var)
    r = (gp / shifted).simplify()
    if not r.is_rational():
        raise NotHypergeometric(f"the term ratio of {e} is not rational in {var}")
    if r.prefactor.is_zero():
        raise NotHypergeometric("the term vanishes identically")
    return TermRatio(r.prefactor, var, "down").to_direction(direction)


def split_rational_factor(e, var: str):
    """Split ``e`` into ``(rational factor, remaining factor)``.

    The rational factor collects every multiplicand that is a rational
    function; the remainder keeps the special functions untouched.
    """
    e = as_expr(e)
    factors = e.args if isinstance(e, Mul) else (e,)
    rat, rest = [], []
    for f in factors:
        (rat if _try_rational(f) is not None else rest).append(f)
    r = to_rational(mul(*rat)) if rat else _rf_one()
    return r, mul(*rest)
