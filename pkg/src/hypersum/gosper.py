"""Gosper's decision procedure for indefinite hypergeometric summation.

The term ratio is written as

    a_k/a_{k-1} = p(k)/p(k-1) * q(k)/r(k)

with gcd(q(k), r(k+j)) = 1 for all j >= 0.  A hypergeometric antidifference
exists exactly when the key equation

    p(k) = q(k+1)*f(k) - r(k)*f(k-1)

has a polynomial solution f, and then g_k = q(k+1)/p(k) * f(k) * a_k.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import Trace, null_trace
from .errors import (GosperNotApplicable, NoClosedForm, NoSolution,
                     NotHypergeometric, PoleInRange)
from .expr import (Expr, Factorial, Gamma, Mul, Num, Pow, Prod, Symbol, add, as_expr,
                   make_prod, mul, pow_, sub, substitute, walk)
from .normalize import (TermRatio, split_rational_factor, term_ratio,
                        to_gamma_product)
from .poly import (Polynomial, RationalFunction, dispersion_set, integer_roots,
                   poly_gcd_raw, solve_linear_system, to_rational)

__all__ = [
    "GosperForm", "Antidifference", "gpp_decompose", "degree_bound", "solve_f",
    "gosper", "gosper_definite", "key_equation_columns",
]


@dataclass
class GosperForm:
    """The certificate ``{p, q, r, f}``; ``f`` is None until solved."""

    p: Polynomial
    q: Polynomial
    r: Polynomial
    var: str
    f: RationalFunction | None = None

    def ratio(self) -> RationalFunction:
        """Reconstruct ``a_k/a_{k-1}``."""
        k = self.var
        return RationalFunction(self.p * self.q, self.p.shift(k, -1) * self.r)

    def residual(self) -> RationalFunction:
        """``p(k) - q(k+1) f(k) + r(k) f(k-1)``; zero for a valid certificate."""
        k, f = self.var, self.f
        return (RationalFunction(self.p) - RationalFunction(self.q.shift(k, 1)) * f
                + RationalFunction(self.r) * f.shift(k, -1))

    def as_exprs(self, factor: bool = True) -> list:
        out = [self.p.to_expr(factor), self.q.to_expr(factor), self.r.to_expr(factor)]
        if self.f is not None:
            out.append(self.f.to_expr(factor))
        return out

    def to_dict(self) -> dict:
        return dict(zip("pqrf", (str(x) for x in self.as_exprs())))


@dataclass
class Antidifference:
    """``g`` with ``g_k - g_{k-1} = a_k`` (down) or ``g_{k+1} - g_k = a_k`` (up)."""

    g: Expr
    var: str
    direction: str
    form: GosperForm
    summand: Expr

    def __str__(self):
        return str(self.g)


def _as_ratio(ratio, var):
    if isinstance(ratio, TermRatio):
        ratio = ratio.to_direction("down").ratio
    names = tuple(sorted(set(ratio.names) | {var}))
    return ratio.num.coerce(names), ratio.den.coerce(names)


def _normalize_form(p, q, r, var):
    c = r.content()
    r, q = r * (1 / c), q * (1 / c)
    if not p.is_zero():
        p = p * (1 / p.content())
    return GosperForm(p, q, r, var)


def gpp_decompose(ratio, var: str) -> GosperForm:
    """Gosper-Petkovsek form of a reduced down ratio ``a_k/a_{k-1}``."""
    q, r = _as_ratio(ratio, var)
    p = Polynomial.const(1, q.names)
    while True:
        js = [j for j in dispersion_set(q, r, var)] if q.degree(var) > 0 and r.degree(var) > 0 else []
        if not js:
            break
        for j in js:
            g = poly_gcd_raw(q, r.shift(var, j))
            if g.degree(var) < 1:
                continue
            q = q.exact_div(g)
            r = r.exact_div(g.shift(var, -j))
            for i in range(j):
                p = p * g.shift(var, -i)
    return _normalize_form(p, q, r, var)


def degree_bound(form: GosperForm, deg_p: int | None = None):
    """Upper bound for ``deg f``, or None when no polynomial solution can exist."""
    k = form.var
    q1 = form.q.shift(k, 1)
    splus, sminus = q1 + form.r, q1 - form.r
    dp = form.p.degree(k) if deg_p is None else deg_p
    dplus, dminus = splus.degree(k), sminus.degree(k)
    if dminus >= dplus:
        bound = dp - dminus
    else:
        bound = dp - dplus + 1
        cm = sminus.coeffs_in(k)
        top = cm[dplus - 1] if 0 <= dplus - 1 < len(cm) else None
        lead = splus.coeffs_in(k)[dplus]
        ell = RationalFunction.const(0) if top is None else RationalFunction(top * -2, lead)
        if ell.is_constant():
            v = ell.constant_value()
            if v.denominator == 1 and v >= 0:
                bound = max(bound, int(v))
    return bound if bound >= 0 else None


def key_equation_columns(form: GosperForm, D: int) -> list:
    """Polynomials ``q(k+1) k^i - r(k) (k-1)^i`` for i = 0..D."""
    k = form.var
    q1 = form.q.shift(k, 1)
    kk = Polynomial.gen(k, q1.names)
    km1 = kk - 1
    cols = []
    pk, pkm1 = Polynomial.const(1, kk.names), Polynomial.const(1, kk.names)
    for _ in range(D + 1):
        cols.append(q1 * pk - form.r * pkm1)
        pk, pkm1 = pk * kk, pkm1 * km1
    return cols


def coefficient_matrix(columns: list, var: str):
    """Rows indexed by powers of ``var``; entry (m, i) is the k^m coefficient of column i."""
    cl = [c.coeffs_in(var) for c in columns]
    height = max((len(c) for c in cl), default=0)
    rows = []
    for m in range(height):
        rows.append([c[m] if m < len(c) else 0 for c in cl])
    return rows


def solve_f(form: GosperForm, D: int) -> RationalFunction:
    """Polynomial ``f`` of degree <= D solving the key equation (free constants zero)."""
    k = form.var
    cols = key_equation_columns(form, D)
    rhs_c = form.p.coeffs_in(k)
    height = max(max((len(c.coeffs_in(k)) for c in cols), default=0), len(rhs_c))
    matrix = coefficient_matrix(cols, k)
    matrix += [[0] * len(cols) for _ in range(height - len(matrix))]
    rhs = [rhs_c[m] if m < len(rhs_c) else 0 for m in range(height)]
    sol = solve_linear_system(matrix, rhs)
    kk = RationalFunction(Polynomial.gen(k, form.q.names))
    f = RationalFunction.const(0)
    for c in reversed(sol):
        f = f * kk + c
    return f


def _absorb_products(rat: RationalFunction, special: Expr, var: str):
    """Move factors ``body(upper+1)`` of the rational part into product ranges."""
    factors = list(special.args) if isinstance(special, Mul) else [special]
    changed = True
    while changed:
        changed = False
        for i, fac in enumerate(factors):
            sign = 1
            node = fac
            if isinstance(fac, Pow) and fac.exp == Num(-1):
                sign, node = -1, fac.base
            if not isinstance(node, Prod):
                continue
            nxt = add(node.upper, Num(1))
            try:
                val = to_rational(substitute(node.body, node.index.name, nxt))
            except Exception:
                continue
            if val.is_constant():
                continue
            target = rat.num if sign == 1 else rat.den
            if not val.den.is_one() or not val.num.divides(target):
                continue
            rat = rat / val if sign == 1 else rat * val
            new = make_prod(node.body, node.index, node.lower, nxt)
            factors[i] = new if sign == 1 else pow_(new, Num(-1))
            changed = True
    return rat, mul(*factors)


def _trace_form(trace, form):
    trace.value("p", form.p.to_expr())
    trace.value("q", form.q.to_expr())
    trace.value("r", form.r.to_expr())


def gosper(a, var, direction: str = "down", trace: Trace | None = None,
           factor: bool = True) -> Antidifference:
    """Hypergeometric antidifference of ``a`` with respect to ``var``.

    Raises :class:`GosperNotApplicable` when the term ratio is not rational
    and :class:`NoClosedForm` when no hypergeometric antidifference exists.
    """
    a = as_expr(a)
    if isinstance(var, Symbol):
        var = var.name
    trace = trace or null_trace()
    try:
        ratio = term_ratio(a, var).ratio
    except NotHypergeometric as exc:
        raise GosperNotApplicable(str(exc)) from None
    trace.value(f"a({var})/a({var}-1)", ratio.to_expr())
    trace.note("Gosper algorithm applicable")
    form = gpp_decompose(ratio, var)
    _trace_form(trace, form)
    D = degree_bound(form)
    trace.value("degreebound", "none" if D is None else D, sep=" := ")
    if D is None:
        raise NoClosedForm("no degree bound")
    try:
        form.f = solve_f(form, D)
    except NoSolution:
        raise NoClosedForm("key equation has no polynomial solution") from None
    trace.value("f", form.f.to_expr())
    trace.note("Gosper algorithm successful")

    rat = RationalFunction(form.q.shift(var, 1)) * form.f / RationalFunction(form.p)
    r0, special = split_rational_factor(a, var)
    rat = rat * r0
    rat, special = _absorb_products(rat, special, var)
    g = mul(rat.to_expr(factor), special)
    if direction == "up":
        g = substitute(g, var, add(Symbol(var), Num(-1)))
    elif direction != "down":
        raise ValueError(f"unknown direction {direction!r}")
    return Antidifference(g, var, direction, form, a)


def _pole_points(rf: RationalFunction, var: str) -> set:
    if rf.den.degree(var) < 1:
        return set()
    return integer_roots(rf.den, var)


def gosper_definite(a, var, m, n, trace: Trace | None = None) -> Expr:
    """``sum(a, var = m..n)`` as ``g(n) - g(m-1)``."""
    if isinstance(var, Symbol):
        var = var.name
    m, n = as_expr(m), as_expr(n)
    anti = gosper(a, var, trace=trace)
    form = anti.form
    if isinstance(m, Num) and isinstance(n, Num):
        cert = RationalFunction(form.q.shift(var, 1)) * form.f / RationalFunction(form.p)
        # poles of the summand's rational factor carry over to g
        cert = cert * split_rational_factor(anti.summand, var)[0]
        lo, hi = int(m.value) - 1, int(n.value)
        bad = sorted(z for z in _pole_points(cert, var) if lo <= z <= hi)
        if bad:
            raise PoleInRange(f"the antidifference has a pole at {var} = {bad[0]}")
    g = anti.g
    upper = substitute(g, var, n)
    lower = substitute(g, var, sub(m, Num(1)))
    if isinstance(m, Num) and _formal_pole(substitute(split_rational_factor(g, var)[1], var,
                                                      sub(m, Num(1)))):
        # g(m-1) = g(m) - a(m) avoids products such as 0*factorial(-1)
        lower = sub(substitute(g, var, m), substitute(anti.summand, var, m))
    return _combine_difference(upper, lower)


def _formal_pole(e: Expr) -> bool:
    for node in walk(e):
        arg = getattr(node, "arg", None)
        if not isinstance(arg, Num) or arg.value.denominator != 1:
            continue
        if (isinstance(node, Factorial) and arg.value < 0) or \
                (isinstance(node, Gamma) and arg.value <= 0):
            return True
    return False


def _combine_difference(upper: Expr, lower: Expr) -> Expr:
    """``upper - lower``, written as ``upper*(1 - lower/upper)`` when that ratio is rational."""
    diff = sub(upper, lower)
    try:
        hi = to_gamma_product(upper).simplify()
        ratio = (to_gamma_product(lower).simplify() / hi).simplify()
    except Exception:
        return diff
    if not ratio.is_rational() or upper == Num(0):
        return diff
    if hi.is_rational():
        return (hi.prefactor - hi.prefactor * ratio.prefactor).to_expr(True)
    r0, special = split_rational_factor(upper, "")
    return mul((r0 * (1 - ratio.prefactor)).to_expr(True), special)
