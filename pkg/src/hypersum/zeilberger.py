"""Zeilberger's fast algorithm (creative telescoping).

For s(n) = sum_k F(n,k) we look for rational sigma_j(n), not all zero, such
that T(n,k) = sum_{j=0..J} sigma_j F(n-j,k) has a hypergeometric
antidifference G in k.  Summing over k then gives the recurrence
sum_j sigma_j s(n-j) = 0.

Writing F(n-j,k)/F(n,k) = A_j/B_j and L = lcm(B_j), we get T = P(k)/L(k) F
with P = sum_j sigma_j A_j L/B_j linear in the sigma_j.  The Gosper
machinery runs on the ratio of T with P folded into the polynomial p, so
the sigma_j join the coefficients of f as unknowns of one linear system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .config import Trace, null_trace
from .errors import (DegenerateRecurrence, NotHypergeometric, NotRational,
                     OrderExceeded, ZeilbergerNotApplicable)
from .expr import (Add, Expr, Mul, Num, SumRef, Symbol, add, as_expr,
                   expand, make_pochhammer, make_prod, mul, pow_, substitute)
from .gosper import (GosperForm, coefficient_matrix, degree_bound,
                     gpp_decompose, key_equation_columns)
from .normalize import term_ratio
from .poly import (Polynomial, RationalFunction, common_names, nullspace,
                   poly_gcd_raw, poly_lcm, to_rational)

__all__ = [
    "Recurrence", "ZeilbergerCertificate", "ZeilbergerResult", "sumrecursion",
    "first_order_closed_form", "to_direction", "sigma_name",
]


def sigma_name(j: int) -> str:
    return f"zb_sigma({j})"


def _rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction(x)
    return RationalFunction.const(x)


def _lead_sign(p: Polynomial) -> int:
    return 1 if p.leading_coefficient() > 0 else -1


class Recurrence:
    """Holonomic recurrence ``sum_j coeffs[j] * sum(var + top - j) = 0``.

    ``top`` is 0 for a downward recurrence (terms sum(n)..sum(n-J)) and J
    for an upward one (terms sum(n+J)..sum(n)).  ``coeffs[0]`` therefore
    always multiplies the highest-argument term.  Normalized coefficients
    are coprime integer polynomials, and the term farthest from ``sum(n)``
    has a positive leading coefficient.
    """

    __slots__ = ("coeffs", "var", "direction")

    def __init__(self, coeffs, var: str, direction: str = "down", normalize: bool = True):
        if direction not in ("down", "up"):
            raise ValueError(f"unknown direction {direction!r}")
        self.var = var
        self.direction = direction
        if normalize:
            coeffs = _normalize_coeffs([_rf(c) for c in coeffs], var, direction)
        self.coeffs = list(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def top(self) -> int:
        return 0 if self.direction == "down" else self.order

    def shifts(self) -> list:
        return [self.top - j for j in range(len(self.coeffs))]

    def terms(self):
        """Pairs ``(shift, coefficient)`` from the highest argument down."""
        return list(zip(self.shifts(), self.coeffs))

    def to_expr(self, factor: bool = True) -> Expr:
        parts = []
        for s, c in self.terms():
            if not c.is_zero():
                coeff, factors = c.parts(factor)
                parts.append(mul(Num(coeff), *factors, SumRef(self.var, s)))
        return add(*parts)

    def __str__(self):
        return str(self.to_expr())

    def __repr__(self):
        return f"Recurrence<{self}>"

    def __eq__(self, other):
        if not isinstance(other, Recurrence):
            return NotImplemented
        a, b = to_direction(self, "down"), to_direction(other, "down")
        return a.var == b.var and len(a.coeffs) == len(b.coeffs) and all(
            x == y for x, y in zip(a.coeffs, b.coeffs))

    def __hash__(self):
        return hash(tuple(str(c) for c in to_direction(self, "down").coeffs))

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "direction": self.direction,
            "var": self.var,
            "coefficients": [str(c.to_expr()) for c in self.coeffs],
            "shifts": self.shifts(),
        }

    @classmethod
    def from_expr(cls, e, var: str | None = None, direction: str | None = None) -> Recurrence:
        """Read ``sum_j c_j * sum(var + s_j)`` (understood as ``= 0``)."""
        e = expand(as_expr(e))
        buckets: dict = {}
        for t in (e.args if isinstance(e, Add) else (e,)):
            factors = t.args if isinstance(t, Mul) else (t,)
            refs = [f for f in factors if isinstance(f, SumRef)]
            if len(refs) != 1:
                raise NotRational(f"term {t} must contain exactly one sum(...) factor")
            ref = refs[0]
            if var is None:
                var = ref.var
            elif ref.var != var:
                raise NotRational(f"mixed recurrence variables {var} and {ref.var}")
            rest = mul(*[f for f in factors if f is not ref])
            buckets[ref.shift] = buckets.get(ref.shift, RationalFunction.const(0)) + to_rational(rest)
        if not buckets:
            raise DegenerateRecurrence("empty recurrence")
        hi, lo = max(buckets), min(buckets)
        zero = RationalFunction.const(0)
        coeffs = [buckets.get(s, zero) for s in range(hi, lo - 1, -1)]
        if direction is None:
            direction = "up" if lo == 0 and hi > 0 else "down"
        top = 0 if direction == "down" else hi - lo
        if hi != top:
            coeffs = [c.shift(var, top - hi) for c in coeffs]
        return cls(coeffs, var, direction)


def _normalize_coeffs(coeffs, var, direction):
    # drop vanishing outer terms; a leading gap shifts the recurrence
    lead_zeros = 0
    while coeffs and coeffs[0].is_zero():
        coeffs.pop(0)
        lead_zeros += 1
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if not coeffs:
        raise DegenerateRecurrence("all recurrence coefficients vanish")
    if lead_zeros and direction == "down":
        coeffs = [c.shift(var, lead_zeros) for c in coeffs]
    names = common_names(*coeffs)
    den = Polynomial.const(1, names)
    for c in coeffs:
        den = poly_lcm(den, c.den)
    polys = [(c * den).num.coerce(names) for c in coeffs]
    g = None
    for p in polys:
        if not p.is_zero():
            g = p if g is None else poly_gcd_raw(g, p)
    polys = [p.exact_div(g) for p in polys]
    nums = [p.content() for p in polys if not p.is_zero()]
    cont = Fraction(reduce(gcd, (abs(c.numerator) for c in nums)),
                    reduce(lcm, (c.denominator for c in nums)))
    # the term farthest from sum(n) gets a positive leading coefficient
    sign = _lead_sign(polys[-1] if direction == "down" else polys[0])
    scale = 1 / (cont * sign)
    return [RationalFunction(p * scale) for p in polys]


def to_direction(rec: Recurrence, direction: str) -> Recurrence:
    """Rewrite a recurrence as downward or upward by shifting ``var``."""
    if direction == rec.direction:
        return rec
    J = rec.order
    shift = J if direction == "up" else -J
    return Recurrence([c.shift(rec.var, shift) for c in rec.coeffs], rec.var, direction)


def first_order_closed_form(rec: Recurrence, s0) -> Expr:
    """Solve a first-order recurrence with ``s(0) = s0``.

    ``p(n) s(n-1) + q(n) s(n) = 0`` gives
    ``s(n) = s0 * prod_{m=1..n} (-p(m)/q(m))``, written with Pochhammer
    symbols for the factors linear in n and a formal product otherwise.
    """
    rec = to_direction(rec, "down")
    if rec.order != 1:
        raise ValueError("first_order_closed_form needs a recurrence of order 1")
    n = rec.var
    q, p = rec.coeffs
    if q.is_zero():
        raise DegenerateRecurrence("leading coefficient vanishes")
    ratio = -p / q
    parts = [as_expr(s0)]
    const = Fraction(1)
    for poly, sign in ((ratio.num, 1), (ratio.den, -1)):
        c, facs = poly.factor()
        const *= c ** sign
        for f, mult in facs:
            e = sign * mult
            if f.degree(n) == 0:
                parts.append(pow_(f.to_expr(), mul(Num(e), Symbol(n))))
            elif f.degree(n) == 1:
                cs = f.coeffs_in(n)
                alpha, beta = RationalFunction(cs[1]), RationalFunction(cs[0])
                start = (beta / alpha + 1).to_expr()
                if alpha.is_constant():
                    const *= alpha.constant_value() ** e
                else:
                    parts.append(pow_(alpha.to_expr(True), mul(Num(e), Symbol(n))))
                parts.append(pow_(make_pochhammer(start, Symbol(n)), Num(e)))
            else:
                m = Symbol(f"{n}_m")
                body = substitute(f.to_expr(), n, m)
                parts.append(pow_(make_prod(body, m, Num(1), Symbol(n)), Num(e)))
    if const != 1:
        parts.append(pow_(Num(const), Symbol(n)))
    return mul(*parts)


@dataclass
class ZeilbergerCertificate:
    """Data proving ``sum_j sigma_j F(n-j,k) = G(n,k) - G(n,k-1)``.

    ``G = R * F`` with the rational certificate ``R``.
    """

    order: int
    sigmas: list
    form: GosperForm
    R: RationalFunction
    k: str
    n: str

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "sigma": [str(s.to_expr()) for s in self.sigmas],
            "p": str(_rf(self.form.p).to_expr(True)),
            "q": str(self.form.q.to_expr(True)),
            "r": str(self.form.r.to_expr(True)),
            "f": str(self.form.f.to_expr(True)),
            "R": str(self.R.to_expr(True)),
        }


@dataclass
class ZeilbergerResult:
    recurrence: Recurrence
    certificate: ZeilbergerCertificate
    summand: Expr
    tried: list = field(default_factory=list)

    def __str__(self):
        return str(self.recurrence)


def _sigma_combination(rn: RationalFunction, n: str, J: int):
    """``A_j`` polynomials and ``L`` with F(n-j,k)/F(n,k) = A_j / L."""
    rhos = [RationalFunction.const(1)]
    for i in range(J):
        rhos.append(rhos[-1] / rn.shift(n, -i))
    names = common_names(*rhos)
    L = Polynomial.const(1, names)
    for r in rhos:
        L = poly_lcm(L, r.den)
    A = [(r * L).num for r in rhos]
    return A, L, rhos


def _try_order(F, k, n, rk, rn, J, trace):
    A, L, rhos = _sigma_combination(rn, n, J)
    R = rk * RationalFunction(L.shift(k, -1)) / RationalFunction(L)
    form = gpp_decompose(R, k)
    p0 = form.p
    sig_syms = [None] + [Polynomial.gen(sigma_name(j)) for j in range(1, J + 1)]
    if not isinstance(trace, type(null_trace())):
        P = A[0]
        for j in range(1, J + 1):
            P = P + sig_syms[j] * A[j]
        trace.value("p", (p0 * P).to_expr())
        trace.value("q", form.q.to_expr())
        trace.value("r", form.r.to_expr())
    deg_p = p0.degree(k) + max(a.degree(k) for a in A)
    D = degree_bound(form, deg_p)
    trace.value("degreebound", "none" if D is None else D, sep=" := ")
    if D is None:
        return None
    cols = key_equation_columns(form, D) + [-(p0 * a) for a in A]
    matrix = coefficient_matrix(cols, k)
    basis = nullspace(matrix, len(cols))
    nc = D + 1
    vec = None
    for v in basis:
        if any(not x.is_zero() for x in v[nc:]):
            vec = v
            break
    if vec is None:
        return None
    sig = vec[nc:]
    pivot = next(x for x in sig if not x.is_zero())
    vec = [x / pivot for x in vec]
    sig = vec[nc:]
    kk = RationalFunction(Polynomial.gen(k, form.q.names))
    f = RationalFunction.const(0)
    for c in reversed(vec[:nc]):
        f = f * kk + c
    P = RationalFunction.const(0)
    for s, a in zip(sig, A):
        P = P + s * RationalFunction(a)
    form.f = f
    full_p = RationalFunction(p0) * P
    trace.value("f", f.to_expr())
    trace.value("p", full_p.to_expr())
    cert_form = GosperForm(full_p, form.q, form.r, k, f)
    Rcert = RationalFunction(form.q.shift(k, 1)) * f / (RationalFunction(p0) * RationalFunction(L))
    cert = ZeilbergerCertificate(J, sig, cert_form, Rcert, k, n)
    return sig, cert


def sumrecursion(F, k, n, order: int | None = None, max_order: int = 5,
                 trace: Trace | None = None, direction: str = "down") -> ZeilbergerResult:
    """Holonomic recurrence in ``n`` for ``sum_k F(n,k)``.

    Orders 1..max_order are tried in turn unless ``order`` fixes one.
    Raises :class:`ZeilbergerNotApplicable` when F is not hypergeometric in
    both variables and :class:`OrderExceeded` when no order succeeds.
    """
    F = as_expr(F)
    k = k.name if isinstance(k, Symbol) else k
    n = n.name if isinstance(n, Symbol) else n
    trace = trace or null_trace()
    try:
        rn = term_ratio(F, n).ratio
        rk = term_ratio(F, k).ratio
    except NotHypergeometric as exc:
        raise ZeilbergerNotApplicable(str(exc)) from None
    trace.value(f"F({n},{k})/F({n}-1,{k})", rn.to_expr())
    trace.value(f"F({n},{k})/F({n},{k}-1)", rk.to_expr())
    trace.note("Zeilberger algorithm applicable")
    orders = [order] if order is not None else list(range(1, max_order + 1))
    tried = []
    for J in orders:
        if J < 1:
            continue
        trace.value("applying Zeilberger algorithm for order", J)
        tried.append(J)
        res = _try_order(F, k, n, rk, rn, J, trace)
        if res is None:
            continue
        sig, cert = res
        trace.note("Zeilberger algorithm successful")
        rec = Recurrence(sig, n, "down")
        if direction == "up":
            rec = to_direction(rec, "up")
        return ZeilbergerResult(rec, cert, F, tried)
    raise OrderExceeded(f"no recurrence of order <= {max(orders) if orders else 0}")
