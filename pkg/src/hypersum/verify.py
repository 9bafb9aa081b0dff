"""Independent checks of engine output.

Nothing here trusts the engines: antidifferences are checked by forming
``g_k - g_{k-1}`` again, recurrences by brute-force summation over the
natural support of the instantiated summand.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (DegenerateRecurrence, NotEvaluable, NotHypergeometric, PoleError,
                     UnboundedSupport)
from .evaluate import Exact, evaluate
from .expr import (Expr, Factorial, Gamma, Num, Pochhammer, Pow, Symbol,
                   add, as_expr, free_symbols, mul, pow_, rebuild, substitute)
from .normalize import term_ratio, to_gamma_product
from .poly import RationalFunction, poly_gcd_raw, to_rational
from .zeilberger import Recurrence, ZeilbergerCertificate, to_direction

__all__ = [
    "CheckReport", "finite_sum", "check_antidifference", "check_recurrence",
    "recurrences_equal", "check_certificate", "check_equal", "check_definite_sum",
    "SUPPORT_SCAN", "FLANK_ZEROS",
]

SUPPORT_SCAN = 200
FLANK_ZEROS = 10
PARAM_RANGE = (2, 9)


@dataclass
class CheckReport:
    """Outcome of a check; ``evidence`` rows are ``(values, lhs, rhs)``."""

    verdict: str
    evidence: list = field(default_factory=list)
    seed: int | None = None
    method: str = "numeric"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "method": self.method,
            "seed": self.seed,
            "evidence": [
                {"values": {k: str(v) for k, v in env.items()}, "lhs": str(lhs), "rhs": str(rhs)}
                for env, lhs, rhs in self.evidence
            ],
        }


# -- finite sums ------------------------------------------------------------

def _is_nonpos_int(e: Expr) -> bool:
    return isinstance(e, Num) and e.value.denominator == 1 and e.value <= 0


def _prune_poles(e: Expr) -> Expr:
    """Zero out reciprocal poles such as ``1/factorial(-1)``.

    A pole that is not in a denominator raises :class:`PoleError`.
    """
    if isinstance(e, Factorial) and _is_nonpos_int(e.arg) and e.arg != Num(0):
        raise PoleError(f"{e} is a pole")
    if isinstance(e, Gamma) and _is_nonpos_int(e.arg):
        raise PoleError(f"{e} is a pole")
    if isinstance(e, Pochhammer) and isinstance(e.base, Num) and isinstance(e.count, Num):
        raise PoleError(f"{e} is a pole")
    if isinstance(e, Pow):
        try:
            base = _prune_poles(e.base)
        except PoleError:
            if isinstance(e.exp, Num) and e.exp.value < 0:
                return Num(0)
            raise
        return pow_(base, e.exp)
    if isinstance(e, (Num, Symbol)) or not e.args:
        return e
    return rebuild(e, [_prune_poles(a) for a in e.args])


def _term_value(F: Expr, k: str, j: int):
    t = substitute(F, k, Num(j))
    if not free_symbols(t):
        return evaluate(t, {})
    t = _prune_poles(t)
    if t == Num(0):
        return RationalFunction.const(0)
    gp = to_gamma_product(t).simplify()
    return gp.prefactor if gp.is_rational() else t


def _fold_left(values):
    acc = values[0]
    for v in values[1:]:
        acc = _plus(acc, v)
    return acc


def _fold_pairwise(values):
    while len(values) > 1:
        nxt = [_plus(values[i], values[i + 1]) for i in range(0, len(values) - 1, 2)]
        if len(values) % 2:
            nxt.append(values[-1])
        values = nxt
    return values[0]


def _plus(a, b):
    if isinstance(a, Expr) or isinstance(b, Expr):
        return add(_as_expr(a), _as_expr(b))
    if isinstance(a, Exact) != isinstance(b, Exact):
        a, b = _as_rf(a), _as_rf(b)
    return a + b


def _as_rf(v):
    if isinstance(v, Exact):
        return RationalFunction.const(v.rational())
    return v


def _as_expr(v) -> Expr:
    if isinstance(v, Exact):
        if v.e == 0 or v.c == 0:
            return Num(v.c)
        return mul(Num(v.c), pow_(Symbol("pi"), Num(Fraction(v.e, 2))))
    if isinstance(v, RationalFunction):
        return v.to_expr(True)
    return v


def finite_sum(F, k, lo: int, hi: int, order: str = "left") -> Expr:
    """Exact ``sum(F, k = lo..hi)``; an empty range gives 0.

    ``order`` selects left-fold or pairwise accumulation; both are exact,
    so they must agree.
    """
    F = as_expr(F)
    k = k.name if isinstance(k, Symbol) else k
    if hi < lo:
        return Num(0)
    values = [_term_value(F, k, j) for j in range(lo, hi + 1)]
    fold = _fold_pairwise if order == "pairwise" else _fold_left
    return _as_expr(fold(values))


# -- antidifferences ----------------------------------------------------------

def _difference(g: Expr, k: str, direction: str):
    """``(g_k, g_{k-1})`` for down, ``(g_{k+1}, g_k)`` for up."""
    K = Symbol(k)
    if direction == "up":
        return substitute(g, k, add(K, Num(1))), g
    return g, substitute(g, k, add(K, Num(-1)))


def _symbolic_antidifference(g, a, k, direction):
    """Rational ``(g_hi - g_lo)/a`` or None when it cannot be decided symbolically."""
    hi, lo = _difference(g, k, direction)
    try:
        ga = to_gamma_product(a)
        if ga.prefactor.is_zero():
            return None
        ghi = (to_gamma_product(hi) / ga).simplify()
        glo = (to_gamma_product(lo) / ga).simplify()
    except (NotHypergeometric, PoleError, ValueError):
        return None
    if not (ghi.is_rational() and glo.is_rational()):
        return None
    return ghi.prefactor - glo.prefactor


def _random_env(rng, names):
    return {s: rng.randint(*PARAM_RANGE) for s in sorted(names)}


def _numeric_antidifference(g, a, k, direction, rng, points=20, fail_fast=False):
    hi, lo = _difference(g, k, direction)
    names = (free_symbols(g) | free_symbols(a)) - {k}
    evidence, tested = [], 0
    for _ in range(points * 10):
        if tested >= points:
            break
        env = _random_env(rng, names)
        env[k] = rng.randint(1, 30)
        try:
            lhs = evaluate(hi, env) - evaluate(lo, env)
            rhs = evaluate(a, env)
        except (PoleError, NotEvaluable):
            continue
        tested += 1
        if lhs != rhs:
            evidence.append((env, _as_expr(lhs), _as_expr(rhs)))
            if fail_fast:
                break
    return tested, evidence


def check_antidifference(g, a, k, direction: str = "down", seed: int = 0) -> CheckReport:
    """Check ``g_k - g_{k-1} = a_k`` (or ``g_{k+1} - g_k = a_k`` for up)."""
    g, a = as_expr(g), as_expr(a)
    k = k.name if isinstance(k, Symbol) else k
    rng = random.Random(seed)
    ratio = _symbolic_antidifference(g, a, k, direction)
    if ratio is not None and ratio == RationalFunction.const(1):
        return CheckReport("pass", [], seed, "symbolic")
    tested, bad = _numeric_antidifference(g, a, k, direction, rng, fail_fast=ratio is not None)
    if bad:
        return CheckReport("fail", bad, seed, "numeric")
    if ratio is not None:
        # symbolic says unequal but no sample disagreed: look harder
        tested, bad = _numeric_antidifference(g, a, k, direction, rng, points=200, fail_fast=True)
        return CheckReport("fail", bad, seed, "symbolic")
    if tested == 0:
        return CheckReport("skipped-pole", [], seed, "numeric")
    return CheckReport("pass", [], seed, "numeric")


# -- recurrences ------------------------------------------------------------

def _bracketed_sum(F: Expr, k: str, env: dict, support=None) -> Exact:
    """Sum over all integers k of the instantiated summand.

    With ``support = (lo, hi)`` (expressions in the parameters) the sum runs
    over that range instead of a scanned one.
    """
    if support is not None:
        lo, hi = (int(evaluate(as_expr(b), env).rational()) for b in support)
        total = Exact(Fraction(0))
        for j in range(lo, hi + 1):
            total = total + evaluate(F, {**env, k: j})
        return total
    S = SUPPORT_SCAN
    terms = []
    for j in range(-S, S + 1):
        env[k] = j
        terms.append(evaluate(F, env))
    del env[k]
    if any(not t.is_zero() for t in terms[:FLANK_ZEROS] + terms[-FLANK_ZEROS:]):
        raise UnboundedSupport(f"summand does not vanish within |{k}| <= {S} for {env}")
    total = Exact(Fraction(0))
    for t in terms:
        total = total + t
    return total


def _rf(c) -> RationalFunction:
    return c if isinstance(c, RationalFunction) else to_rational(c)


def _coeff_value(c: RationalFunction, env: dict):
    c = _rf(c)
    return c.evaluate({s: Fraction(v) for s, v in env.items() if s in c.used_names()})


def check_recurrence(rec: Recurrence, F, k, n, trials: int = 3, nvalues: int = 7,
                     seed: int = 0, n_start: int | None = None,
                     values: dict | None = None, support=None,
                     certificate: ZeilbergerCertificate | None = None) -> CheckReport:
    """Check ``rec`` against brute-force sums of ``F`` over its natural support.

    Every symbol besides ``k`` and ``n`` is drawn from [2, 9]; draws that
    hit a pole or zero the leading coefficient are rejected.  ``values``
    fixes some parameters instead of drawing them.  ``support`` replaces
    the scan by an explicit summation range ``(lo, hi)``; it is needed when
    integer parameters turn a vanishing term into a 0/0 Gamma quotient.

    With a ``certificate``, values of ``n`` at which the rational
    certificate is undefined for every ``k`` are skipped: the recurrence is
    only guaranteed where the telescoping identity holds.
    """
    F = as_expr(F)
    k = k.name if isinstance(k, Symbol) else k
    n = n.name if isinstance(n, Symbol) else n
    if _rf(rec.coeffs[0]).is_zero() or _rf(rec.coeffs[-1]).is_zero():
        raise DegenerateRecurrence("an outer recurrence coefficient vanishes identically")
    rng = random.Random(seed)
    names = (free_symbols(F) - {k, n})
    fixed = dict(values or {})
    names -= set(fixed)
    order = rec.order
    start = order if n_start is None else n_start
    lows = [start - s for s in rec.shifts()]
    start = max(start, start + max(0, -min(lows)))
    excluded = None if certificate is None else _k_free_denominator(certificate.R, k)
    evidence, good, attempts = [], 0, 0
    while good < trials and attempts < 20 * trials:
        attempts += 1
        env = {**_random_env(rng, names), **fixed}
        try:
            rows = _recurrence_rows(rec, F, k, n, env, start, nvalues, support, excluded)
        except (PoleError, NotEvaluable):
            continue
        if rows is None:
            continue
        good += 1
        bad = [row for row in rows if row[1] != row[2]]
        if bad:
            return CheckReport("fail", bad, seed)
        evidence.extend(rows)
    if good == 0:
        return CheckReport("skipped-pole", [], seed)
    return CheckReport("pass", evidence, seed)


def _k_free_denominator(R: RationalFunction, k: str):
    """Factor of the denominator of ``R`` that does not involve ``k``."""
    den = R.den
    if k not in den.names:
        return den
    g = None
    for c in den.coeffs_in(k):
        if not c.is_zero():
            g = c if g is None else poly_gcd_raw(g, c)
    return g


def _recurrence_rows(rec, F, k, n, env, start, nvalues, support, excluded=None):
    cache: dict = {}

    def s(m):
        if m not in cache:
            cache[m] = _bracketed_sum(F, k, {**env, n: m}, support)
        return cache[m]

    rows = []
    m = start - 1
    while len(rows) < nvalues:
        m += 1
        point = {**env, n: m}
        if excluded is not None and m < start + nvalues + 20 and \
                excluded.evaluate({s_: v for s_, v in point.items() if s_ in excluded.names}) == 0:
            continue
        lead = _coeff_value(rec.coeffs[0], point)
        if lead == 0:
            return None
        lhs = Exact(Fraction(0))
        for shift, c in rec.terms():
            cv = _coeff_value(c, point)
            if cv:
                lhs = lhs + Exact(Fraction(cv)) * s(m + shift)
        rows.append((point, _as_expr(lhs), Num(0)))
    return rows


def recurrences_equal(r1: Recurrence, r2: Recurrence) -> bool:
    """Equality after direction alignment and content/sign normalization."""
    a, b = to_direction(r1, "down"), to_direction(r2, "down")
    if a.var != b.var or a.order != b.order:
        return False
    a = Recurrence(a.coeffs, a.var, "down")
    b = Recurrence(b.coeffs, b.var, "down")
    return all(x == y for x, y in zip(a.coeffs, b.coeffs))


def check_certificate(cert: ZeilbergerCertificate, F) -> CheckReport:
    """Symbolic check of ``sum_j sigma_j F(n-j,k) = G(n,k) - G(n,k-1)`` with ``G = R*F``.

    Divided by ``F(n,k)`` this is an identity between rational functions,
    so no sampling is involved.
    """
    F = as_expr(F)
    k, n = cert.k, cert.n
    rn = term_ratio(F, n).ratio
    rk = term_ratio(F, k).ratio
    lhs = RationalFunction.const(0)
    rho = RationalFunction.const(1)
    for j, sigma in enumerate(cert.sigmas):
        if j:
            rho = rho / rn.shift(n, -(j - 1))
        lhs = lhs + sigma * rho
    R = cert.R
    rhs = R - R.shift(k, -1) / rk
    diff = lhs - rhs
    if diff.is_zero():
        return CheckReport("pass", [], None, "certificate")
    return CheckReport("fail", [({}, _as_expr(lhs), _as_expr(rhs))], None, "certificate")


def check_equal(e1, e2, seed: int = 0, points: int = 20, positive: str | None = None) -> CheckReport:
    """Compare two expressions at random integer points in [2, 9].

    ``positive`` names a variable sampled from a wider range [1, 30].
    """
    e1, e2 = as_expr(e1), as_expr(e2)
    rng = random.Random(seed)
    names = free_symbols(e1) | free_symbols(e2)
    tested = 0
    for _ in range(points * 10):
        if tested >= points:
            break
        env = _random_env(rng, names)
        if positive in env:
            env[positive] = rng.randint(1, 30)
        try:
            v1, v2 = evaluate(e1, env), evaluate(e2, env)
        except (PoleError, NotEvaluable):
            continue
        tested += 1
        if v1 != v2:
            return CheckReport("fail", [(env, _as_expr(v1), _as_expr(v2))], seed)
    return CheckReport("pass" if tested else "skipped-pole", [], seed)


def check_definite_sum(result, a, k, m, n, seed: int = 0, trials: int = 10) -> CheckReport:
    """Compare a closed form of ``sum(a, k = m..n)`` with brute-force sums.

    Symbols in the bounds and the summand are drawn from [2, 9].
    """
    result, a, m, n = (as_expr(x) for x in (result, a, m, n))
    k = k.name if isinstance(k, Symbol) else k
    rng = random.Random(seed)
    names = (free_symbols(result) | free_symbols(a) | free_symbols(m) | free_symbols(n)) - {k}
    evidence, tested, seen = [], 0, set()
    for _ in range(trials * 10):
        if tested >= trials:
            break
        env = _random_env(rng, names)
        key = tuple(sorted(env.items()))
        if key in seen:
            continue
        seen.add(key)
        try:
            lo = evaluate(m, env).rational()
            hi = evaluate(n, env).rational()
            if lo.denominator != 1 or hi.denominator != 1 or hi < lo:
                continue
            total = Exact(Fraction(0))
            for j in range(int(lo), int(hi) + 1):
                total = total + evaluate(a, {**env, k: j})
            closed = evaluate(result, env)
        except (PoleError, NotEvaluable):
            continue
        tested += 1
        if total != closed:
            return CheckReport("fail", [(env, _as_expr(closed), _as_expr(total))], seed)
        evidence.append((env, _as_expr(closed), _as_expr(total)))
    return CheckReport("pass" if tested else "skipped-pole", evidence, seed)
