"""Exact numeric evaluation of expressions at rational points.

Values are ``c * pi^(e/2)`` with rational ``c`` so that Gamma at
half-integers stays exact.  A pole in a denominator evaluates to zero
(``1/Gamma(-m) = 0``); a pole anywhere else raises :class:`PoleError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import flint

from .errors import NotEvaluable, PoleError
from .expr import (Add, Binomial, Expr, Factorial, Gamma, Mul, Num, Pochhammer,
                   Pow, Prod, SumRef, Symbol)

__all__ = ["Exact", "evaluate", "evaluate_rational", "gamma_exact"]


@dataclass(frozen=True)
class Exact:
    """The number ``c * sqrt(pi)^e``."""

    c: Fraction
    e: int = 0

    def __add__(self, other: Exact) -> Exact:
        if self.c == 0:
            return other
        if other.c == 0:
            return self
        if self.e != other.e:
            raise NotEvaluable("sum of terms with different powers of pi")
        return Exact(self.c + other.c, self.e)

    def __neg__(self):
        return Exact(-self.c, self.e)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: Exact) -> Exact:
        if self.c == 0 or other.c == 0:
            return Exact(Fraction(0))
        return Exact(self.c * other.c, self.e + other.e)

    def inverse(self) -> Exact:
        if self.c == 0:
            raise PoleError("division by zero")
        return Exact(1 / self.c, -self.e)

    def __pow__(self, m: int) -> Exact:
        if m < 0:
            return self.inverse() ** (-m)
        return Exact(self.c ** m, self.e * m)

    def is_zero(self) -> bool:
        return self.c == 0

    def rational(self) -> Fraction:
        if self.e and self.c != 0:
            raise NotEvaluable("value involves pi")
        return self.c


ZERO = Exact(Fraction(0))
ONE = Exact(Fraction(1))


def _int_or_none(v: Fraction):
    return int(v) if v.denominator == 1 else None


def gamma_exact(x: Fraction) -> Exact:
    """Gamma at an integer or half-integer."""
    if x.denominator == 1:
        if x <= 0:
            raise PoleError(f"gamma pole at {x}")
        return Exact(Fraction(factorial(int(x) - 1)))
    if x.denominator == 2:
        m = int(x - Fraction(1, 2))
        if m >= 0:
            return Exact(Fraction(factorial(2 * m), 4 ** m * factorial(m)), 1)
        m = -m
        return Exact(Fraction((-4) ** m * factorial(m), factorial(2 * m)), 1)
    raise NotEvaluable(f"gamma({x}) is not exactly representable")


def _rat(v: Exact) -> Fraction:
    return v.rational()


def _pochhammer(a: Exact, m: Exact) -> Exact:
    av, mv = _rat(a), _rat(m)
    mi = _int_or_none(mv)
    if mi is not None:
        out = Fraction(1)
        if mi >= 0:
            for i in range(mi):
                out *= av + i
            return Exact(out)
        for i in range(1, -mi + 1):
            out *= av - i
        if out == 0:
            raise PoleError(f"pochhammer({av},{mi}) is a pole")
        return Exact(1 / out)
    return _gamma_ratio([av + mv], [av])


def _gamma_ratio(top: list, bottom: list) -> Exact:
    """prod Gamma(top) / prod Gamma(bottom) with reciprocal poles giving zero."""
    num = ONE
    for t in top:
        num = num * gamma_exact(t)
    for b in bottom:
        try:
            g = gamma_exact(b)
        except PoleError:
            return ZERO
        num = num * g.inverse()
    return num


def _binomial(a: Exact, b: Exact) -> Exact:
    av, bv = _rat(a), _rat(b)
    bi = _int_or_none(bv)
    if bi is not None:
        if bi < 0:
            return ZERO
        ai = _int_or_none(av)
        if ai is not None:
            if ai >= 0:
                return Exact(Fraction(comb(ai, bi)))
            return Exact(Fraction((-1) ** bi * comb(bi - ai - 1, bi)))
        out = Fraction(1)
        for i in range(bi):
            out *= av - i
        return Exact(out / factorial(bi))
    return _gamma_ratio([av + 1], [bv + 1, av - bv + 1])


def _root(v: Fraction, d: int):
    """Exact rational d-th root of ``v`` or None."""
    if v < 0:
        if d % 2 == 0:
            return None
        r = _root(-v, d)
        return None if r is None else -r
    out = []
    for part in (v.numerator, v.denominator):
        y = int(flint.fmpz(part).root(d))
        if y ** d != part:
            return None
        out.append(y)
    return Fraction(*out)


def _power(b: Exact, x: Exact) -> Exact:
    xv = _rat(x)
    xi = _int_or_none(xv)
    if xi is not None:
        if b.is_zero() and xi < 0:
            raise PoleError("zero to a negative power")
        return b ** xi
    if b.e:
        raise NotEvaluable("fractional power of pi")
    root = _root(b.c, xv.denominator)
    if root is None:
        raise NotEvaluable(f"{b.c}^{xv} is irrational")
    return Exact(root) ** xv.numerator


def evaluate(e: Expr, env: dict) -> Exact:
    """Evaluate ``e`` with every free symbol bound in ``env``."""
    if isinstance(e, Num):
        return Exact(e.value)
    if isinstance(e, Symbol):
        try:
            return Exact(Fraction(env[e.name]))
        except KeyError:
            raise NotEvaluable(f"no value for {e.name}") from None
    if isinstance(e, Add):
        acc = ZERO
        for t in e.args:
            acc = acc + evaluate(t, env)
        return acc
    if isinstance(e, Mul):
        acc = ONE
        for f in e.args:
            acc = acc * evaluate(f, env)
        return acc
    if isinstance(e, Pow):
        try:
            base = evaluate(e.base, env)
        except PoleError:
            x = evaluate(e.exp, env)
            if _rat(x) < 0:
                return ZERO
            raise
        return _power(base, evaluate(e.exp, env))
    if isinstance(e, Factorial):
        return gamma_exact(_rat(evaluate(e.arg, env)) + 1)
    if isinstance(e, Gamma):
        return gamma_exact(_rat(evaluate(e.arg, env)))
    if isinstance(e, Binomial):
        return _binomial(evaluate(e.top, env), evaluate(e.bottom, env))
    if isinstance(e, Pochhammer):
        return _pochhammer(evaluate(e.base, env), evaluate(e.count, env))
    if isinstance(e, Prod):
        lo = _int_or_none(_rat(evaluate(e.lower, env)))
        hi = _int_or_none(_rat(evaluate(e.upper, env)))
        if lo is None or hi is None:
            raise NotEvaluable("product bounds must be integers")
        inner = dict(env)
        acc = ONE
        idx = e.index.name
        if hi >= lo - 1:
            for j in range(lo, hi + 1):
                inner[idx] = j
                acc = acc * evaluate(e.body, inner)
            return acc
        # prod_{lo..hi} = 1 / prod_{hi+1..lo-1} keeps the ratio rule valid
        for j in range(hi + 1, lo):
            inner[idx] = j
            acc = acc * evaluate(e.body, inner)
        return acc.inverse()
    if isinstance(e, SumRef):
        raise NotEvaluable("cannot evaluate sum(...)")
    raise NotEvaluable(f"cannot evaluate {type(e).__name__}")


def evaluate_rational(e: Expr, env: dict) -> Fraction:
    return evaluate(e, env).rational()
