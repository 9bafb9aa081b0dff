"""Exact multivariate polynomials and rational functions over Q.

Polynomials live in a ring whose generators are the symbols they mention,
sorted alphabetically, under graded lexicographic order.  Arithmetic between
polynomials of different rings coerces both to the union ring.  The heavy
lifting (multiplication, gcd, factorisation, resultants) is delegated to
FLINT through ``python-flint``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd as _igcd, lcm as _ilcm

import flint

from .errors import DivisionError, NoSolution, NotRational
from .expr import (Add, Expr, Mul, Num, Pow, Symbol, add, as_expr, free_symbols,
                   mul, pow_)

__all__ = [
    "Polynomial", "RationalFunction", "poly_gcd", "poly_lcm", "integer_roots",
    "dispersion_set", "solve_linear_system", "nullspace", "to_rational",
    "to_polynomial", "common_names",
]

_ORDER = "deglex"


@lru_cache(maxsize=None)
def _ctx(names: tuple):
    return flint.fmpq_mpoly_ctx.get(names, _ORDER)


def common_names(*items) -> tuple:
    out = set()
    for it in items:
        if isinstance(it, (Polynomial, RationalFunction)):
            out.update(it.names)
        elif isinstance(it, str):
            out.add(it)
        else:
            out.update(it)
    return tuple(sorted(out))


def _fq(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    # fmpq
    return Fraction(int(x.p), int(x.q))


def _flq(x):
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


class Polynomial:
    """Sparse polynomial with rational coefficients."""

    __slots__ = ("rep", "names")

    def __init__(self, rep, names: tuple):
        self.rep = rep
        self.names = names

    # construction
    @classmethod
    def const(cls, c, names=()) -> Polynomial:
        names = tuple(names)
        return cls(_ctx(names).constant(_flq(c)), names)

    @classmethod
    def gen(cls, name: str, names=None) -> Polynomial:
        names = tuple(sorted(set(names or ()) | {name}))
        ctx = _ctx(names)
        return cls(ctx.gens()[names.index(name)], names)

    @classmethod
    def from_dict(cls, terms: dict, names) -> Polynomial:
        names = tuple(names)
        d = {tuple(m): _flq(c) for m, c in terms.items() if c != 0}
        return cls(_ctx(names).from_dict(d), names)

    @classmethod
    def from_expr(cls, e, names=None) -> Polynomial:
        rf = to_rational(e, names)
        if not rf.den.is_one():
            raise NotRational(f"{e} is not a polynomial")
        return rf.num

    @property
    def ctx(self):
        return _ctx(self.names)

    # coercion
    def coerce(self, names) -> Polynomial:
        names = tuple(names)
        if names == self.names:
            return self
        return Polynomial(self.rep.project_to_context(_ctx(names)), names)

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            return self.rep, self.ctx.constant(_flq(other)), self.names
        if isinstance(other, RationalFunction):
            return NotImplemented
        if other.names == self.names:
            return self.rep, other.rep, self.names
        names = common_names(self, other)
        return self.coerce(names).rep, other.coerce(names).rep, names

    def _wrap(self, rep, names=None):
        return Polynomial(rep, self.names if names is None else names)

    # arithmetic
    def __add__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self) + other
        a, b, names = self._pair(other)
        return Polynomial(a + b, names)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self) - other
        a, b, names = self._pair(other)
        return Polynomial(a - b, names)

    def __rsub__(self, other):
        a, b, names = self._pair(other)
        return Polynomial(b - a, names)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self) * other
        a, b, names = self._pair(other)
        return Polynomial(a * b, names)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return RationalFunction(self) / other

    def __rtruediv__(self, other):
        return RationalFunction(self.const(other, self.names)) / self

    def __neg__(self):
        return Polynomial(-self.rep, self.names)

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(self) ** n
        return Polynomial(self.rep ** n, self.names)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if isinstance(other, RationalFunction):
            return other.den.is_one() and other.num == self
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b, _ = self._pair(other)
        return a == b

    def __hash__(self):
        return hash(tuple(sorted(self.to_term_dict().items())))

    def __bool__(self):
        return not self.rep.is_zero()

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def is_one(self) -> bool:
        return self.rep.is_one()

    def is_constant(self) -> bool:
        return self.rep.is_constant()

    def constant_value(self) -> Fraction:
        if not self.rep.is_constant():
            raise ValueError("polynomial is not constant")
        if self.rep.is_zero():
            return Fraction(0)
        return _fq(self.rep.leading_coefficient())

    def exact_div(self, other) -> Polynomial:
        a, b, names = self._pair(other)
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        try:
            return Polynomial(a / b, names)
        except Exception as exc:  # flint DomainError
            raise DivisionError(f"{self} is not divisible by {other}") from exc

    def divides(self, other) -> bool:
        """True when ``self`` divides ``other`` exactly."""
        a, b, _ = self._pair(other)
        if a.is_zero():
            return b.is_zero()
        q, r = divmod(b, a)
        return r.is_zero()

    # structure
    def to_term_dict(self) -> dict:
        """``{((name, exp), ...): Fraction}`` independent of the ring."""
        out = {}
        for m, c in self.rep.terms():
            key = tuple((self.names[i], e) for i, e in enumerate(m) if e)
            out[key] = _fq(c)
        return out

    def used_names(self) -> set:
        degs = self.rep.degrees()
        return {n for n, d in zip(self.names, degs) if d > 0}

    def trim(self) -> Polynomial:
        used = tuple(sorted(self.used_names()))
        return self.coerce(used) if used != self.names else self

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree when omitted); ``-1`` for zero."""
        if self.rep.is_zero():
            return -1
        if var is None:
            return int(self.rep.total_degree())
        if var not in self.names:
            return 0
        return int(self.rep.degrees()[self.names.index(var)])

    def coeffs_in(self, var: str) -> list:
        """Coefficient list ``[c0, c1, ...]`` of ``self`` as a polynomial in ``var``."""
        if self.rep.is_zero():
            return []
        if var not in self.names:
            return [self]
        i = self.names.index(var)
        buckets: dict = {}
        for m, c in self.rep.terms():
            e = int(m[i])
            mm = list(m)
            mm[i] = 0
            buckets.setdefault(e, {})[tuple(mm)] = c
        deg = max(buckets)
        ctx = self.ctx
        zero = ctx.constant(0)
        return [Polynomial(ctx.from_dict(buckets[e]) if e in buckets else zero, self.names)
                for e in range(deg + 1)]

    def leading_coeff_in(self, var: str) -> Polynomial:
        cs = self.coeffs_in(var)
        return cs[-1] if cs else self

    def leading_coefficient(self) -> Fraction:
        if self.rep.is_zero():
            return Fraction(0)
        return _fq(self.rep.leading_coefficient())

    def content(self) -> Fraction:
        """Rational content, signed like the leading coefficient."""
        cs = [_fq(c) for c in self.rep.coeffs()]
        if not cs:
            return Fraction(0)
        num = reduce(_igcd, (c.numerator for c in cs))
        den = reduce(_ilcm, (c.denominator for c in cs))
        c = Fraction(num, den)
        return c if self.leading_coefficient() > 0 else -c

    def primitive_part(self) -> Polynomial:
        if self.rep.is_zero():
            return self
        return self * (1 / self.content())

    def monic(self) -> Polynomial:
        if self.rep.is_zero():
            return self
        return self * (1 / self.leading_coefficient())

    def derivative(self, var: str) -> Polynomial:
        if var not in self.names:
            return Polynomial(self.ctx.constant(0), self.names)
        return Polynomial(self.rep.derivative(var), self.names)

    def compose(self, mapping: dict) -> Polynomial:
        """Substitute polynomials for generators simultaneously."""
        vals = {k: (v if isinstance(v, Polynomial) else Polynomial.const(v))
                for k, v in mapping.items()}
        names = common_names(self, *vals.values())
        ctx = _ctx(names)
        args = []
        for n in self.names:
            if n in vals:
                args.append(vals[n].coerce(names).rep)
            else:
                args.append(ctx.gens()[names.index(n)])
        if not self.names:
            return self.coerce(names)
        return Polynomial(self.rep.compose(*args, ctx=ctx), names)

    def shift(self, var: str, j) -> Polynomial:
        """``self`` with ``var`` replaced by ``var + j``."""
        if var not in self.names or (isinstance(j, int) and j == 0):
            return self
        return self.compose({var: Polynomial.gen(var, self.names) + j})

    def subs(self, values: dict) -> Polynomial:
        vals = {k: _flq(v) for k, v in values.items() if k in self.names}
        if not vals:
            return self
        return Polynomial(self.rep.subs(vals), self.names)

    def evaluate(self, values: dict) -> Fraction:
        p = self.subs(values)
        if not p.is_constant():
            missing = p.used_names()
            raise KeyError(f"no value for {sorted(missing)}")
        return p.constant_value()

    def factor(self):
        """Return ``(constant, [(factor, multiplicity), ...])``.

        Factors are primitive with integer coefficients and a positive
        leading coefficient.
        """
        return self._primitive_factors(*self.rep.factor())

    def factor_squarefree(self):
        return self._primitive_factors(*self.rep.factor_squarefree())

    def _primitive_factors(self, c, facs):
        c = _fq(c)
        out = []
        for f, m in facs:
            f = Polynomial(f, self.names)
            cont = f.content()
            c *= cont ** int(m)
            out.append((f * (1 / cont), int(m)))
        return c, out

    def resultant(self, other, var: str) -> Polynomial:
        a, b, names = self._pair(other)
        return Polynomial(a.resultant(b, var), names)

    # conversion
    def to_expr(self, factor: bool = False) -> Expr:
        if factor and not self.is_constant():
            c, facs = self.factor()
            parts = [pow_(_expr_of(f), m) for f, m in facs]
            return mul(Num(c), *parts)
        return _expr_of(self)

    def __str__(self):
        return str(self.to_expr())

    def __repr__(self):
        return f"Polynomial<{self}>"


def _expr_of(p: Polynomial) -> Expr:
    terms = []
    for m, c in p.rep.terms():
        factors = [Num(_fq(c))]
        for name, e in zip(p.names, m):
            if e:
                factors.append(pow_(Symbol(name), Num(int(e))))
        terms.append(mul(*factors))
    return add(*terms)


class RationalFunction:
    """Reduced quotient ``num/den`` with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        if isinstance(num, (int, Fraction)):
            num = Polynomial.const(num, den.names if isinstance(den, Polynomial) else ())
        if den is None:
            self.num, self.den = num, Polynomial.const(1, num.names)
            return
        if isinstance(den, (int, Fraction)):
            den = Polynomial.const(den, num.names)
        if num.names != den.names:
            names = common_names(num, den)
            num, den = num.coerce(names), den.coerce(names)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            num, den = _normalize(num, den)
        self.num, self.den = num, den

    @property
    def names(self):
        return self.num.names

    @classmethod
    def const(cls, c, names=()):
        return cls(Polynomial.const(c, names))

    def coerce(self, names) -> RationalFunction:
        return RationalFunction(self.num.coerce(names), self.den.coerce(names), _normalized=True)

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction(Polynomial.const(other, self.names))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.den.is_one() and self.den.is_one():
            return RationalFunction(self.num * o.num)
        # cross-cancel before multiplying
        g1 = poly_gcd_raw(self.num, o.den)
        g2 = poly_gcd_raw(o.num, self.den)
        n = self.num.exact_div(g1) * o.num.exact_div(g2)
        d = self.den.exact_div(g2) * o.den.exact_div(g1)
        return RationalFunction(n, d, _normalized=True)._fix_den()

    __rmul__ = __mul__

    def _fix_den(self):
        lc = self.den.leading_coefficient()
        if lc != 1:
            return RationalFunction(self.num * (1 / lc), self.den * (1 / lc), _normalized=True)
        return self

    def inverse(self) -> RationalFunction:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num, _normalized=True)._fix_den()

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n, _normalized=True)._fix_den()

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((hash(self.num), hash(self.den)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def used_names(self) -> set:
        return self.num.used_names() | self.den.used_names()

    def degree(self, var: str) -> int:
        return self.num.degree(var) - self.den.degree(var)

    def shift(self, var: str, j) -> RationalFunction:
        return RationalFunction(self.num.shift(var, j), self.den.shift(var, j))

    def compose(self, mapping: dict) -> RationalFunction:
        """Substitute rational functions for generators."""
        num, den = self.num, self.den
        dens = {}
        polys = {}
        for k, v in mapping.items():
            v = v if isinstance(v, RationalFunction) else RationalFunction(
                v if isinstance(v, Polynomial) else Polynomial.const(v))
            polys[k], dens[k] = v.num, v.den
        # homogenise: p(x = a/b) = P(a, b) / b^deg
        out = []
        for poly in (num, den):
            acc = RationalFunction(poly.compose({k: Polynomial.gen("__h_" + k, ())
                                                 for k in polys}))
            sub = {}
            for k in polys:
                sub["__h_" + k] = RationalFunction(polys[k], dens[k])
            out.append(_compose_rf(acc.num, sub))
        return out[0] / out[1]

    def evaluate(self, values: dict) -> Fraction:
        d = self.den.evaluate(values)
        if d == 0:
            from .errors import PoleError
            raise PoleError("denominator vanishes")
        return self.num.evaluate(values) / d

    def subs(self, values: dict) -> RationalFunction:
        d = self.den.subs(values)
        if d.is_zero():
            from .errors import PoleError
            raise PoleError("denominator vanishes")
        return RationalFunction(self.num.subs(values), d)

    def parts(self, factor: bool = False):
        """``(c, [expr, ...])`` with ``self = c * prod(exprs)`` and integer-primitive factors."""
        if self.num.is_zero():
            return Fraction(0), []
        out = []
        c = Fraction(1)
        for poly, sign in ((self.num, 1), (self.den, -1)):
            if poly.is_constant():
                c *= poly.constant_value() ** sign
                continue
            if factor:
                c0, facs = poly.factor()
                c *= c0 ** sign
                out.extend(pow_(_expr_of(f), Num(m * sign)) for f, m in facs)
            else:
                c0 = poly.content()
                c *= c0 ** sign
                out.append(pow_(_expr_of(poly * (1 / c0)), Num(sign)))
        return c, out

    def to_expr(self, factor: bool = False) -> Expr:
        """Expression with integer-coefficient numerator and denominator."""
        if self.den.is_one() and not factor:
            return self.num.to_expr()
        c, parts = self.parts(factor)
        return mul(Num(c), *parts)

    def __str__(self):
        return str(self.to_expr())

    def __repr__(self):
        return f"RationalFunction<{self}>"


def _compose_rf(p: Polynomial, sub: dict) -> RationalFunction:
    """Evaluate polynomial ``p`` at rational-function values by Horner per variable."""
    out = RationalFunction(p)
    for var, val in sub.items():
        cs = out.num.coeffs_in(var)
        acc = RationalFunction(Polynomial.const(0, out.names))
        for c in reversed(cs):
            acc = acc * val + RationalFunction(c)
        out = acc / RationalFunction(out.den)
    return out


def _normalize(num: Polynomial, den: Polynomial):
    if num.is_zero():
        return num, Polynomial.const(1, num.names)
    if not den.is_constant():
        g = num.rep.gcd(den.rep)
        if not g.is_one():
            num = Polynomial(num.rep / g, num.names)
            den = Polynomial(den.rep / g, den.names)
    lc = den.rep.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num = Polynomial(num.rep * inv, num.names)
        den = Polynomial(den.rep * inv, den.names)
    return num, den


# -- gcd ----------------------------------------------------------------------

def poly_gcd_raw(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (FLINT convention)."""
    x, y, names = a._pair(b)
    return Polynomial(x.gcd(y), names)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Primitive gcd with positive leading coefficient; ``gcd(0, b) = primitive(b)``."""
    g = poly_gcd_raw(a, b)
    return g.primitive_part() if not g.is_zero() else g


def poly_lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.is_zero() or b.is_zero():
        return a * 0
    g = poly_gcd_raw(a, b)
    return (a.exact_div(g) * b).monic()


# -- conversion from expressions -----------------------------------------------

def to_rational(e, names=None) -> RationalFunction:
    """Convert a rational expression to a :class:`RationalFunction`."""
    e = as_expr(e)
    if names is None:
        names = tuple(sorted(free_symbols(e)))
    else:
        names = tuple(sorted(set(names) | free_symbols(e)))
    ctx = _ctx(names)
    gens = dict(zip(names, ctx.gens()))
    num, den = _conv(e, ctx, gens)
    return RationalFunction(Polynomial(num, names), Polynomial(den, names))


def to_polynomial(e, names=None) -> Polynomial:
    return Polynomial.from_expr(e, names)


def _conv(e: Expr, ctx, gens):
    """Return (num, den) flint polys; den is kept small by cancelling gcds."""
    if isinstance(e, Num):
        return ctx.constant(_flq(e.value)), ctx.constant(1)
    if isinstance(e, Symbol):
        return gens[e.name], ctx.constant(1)
    if isinstance(e, Add):
        n, d = ctx.constant(0), ctx.constant(1)
        for t in e.args:
            tn, td = _conv(t, ctx, gens)
            if td == d:
                n = n + tn
            else:
                g = d.gcd(td)
                n = n * (td / g) + tn * (d / g)
                d = d * (td / g)
        return n, d
    if isinstance(e, Mul):
        n, d = ctx.constant(1), ctx.constant(1)
        for f in e.args:
            fn, fd = _conv(f, ctx, gens)
            n, d = n * fn, d * fd
        if not d.is_constant():
            g = n.gcd(d)
            if not g.is_one():
                n, d = n / g, d / g
        return n, d
    if isinstance(e, Pow) and isinstance(e.exp, Num) and e.exp.value.denominator == 1:
        bn, bd = _conv(e.base, ctx, gens)
        m = int(e.exp.value)
        if m >= 0:
            return bn ** m, bd ** m
        if bn.is_zero():
            raise ZeroDivisionError("zero raised to a negative power")
        return bd ** (-m), bn ** (-m)
    raise NotRational(f"{e} is not a rational function")


# -- roots and dispersion --------------------------------------------------------

def _univariate_integer_roots(coeffs) -> set:
    """Integer roots of a univariate polynomial with rational coefficients."""
    p = flint.fmpq_poly([_flq(c) for c in coeffs])
    if p.degree() <= 0:
        return set()
    out = set()
    _, facs = p.factor()
    for f, _m in facs:
        if f.degree() == 1:
            a, b = _fq(f[1]), _fq(f[0])
            r = -b / a
            if r.denominator == 1:
                out.add(int(r))
    return out


def integer_roots(p: Polynomial, var: str) -> set:
    """All integers z with ``p(var=z)`` identically zero in the other symbols."""
    if p.is_zero():
        raise ValueError("integer_roots of the zero polynomial")
    if var not in p.names or p.degree(var) == 0:
        return set()
    i = p.names.index(var)
    # group the terms by their monomial in the other symbols
    groups: dict = {}
    for m, c in p.rep.terms():
        key = m[:i] + m[i + 1:]
        groups.setdefault(key, {})[int(m[i])] = _fq(c)
    best = None
    for key, terms in groups.items():
        deg = max(terms)
        low = min(terms)
        if deg == 0:
            return set()  # a var-free component that never vanishes
        if best is None or (deg - low) < best[0]:
            best = (deg - low, terms)
    _, terms = best
    coeffs = [terms.get(e, Fraction(0)) for e in range(max(terms) + 1)]
    cands = _univariate_integer_roots(coeffs)
    if min(terms) > 0:
        cands.add(0)
    return {z for z in cands if p.subs({var: z}).is_zero()}


def _shift_candidates(s: Polynomial, t: Polynomial, var: str):
    """Integer j with ``t(var + j)`` proportional to ``s`` (both irreducible)."""
    m = s.degree(var)
    if m < 1 or t.degree(var) != m:
        return None
    sc, tc = s.coeffs_in(var), t.coeffs_in(var)
    j = (RationalFunction(sc[m - 1], sc[m]) - RationalFunction(tc[m - 1], tc[m])) / m
    if not j.is_constant():
        return None
    jv = j.constant_value()
    if jv.denominator != 1:
        return None
    jv = int(jv)
    if (t.shift(var, jv) * sc[m] - s * tc[m]).is_zero():
        return jv
    return None


def dispersion_set(q: Polynomial, r: Polynomial, var: str, method: str = "factor") -> list:
    """Sorted nonnegative j for which ``gcd(q(var), r(var + j))`` is nonconstant in var.

    ``method="factor"`` pairs irreducible factors and reads off the shift;
    ``method="resultant"`` takes the nonnegative integer roots of
    ``Res_var(q(var), r(var + j))`` in ``j``.
    """
    if q.is_zero() or r.is_zero():
        raise ValueError("dispersion of the zero polynomial")
    if q.degree(var) < 1 or r.degree(var) < 1:
        return []
    if method == "resultant":
        return _dispersion_resultant(q, r, var)
    _, fq = q.factor()
    _, fr = r.factor() if r is not q else (None, fq)
    out = set()
    for s, _ in fq:
        for t, _ in fr:
            j = _shift_candidates(s, t, var)
            if j is not None and j >= 0:
                out.add(j)
    return sorted(out)


def _dispersion_resultant(q, r, var):
    names = common_names(q, r)
    jname = "_j"
    while jname in names:
        jname += "_"
    jj = Polynomial.gen(jname, names)
    rs = r.compose({var: Polynomial.gen(var, names) + jj})
    res = q.resultant(rs, var)
    if res.is_zero():
        raise ValueError("q and r share a factor for every shift")
    roots = integer_roots(res, jname)
    out = []
    for j in sorted(z for z in roots if z >= 0):
        g = poly_gcd_raw(q, r.shift(var, j))
        if g.degree(var) > 0:
            out.append(j)
    return out


# -- linear algebra over Q(parameters) -----------------------------------------

def _as_poly_rows(matrix, rhs=None):
    """Scale each row to polynomial entries in a common ring."""
    entries = [x for row in matrix for x in row] + list(rhs or [])
    names = common_names(*[x for x in entries if isinstance(x, (Polynomial, RationalFunction))])
    ctx = _ctx(names)
    rows = []
    for i, row in enumerate(matrix):
        full = list(row) + ([rhs[i]] if rhs is not None else [])
        rfs = []
        for x in full:
            if isinstance(x, (int, Fraction)):
                x = RationalFunction.const(x, names)
            elif isinstance(x, Polynomial):
                x = RationalFunction(x)
            rfs.append(x.coerce(names) if x.names != names else x)
        den = ctx.constant(1)
        for x in rfs:
            d = x.den.rep
            if not d.is_one():
                den = den * (d / den.gcd(d))
        rows.append([x.num.rep * (den / x.den.rep) for x in rfs])
    return rows, names


def _primitive_row(row):
    g = None
    for x in row:
        if not x.is_zero():
            g = x if g is None else g.gcd(x)
            if g.is_one():
                break
    if g is None or g.is_one():
        # still normalise rational scale
        return row
    return [x / g for x in row]


def _rref(rows, ncols):
    """Fraction-free Gauss-Jordan elimination in place; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        best, best_len = None, None
        for i in range(r, nrows):
            x = rows[i][c]
            if not x.is_zero():
                ln = len(x)
                if best is None or ln < best_len:
                    best, best_len = i, ln
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        prow = rows[r]
        piv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            a = rows[i][c]
            if a.is_zero():
                continue
            g = piv.gcd(a)
            pm, am = piv / g, a / g
            rows[i] = _primitive_row([pm * x - am * y for x, y in zip(rows[i], prow)])
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def solve_linear_system(matrix, rhs) -> list:
    """One solution of ``matrix * x = rhs`` (free variables set to zero).

    Entries may be numbers, :class:`Polynomial` or :class:`RationalFunction`.
    Raises :class:`NoSolution` when the system is inconsistent.
    """
    if not matrix:
        return []
    ncols = len(matrix[0])
    rows, names = _as_poly_rows(matrix, rhs)
    pivots = _rref(rows, ncols + 1)
    if ncols in pivots:
        raise NoSolution("inconsistent linear system")
    sol = [RationalFunction.const(0, names) for _ in range(ncols)]
    for r, c in enumerate(pivots):
        sol[c] = RationalFunction(Polynomial(rows[r][ncols], names), Polynomial(rows[r][c], names))
    return sol


def nullspace(matrix, ncols=None) -> list:
    """Basis of the right kernel, one vector per free column."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    if not matrix:
        names = ()
        return [[RationalFunction.const(int(i == j), names) for i in range(ncols)]
                for j in range(ncols)]
    rows, names = _as_poly_rows(matrix)
    pivots = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [RationalFunction.const(0, names) for _ in range(ncols)]
        vec[f] = RationalFunction.const(1, names)
        for r, c in enumerate(pivots):
            x = rows[r][f]
            if not x.is_zero():
                vec[c] = RationalFunction(Polynomial(-x, names), Polynomial(rows[r][c], names))
        basis.append(vec)
    return basis
