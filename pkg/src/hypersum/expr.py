"""Immutable symbolic expression trees with canonical arithmetic.

Every constructor in this module returns a canonical tree: sums and products
are flattened, like terms and like bases are collected, numbers are folded
and operands are sorted under a fixed total order. Two canonical trees are
equal exactly when they are structurally equal.

Polynomial products are *not* multiplied out on construction; use
:func:`expand` for the distributed form.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial as _int_factorial
from typing import Union

__all__ = [
    "Expr", "Num", "Symbol", "SumRef", "Pow", "Mul", "Add", "Factorial",
    "Gamma", "Binomial", "Pochhammer", "Prod", "Substitution",
    "as_expr", "add", "mul", "pow_", "neg", "sub", "div", "expand",
    "substitute", "free_symbols", "has_symbol", "symbols", "ZERO", "ONE",
    "falling_factorial", "integer_binomial",
]

Number = Union[int, Fraction]


class Expr:
    """Base class of all expression nodes."""

    __slots__ = ("_hash", "_key")
    rank = -1

    @property
    def args(self) -> tuple:
        raise NotImplementedError

    def sort_key(self):
        try:
            return self._key
        except AttributeError:
            k = self._make_key()
            object.__setattr__(self, "_key", k)
            return k

    def _make_key(self):
        return (self.rank,) + tuple(a.sort_key() for a in self.args)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((type(self).__name__, self.sort_key()))
            object.__setattr__(self, "_hash", h)
            return h

    def __eq__(self, other):
        if self is other:
            return True
        if isinstance(other, (int, Fraction)):
            other = Num(other)
        if not isinstance(other, Expr) or type(other) is not type(self):
            return False
        return hash(self) == hash(other) and self.sort_key() == other.sort_key()

    def __ne__(self, other):
        return not self == other

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    # arithmetic sugar
    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return add(self, neg(as_expr(other)))

    def __rsub__(self, other):
        return add(as_expr(other), neg(self))

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        return div(self, as_expr(other))

    def __rtruediv__(self, other):
        return div(as_expr(other), self)

    def __pow__(self, other):
        return pow_(self, as_expr(other))

    def __neg__(self):
        return neg(self)

    def __str__(self):
        from .printer import to_str
        return to_str(self)

    def __repr__(self):
        return f"{type(self).__name__}<{self}>"

    @property
    def is_number(self):
        return False


class Num(Expr):
    """Integer or rational literal (always reduced)."""

    __slots__ = ("value",)
    rank = 0

    def __init__(self, value: Number):
        if not isinstance(value, Fraction):
            value = Fraction(value)
        object.__setattr__(self, "value", value)

    @property
    def args(self):
        return ()

    def _make_key(self):
        return (0, self.value)

    @property
    def is_number(self):
        return True

    @property
    def is_integer(self):
        return self.value.denominator == 1

    @property
    def kind(self):
        return "Integer" if self.is_integer else "Rational"


class Symbol(Expr):
    __slots__ = ("name",)
    rank = 1

    def __init__(self, name: str):
        object.__setattr__(self, "name", name)

    @property
    def args(self):
        return ()

    def _make_key(self):
        return (1, self.name)


class SumRef(Expr):
    """The token ``sum(var + shift)`` appearing in printed recurrences."""

    __slots__ = ("var", "shift")
    rank = 2

    def __init__(self, var: str, shift: int = 0):
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "shift", int(shift))

    @property
    def args(self):
        return ()

    def _make_key(self):
        return (2, self.var, self.shift)


class Pow(Expr):
    __slots__ = ("base", "exp")
    rank = 3

    def __init__(self, base, exp):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "exp", exp)

    @property
    def args(self):
        return (self.base, self.exp)


class Mul(Expr):
    __slots__ = ("_args",)
    rank = 4

    def __init__(self, args):
        object.__setattr__(self, "_args", tuple(args))

    @property
    def args(self):
        return self._args

    def split_coeff(self):
        """Return ``(numeric coefficient, rest)``."""
        first = self._args[0]
        if isinstance(first, Num):
            rest = self._args[1:]
            return first.value, (rest[0] if len(rest) == 1 else Mul(rest))
        return Fraction(1), self


class Add(Expr):
    __slots__ = ("_args",)
    rank = 5

    def __init__(self, args):
        object.__setattr__(self, "_args", tuple(args))

    @property
    def args(self):
        return self._args


class _Function(Expr):
    __slots__ = ("_args",)
    name = ""
    nargs = 1

    def __init__(self, *args):
        object.__setattr__(self, "_args", tuple(args))

    @property
    def args(self):
        return self._args


class Factorial(_Function):
    __slots__ = ()
    rank = 6
    name = "factorial"

    @property
    def arg(self):
        return self._args[0]


class Gamma(_Function):
    __slots__ = ()
    rank = 7
    name = "gamma"

    @property
    def arg(self):
        return self._args[0]


class Binomial(_Function):
    __slots__ = ()
    rank = 8
    name = "binomial"
    nargs = 2

    @property
    def top(self):
        return self._args[0]

    @property
    def bottom(self):
        return self._args[1]


class Pochhammer(_Function):
    __slots__ = ()
    rank = 9
    name = "pochhammer"
    nargs = 2

    @property
    def base(self):
        return self._args[0]

    @property
    def count(self):
        return self._args[1]


class Prod(_Function):
    """``prod(body, index, lower, upper)``: product of body for index in [lower, upper]."""

    __slots__ = ()
    rank = 10
    name = "prod"
    nargs = 4

    @property
    def body(self):
        return self._args[0]

    @property
    def index(self) -> Symbol:
        return self._args[1]

    @property
    def lower(self):
        return self._args[2]

    @property
    def upper(self):
        return self._args[3]


ZERO = Num(0)
ONE = Num(1)
MINUS_ONE = Num(-1)


def as_expr(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not expressions")
    if isinstance(x, (int, Fraction)):
        return Num(x)
    if isinstance(x, str):
        from .parser import parse
        return parse(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Expr")


def symbols(names: str):
    out = tuple(Symbol(s) for s in names.replace(",", " ").split())
    return out[0] if len(out) == 1 else out


def _sorted(args):
    return sorted(args, key=lambda a: a.sort_key())


# -- canonical constructors -------------------------------------------------

def _coeff_rest(t: Expr):
    if isinstance(t, Mul):
        return t.split_coeff()
    return Fraction(1), t


def _with_coeff(c: Fraction, rest: Expr) -> Expr:
    if c == 1:
        return rest
    if isinstance(rest, Mul):
        return Mul((Num(c),) + rest.args)
    return Mul((Num(c), rest))


def add(*terms) -> Expr:
    const = Fraction(0)
    coeffs: dict = {}
    stack = list(terms)
    stack.reverse()
    while stack:
        t = stack.pop()
        t = as_expr(t)
        if isinstance(t, Add):
            stack.extend(reversed(t.args))
            continue
        if isinstance(t, Num):
            const += t.value
            continue
        c, rest = _coeff_rest(t)
        coeffs[rest] = coeffs.get(rest, 0) + c
    out = [_with_coeff(c, r) for r, c in coeffs.items() if c != 0]
    out.sort(key=lambda t: _coeff_rest(t)[1].sort_key())
    if const != 0:
        out.insert(0, Num(const))
    if not out:
        return ZERO
    if len(out) == 1:
        return out[0]
    return Add(out)


def _is_int(e: Expr) -> bool:
    return isinstance(e, Num) and e.value.denominator == 1


def mul(*factors) -> Expr:
    coeff = Fraction(1)
    bases: dict = {}
    order = []
    stack = list(factors)
    stack.reverse()
    while stack:
        f = as_expr(stack.pop())
        if isinstance(f, Mul):
            stack.extend(reversed(f.args))
            continue
        if isinstance(f, Num):
            coeff *= f.value
            if coeff == 0:
                return ZERO
            continue
        if isinstance(f, Pow):
            b, e = f.base, f.exp
        else:
            b, e = f, ONE
        if b not in bases:
            bases[b] = []
            order.append(b)
        bases[b].append(e)
    out = []
    for b in order:
        exps = bases[b]
        e = exps[0] if len(exps) == 1 else add(*exps)
        p = pow_(b, e)
        if isinstance(p, Num):
            coeff *= p.value
            if coeff == 0:
                return ZERO
        elif isinstance(p, Mul):
            c, rest = p.split_coeff()
            coeff *= c
            out.extend(rest.args if isinstance(rest, Mul) else (rest,))
        else:
            out.append(p)
    if len(out) != len({(_base_of(f)) for f in out}):
        # a power split produced a base already present; recombine
        return mul(Num(coeff), *out)
    out = _sorted(out)
    if not out:
        return Num(coeff)
    if len(out) == 1:
        f = out[0]
        if coeff == 1:
            return f
        if isinstance(f, Add):
            return add(*(mul(Num(coeff), t) for t in f.args))
    if coeff == 1:
        return Mul(out)
    return Mul([Num(coeff)] + out)


def _base_of(f: Expr) -> Expr:
    return f.base if isinstance(f, Pow) else f


def _num_pow(b: Fraction, e: Fraction):
    """``b**e`` for rational b and e, or None when not rational."""
    if e.denominator == 1:
        if b == 0 and e < 0:
            raise ZeroDivisionError("0 raised to a negative power")
        return b ** int(e)
    return None


def pow_(base, exp) -> Expr:
    base, exp = as_expr(base), as_expr(exp)
    if exp == ZERO:
        return ONE
    if exp == ONE:
        return base
    if isinstance(base, Num):
        if base.value == 1:
            return ONE
        if isinstance(exp, Num):
            v = _num_pow(base.value, exp.value)
            if v is not None:
                return Num(v)
        return Pow(base, exp)
    if isinstance(base, Pow):
        inner = base.exp
        if _is_int(exp) or (_is_int(inner) and not isinstance(exp, Num)):
            return pow_(base.base, mul(inner, exp))
        return Pow(base, exp)
    if isinstance(base, Mul) and (_is_int(exp) or not isinstance(exp, Num)):
        c, rest = base.split_coeff()
        parts = [pow_(f, exp) for f in (rest.args if isinstance(rest, Mul) else (rest,))]
        if c != 1:
            parts.insert(0, pow_(Num(c), exp))
        return mul(*parts)
    return Pow(base, exp)


def neg(e) -> Expr:
    return mul(MINUS_ONE, e)


def sub(a, b) -> Expr:
    return add(a, neg(as_expr(b)))


def div(a, b) -> Expr:
    b = as_expr(b)
    if b == ZERO:
        raise ZeroDivisionError("division by zero")
    return mul(a, pow_(b, MINUS_ONE))


# -- integer helpers used when folding special functions ------------------

def falling_factorial(x, m: int):
    out = 1
    for i in range(m):
        out *= x - i
    return out


def integer_binomial(n: Fraction, k: int) -> Fraction:
    """binomial(n, k) for integer k and rational n (zero for k < 0)."""
    if k < 0:
        return Fraction(0)
    return Fraction(falling_factorial(Fraction(n), k)) / _int_factorial(k)


def make_factorial(x) -> Expr:
    x = as_expr(x)
    if _is_int(x) and x.value >= 0:
        return Num(_int_factorial(int(x.value)))
    return Factorial(x)


def make_gamma(x) -> Expr:
    x = as_expr(x)
    if _is_int(x) and x.value > 0:
        return Num(_int_factorial(int(x.value) - 1))
    return Gamma(x)


def make_binomial(n, k) -> Expr:
    n, k = as_expr(n), as_expr(k)
    if _is_int(k) and isinstance(n, Num):
        return Num(integer_binomial(n.value, int(k.value)))
    if _is_int(k) and k.value < 0:
        return ZERO
    if k == ZERO:
        return ONE
    return Binomial(n, k)


def make_pochhammer(a, m) -> Expr:
    a, m = as_expr(a), as_expr(m)
    if m == ZERO:
        return ONE
    if _is_int(m) and isinstance(a, Num):
        mm = int(m.value)
        if mm > 0:
            return Num(falling_factorial(a.value + mm - 1, mm))
        den = falling_factorial(a.value - 1, -mm)
        if den == 0:
            return Pochhammer(a, m)
        return Num(Fraction(1) / den)
    return Pochhammer(a, m)


_fresh_counter = [0]


def make_prod(body, index, lower, upper) -> Expr:
    body, lower, upper = as_expr(body), as_expr(lower), as_expr(upper)
    if isinstance(index, str):
        index = Symbol(index)
    if not isinstance(index, Symbol):
        raise TypeError("product index must be a symbol")
    if has_symbol(lower, index.name) or has_symbol(upper, index.name):
        raise ValueError("product index occurs in its own bounds")
    if _is_int(lower) and _is_int(upper) and upper.value == lower.value - 1:
        return ONE
    if not has_symbol(body, index.name) and body == ONE:
        return ONE
    return Prod(body, index, lower, upper)


_CONSTRUCTORS = {
    Factorial: make_factorial,
    Gamma: make_gamma,
    Binomial: make_binomial,
    Pochhammer: make_pochhammer,
}


def rebuild(e: Expr, args) -> Expr:
    """Reconstruct a node of the same kind as ``e`` from new children."""
    if isinstance(e, Add):
        return add(*args)
    if isinstance(e, Mul):
        return mul(*args)
    if isinstance(e, Pow):
        return pow_(*args)
    if isinstance(e, Prod):
        return make_prod(*args)
    ctor = _CONSTRUCTORS.get(type(e))
    if ctor is not None:
        return ctor(*args)
    return e


# -- traversal --------------------------------------------------------------

def free_symbols(e: Expr) -> set:
    if isinstance(e, Symbol):
        return {e.name}
    if isinstance(e, SumRef):
        return {e.var}
    if isinstance(e, Prod):
        inner = free_symbols(e.body) - {e.index.name}
        return inner | free_symbols(e.lower) | free_symbols(e.upper)
    out = set()
    for a in e.args:
        out |= free_symbols(a)
    return out


def has_symbol(e: Expr, name: str) -> bool:
    if isinstance(e, Symbol):
        return e.name == name
    if isinstance(e, (Num, SumRef)):
        return isinstance(e, SumRef) and e.var == name
    if isinstance(e, Prod):
        if e.index.name == name:
            return has_symbol(e.lower, name) or has_symbol(e.upper, name)
    return any(has_symbol(a, name) for a in e.args)


def walk(e: Expr):
    yield e
    for a in e.args:
        yield from walk(a)


# -- expansion ------------------------------------------------------------

def _terms(e: Expr):
    return e.args if isinstance(e, Add) else (e,)


def _mul_expanded(a: Expr, b: Expr) -> Expr:
    if not isinstance(a, Add) and not isinstance(b, Add):
        return mul(a, b)
    return add(*(mul(x, y) for x in _terms(a) for y in _terms(b)))


def expand(e: Expr) -> Expr:
    """Multiply out products and positive integer powers of sums.

    Function arguments are expanded as well; negative powers keep their
    (expanded) base.
    """
    if isinstance(e, (Num, Symbol, SumRef)):
        return e
    if isinstance(e, Add):
        return add(*(expand(a) for a in e.args))
    if isinstance(e, Mul):
        acc = ONE
        for f in e.args:
            acc = _mul_expanded(acc, expand(f))
        return acc
    if isinstance(e, Pow):
        b, x = expand(e.base), expand(e.exp)
        if isinstance(b, Add) and _is_int(x) and x.value > 0:
            acc = b
            for _ in range(int(x.value) - 1):
                acc = _mul_expanded(acc, b)
            return acc
        return pow_(b, x)
    return rebuild(e, [expand(a) for a in e.args])


# -- substitution -----------------------------------------------------------

class Substitution:
    """Replace every free occurrence of ``target`` by ``replacement``."""

    __slots__ = ("target", "replacement")

    def __init__(self, target, replacement):
        if isinstance(target, Symbol):
            target = target.name
        replacement = as_expr(replacement)
        if any(isinstance(x, SumRef) for x in walk(replacement)):
            raise ValueError("replacement may not contain sum(...) references")
        self.target = target
        self.replacement = replacement

    def __repr__(self):
        return f"Substitution({self.target}={self.replacement})"


def _fresh_index(avoid: set, base: str) -> Symbol:
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return Symbol(f"{base}{i}")


def _subst(e: Expr, name: str, rep: Expr, rep_free: set) -> Expr:
    if isinstance(e, Symbol):
        return rep if e.name == name else e
    if isinstance(e, Num):
        return e
    if isinstance(e, SumRef):
        if e.var != name:
            return e
        delta = expand(sub(rep, Symbol(name)))
        if _is_int(delta):
            return SumRef(e.var, e.shift + int(delta.value))
        raise ValueError("sum(...) can only be shifted by an integer")
    if isinstance(e, Prod):
        lo = _subst(e.lower, name, rep, rep_free)
        hi = _subst(e.upper, name, rep, rep_free)
        idx, body = e.index, e.body
        if idx.name != name:
            if idx.name in rep_free:
                new = _fresh_index(rep_free | free_symbols(body), idx.name)
                body = _subst(body, idx.name, new, {new.name})
                idx = new
            body = _subst(body, name, rep, rep_free)
        return make_prod(body, idx, lo, hi)
    if not has_symbol(e, name):
        return e
    return rebuild(e, [_subst(a, name, rep, rep_free) for a in e.args])


def substitute(e, s, replacement=None) -> Expr:
    """Capture-free substitution followed by expansion.

    Accepts either a :class:`Substitution` or ``(e, target, replacement)``.
    """
    e = as_expr(e)
    if not isinstance(s, Substitution):
        s = Substitution(s, replacement)
    out = _subst(e, s.target, s.replacement, free_symbols(s.replacement))
    return expand(out)


def substitute_many(e, mapping: dict) -> Expr:
    """Simultaneous substitution of several symbols (no expansion)."""
    e = as_expr(e)
    if not mapping:
        return e
    tmp = {}
    for i, name in enumerate(mapping):
        t = Symbol(f"__tmp{i}__")
        e = _subst(e, name, t, {t.name})
        tmp[t.name] = as_expr(mapping[name])
    for tname, rep in tmp.items():
        e = _subst(e, tname, rep, free_symbols(rep))
    return e
