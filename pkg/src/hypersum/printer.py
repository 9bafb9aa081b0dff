"""Linear text output in the same grammar the parser reads.

Binary ``+``/``-`` are spaced, everything else is printed tight, e.g.
``(k + 1)*binomial(k,n)/(n + 1)``.
"""

from fractions import Fraction

from .expr import (Add, Expr, Mul, Num, Pow, SumRef, Symbol, _Function)

_ADD, _MUL, _UNARY, _POW, _ATOM = 1, 2, 3, 4, 5


def _degree(e: Expr) -> int:
    if isinstance(e, (Symbol, SumRef)):
        return 1
    if isinstance(e, Num):
        return 0
    if isinstance(e, Pow):
        x = e.exp
        if isinstance(x, Num) and x.value > 0 and x.value.denominator == 1:
            return _degree(e.base) * int(x.value)
        return 0
    if isinstance(e, Mul):
        return sum(_degree(a) for a in e.args)
    return 1


def _display_terms(e: Add):
    """Descending degree; canonical order breaks ties; numbers last."""
    def key(t):
        c, rest = t.split_coeff() if isinstance(t, Mul) else (1, t)
        if isinstance(t, Num):
            return (1, 0, ())
        return (0, -_degree(rest), rest.sort_key())
    terms = sorted(e.args, key=key)
    if _is_negative(terms[0]):
        for i, t in enumerate(terms):
            if not _is_negative(t):
                terms.insert(0, terms.pop(i))
                break
    return terms


def _is_negative(t: Expr) -> bool:
    if isinstance(t, Num):
        return t.value < 0
    if isinstance(t, Mul) and isinstance(t.args[0], Num):
        return t.args[0].value < 0
    return False


def _num_str(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def to_str(e: Expr) -> str:
    return _fmt(e)[0]


def _paren(e: Expr, level: int) -> str:
    s, prec = _fmt(e)
    return f"({s})" if prec < level else s


def _fmt(e: Expr):
    """Return ``(text, precedence)``."""
    if isinstance(e, Num):
        v = e.value
        if v < 0:
            return "-" + _num_str(-v), (_UNARY if v.denominator == 1 else _MUL)
        return _num_str(v), (_ATOM if v.denominator == 1 else _MUL)
    if isinstance(e, Symbol):
        return e.name, _ATOM
    if isinstance(e, SumRef):
        if e.shift == 0:
            return f"sum({e.var})", _ATOM
        sign = "+" if e.shift > 0 else "-"
        return f"sum({e.var} {sign} {abs(e.shift)})", _ATOM
    if isinstance(e, Add):
        terms = _display_terms(e)
        out = _fmt(terms[0])[0]
        for t in terms[1:]:
            if _is_negative(t):
                out += " - " + _paren(-t, _MUL)
            else:
                out += " + " + _paren(t, _MUL)
        return out, _ADD
    if isinstance(e, Mul):
        return _fmt_mul(e)
    if isinstance(e, Pow):
        x = e.exp
        if _is_negative(x):
            return _fmt_mul(Mul((e,)))
        base = e.base
        if isinstance(base, Num):
            v = base.value
            bs = _num_str(v) if v >= 0 and v.denominator == 1 else f"({_num_str(v)})"
        else:
            bs = _paren(base, _ATOM)
        xs = _paren(x, _ATOM)
        return f"{bs}^{xs}", _POW
    if isinstance(e, _Function):
        parts = [to_str(a) for a in e.args]
        return f"{e.name}({','.join(parts)})", _ATOM
    raise TypeError(f"cannot print {type(e).__name__}")


def _fmt_mul(e: Mul):
    coeff = Fraction(1)
    num, den = [], []
    for f in e.args:
        if isinstance(f, Num):
            coeff *= f.value
        elif isinstance(f, Pow) and _is_negative(f.exp):
            x = -f.exp
            den.append(f.base if x == Num(1) else Pow(f.base, x))
        else:
            num.append(f)
    num.sort(key=lambda f: isinstance(f, SumRef))
    sign = "-" if coeff < 0 else ""
    coeff = abs(coeff)
    ns = [str(coeff.numerator)] if coeff.numerator != 1 or not num else []
    ns += [_paren(f, _POW) for f in num]
    ds = [str(coeff.denominator)] if coeff.denominator != 1 else []
    ds += [_paren(f, _POW) for f in den]
    text = "*".join(ns)
    if ds:
        dtext = ds[0] if len(ds) == 1 else "(" + "*".join(ds) + ")"
        text += "/" + dtext
    if sign:
        return sign + text, _UNARY
    return text, _MUL if (len(ns) + len(ds) > 1) else _fmt_single(ns, ds, num)


def _fmt_single(ns, ds, num):
    if len(num) == 1 and not ds:
        return _fmt(num[0])[1]
    return _MUL
