"""Recursive-descent parser for the linear expression grammar.

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := unary (('*'|'/') unary)*
    unary   := '-' unary | '+' unary | power
    power   := atom ['^' unary]
    atom    := INT | NAME | NAME '(' args ')' | '(' expr ')' | '{' list '}'

Recognised calls: factorial, gamma, binomial, pochhammer, prod, sub,
hyperterm and the recurrence token ``sum(n + j)``.
"""

import re

from .errors import ArityError, ParseError
from .expr import (Num, Substitution, SumRef, Symbol, add, make_binomial,
                   make_factorial, make_gamma, make_pochhammer, make_prod, mul,
                   neg, pow_, sub, substitute, expand)

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^(),={}]))")

_ARITY = {
    "factorial": 1, "gamma": 1, "binomial": 2, "pochhammer": 2, "prod": 4,
    "sub": 2, "hyperterm": 4, "sum": 1,
}


def _tokenize(text):
    pos, out = 0, []
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:]
            if rest.strip():
                col = pos + len(rest) - len(rest.lstrip())
                raise ParseError(f"unexpected character {text[col]!r}", col, text)
            break
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", m.group(1), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            out.append(("op", op, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def accept(self, op):
        t = self.peek()
        if t[0] == "op" and t[1] == op:
            self.i += 1
            return True
        return False

    def expect(self, op):
        t = self.peek()
        if not self.accept(op):
            what = t[1] or "end of input"
            raise ParseError(f"expected {op!r}, found {what!r}", t[2], self.text)

    def error(self, msg):
        raise ParseError(msg, self.peek()[2], self.text)

    def parse(self):
        e = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self):
        terms = [self.term()]
        while True:
            if self.accept("+"):
                terms.append(self.term())
            elif self.accept("-"):
                terms.append(neg(self.term()))
            else:
                return add(*terms)

    def term(self):
        # factors are collected and multiplied in one call so that
        # "2*(a + b)*c" keeps the coefficient outside the sum, as printed
        sign = 1
        while True:
            if self.accept("-"):
                sign = -sign
            elif not self.accept("+"):
                break
        factors = [Num(sign), self.power()]
        while True:
            if self.accept("*"):
                factors.append(self.unary())
            elif self.accept("/"):
                t = self.peek()
                d = self.unary()
                if d == Num(0):
                    raise ParseError("division by zero", t[2], self.text)
                factors.append(pow_(d, Num(-1)))
            else:
                return mul(*factors)

    def unary(self):
        if self.accept("-"):
            return neg(self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.accept("^"):
            t = self.peek()
            try:
                return pow_(base, self.unary())
            except ZeroDivisionError:
                raise ParseError("0 raised to a negative power", t[2], self.text) from None
        return base

    def atom(self):
        kind, val, pos = self.next()
        if kind == "int":
            return Num(int(val))
        if kind == "name":
            if self.peek()[0] == "op" and self.peek()[1] == "(":
                return self.call(val, pos)
            return Symbol(val)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "op" and val == "{":
            self.i -= 1
            self.error("a parameter list is only allowed as a hyperterm argument")
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos, self.text)

    def list_arg(self):
        self.expect("{")
        items = []
        if not self.accept("}"):
            items.append(self.expr())
            while self.accept(","):
                items.append(self.expr())
            self.expect("}")
        return items

    def call(self, name, pos):
        self.expect("(")
        if name == "sub":
            return self.call_sub(pos)
        args = []
        if name == "hyperterm":
            args = self.hyper_args()
        elif not (self.peek()[0] == "op" and self.peek()[1] == ")"):
            args.append(self.expr())
            while self.accept(","):
                args.append(self.expr())
        self.expect(")")
        if name not in _ARITY:
            raise ParseError(f"unknown function {name!r}", pos, self.text)
        if len(args) != _ARITY[name]:
            raise ArityError(name, pos, self.text)
        return self.build(name, args, pos)

    def hyper_args(self):
        args = []
        for i in range(4):
            if i:
                if not self.accept(","):
                    raise ArityError("hyperterm", self.peek()[2], self.text)
            if i < 2:
                args.append(self.list_arg())
            else:
                args.append(self.expr())
        return args

    def call_sub(self, pos):
        t = self.next()
        if t[0] != "name":
            raise ParseError("expected a symbol in sub(...)", t[2], self.text)
        self.expect("=")
        rep = self.expr()
        if not self.accept(","):
            raise ArityError("sub", pos, self.text)
        body = self.expr()
        self.expect(")")
        return substitute(body, Substitution(t[1], rep))

    def build(self, name, args, pos):
        if name == "factorial":
            return make_factorial(args[0])
        if name == "gamma":
            return make_gamma(args[0])
        if name == "binomial":
            return make_binomial(*args)
        if name == "pochhammer":
            return make_pochhammer(*args)
        if name == "prod":
            body, idx, lo, hi = args
            if not isinstance(idx, Symbol):
                raise ParseError("product index must be a symbol", pos, self.text)
            try:
                return make_prod(body, idx, lo, hi)
            except ValueError as exc:
                raise ParseError(str(exc), pos, self.text) from None
        if name == "hyperterm":
            from .hyper import HyperSpec, hyperterm
            upper, lower, x, k = args
            if not isinstance(k, Symbol):
                raise ParseError("hyperterm index must be a symbol", pos, self.text)
            return hyperterm(HyperSpec(upper, lower, x), k)
        if name == "sum":
            d = expand(args[0])
            syms = [a for a in (d.args if d.rank == 5 else (d,)) if isinstance(a, Symbol)]
            if len(syms) == 1:
                shift = sub(d, syms[0])
                if isinstance(shift, Num) and shift.value.denominator == 1:
                    return SumRef(syms[0].name, int(shift.value))
            raise ParseError("sum(...) takes a symbol plus an integer shift", pos, self.text)
        raise ParseError(f"unknown function {name!r}", pos, self.text)


def parse(text: str):
    """Parse expression text into a canonical :class:`~hypersum.expr.Expr`."""
    if not isinstance(text, str):
        raise TypeError("parse() expects a string")
    return _Parser(text).parse()
