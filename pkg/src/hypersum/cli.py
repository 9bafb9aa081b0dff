"""Command line interface.

    hypersum gosper EXPR K [M N]
    hypersum sumrecursion EXPR K N
    hypersum hyperrecursion UPPER LOWER X N
    hypersum simplify EXPR
    hypersum hyperterm UPPER LOWER X K
    hypersum sum EXPR K LO HI

Tracing is on by default; ``--no-trace`` silences it.  Algorithm failures
print their message on stderr and exit with status 1, malformed input
exits with status 2.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import Config, Trace, null_trace
from .errors import (AlgorithmFailure, ArityError, HypersumError, ParseError,
                     PoleError, UnboundedSupport)
from .expr import Expr, Symbol
from .gosper import gosper, gosper_definite
from .hyper import HyperSpec, hyperrecursion, hyperterm
from .normalize import gamma_to_factorial, simplify_combinatorial
from .parser import parse
from .verify import (CheckReport, check_antidifference, check_certificate,
                     check_definite_sum, check_equal, check_recurrence,
                     finite_sum)
from .zeilberger import sumrecursion

ARITY_MESSAGE = ArityError.message

# subcommand -> allowed numbers of positional arguments
_ARITIES = {
    "gosper": (2, 4),
    "sumrecursion": (3,),
    "hyperrecursion": (4,),
    "simplify": (1,),
    "hyperterm": (4,),
    "sum": (4,),
}

_HELP = {
    "gosper": "EXPR K [M N]: antidifference, or the definite sum from M to N",
    "sumrecursion": "EXPR K N: recurrence in N for the sum over K",
    "hyperrecursion": "UPPER LOWER X N: recurrence for pFq with comma-separated parameter lists",
    "simplify": "EXPR: simplify_combinatorial",
    "hyperterm": "UPPER LOWER X K: the pFq summand",
    "sum": "EXPR K LO HI: exact finite sum",
}


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypersum",
        description="Gosper and Zeilberger summation of hypergeometric terms.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, text in _HELP.items():
        p = sub.add_parser(name, help=text, description=text)
        p.add_argument("args", nargs="*", metavar="ARG")
        p.add_argument("--trace", action=argparse.BooleanOptionalAction, default=True,
                       help="print intermediate results (default: on)")
        p.add_argument("--direction", choices=("down", "up"), default="down")
        p.add_argument("--order", type=int, default=5,
                       help="largest recurrence order searched (default: 5)")
        p.add_argument("--fixed-order", type=int, default=None, metavar="J",
                       help="search only for a recurrence of order J")
        p.add_argument("--no-factor", dest="factor", action="store_false",
                       help="do not factor the output")
        p.add_argument("--proof", action="store_true",
                       help="also print the Gosper/Zeilberger representation")
        p.add_argument("--check", action="store_true",
                       help="verify the result independently")
        p.add_argument("--json", action="store_true", help="emit one JSON object")
        p.add_argument("--seed", type=int, default=0, help="seed for --check sampling")
        if name == "simplify":
            p.add_argument("--factorial", action="store_true",
                           help="rewrite gamma(x) as factorial(x - 1)")
    return parser


def parse_list(text: str) -> list:
    """``"{-n, b}"`` or ``"-n,b"`` to a list of expressions; commas inside parentheses stay."""
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    items, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            items.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    items.append("".join(cur))
    if len(items) == 1 and not items[0].strip():
        return []
    return [parse(s) for s in items]


def _symbol(text: str) -> str:
    e = parse(text)
    if not isinstance(e, Symbol):
        raise UsageError(f"{text!r} is not a symbol")
    return e.name


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{text!r} is not an integer") from None


class Output:
    """Collects everything a command produces."""

    def __init__(self, cfg: Config):
        self.cfg = cfg
        self.trace = Trace() if cfg.trace else null_trace()
        self.result: Expr | None = None
        self.certificate = None
        self.recurrence = None
        self.check = None
        self.extra: list = []

    def to_dict(self) -> dict:
        return {
            "result": None if self.result is None else str(self.result),
            "certificate": self.certificate,
            "recurrence": self.recurrence,
            "check": None if self.check is None else self.check.to_dict(),
            "trace": self.trace.lines(),
        }

    def text_lines(self) -> list:
        out = list(self.trace.lines())
        if self.result is not None:
            out.append(str(self.result))
        out.extend(self.extra)
        if self.check is not None:
            out.append(f"check: {self.check.verdict}")
            for env, lhs, rhs in self.check.evidence if self.check.verdict == "fail" else []:
                vals = ", ".join(f"{k}={v}" for k, v in env.items())
                out.append(f"  counterexample {vals}: {lhs} != {rhs}")
        return out


def _cert_line(name: str, cert: dict) -> str:
    return f"{name}:= {{{cert['p']},{cert['q']},{cert['r']},{cert['f']}}}"


def _run_gosper(args, cfg, out, seed, check):
    a, k = parse(args[0]), _symbol(args[1])
    if len(args) == 4:
        m, n = parse(args[2]), parse(args[3])
        out.result = gosper_definite(a, k, m, n, trace=out.trace)
        anti = gosper(a, k, direction="down")
    else:
        anti = gosper(a, k, direction=cfg.direction, trace=out.trace, factor=cfg.factor)
        out.result = anti.g
    out.certificate = anti.form.to_dict()
    if cfg.proof:
        out.extra.append(_cert_line("gosper_representation", out.certificate))
    if check:
        if len(args) == 4:
            out.check = check_definite_sum(out.result, a, k, m, n, seed)
        else:
            out.check = check_antidifference(anti.g, a, k, anti.direction, seed=seed)


def _recurrence_output(res, F, k, n, cfg, out, seed, check):
    rec = res.recurrence
    out.result = rec.to_expr(cfg.factor)
    out.recurrence = rec.to_dict()
    out.certificate = res.certificate.to_dict()
    if cfg.proof:
        out.extra.append(_cert_line("zeilberger_representation", out.certificate))
    if check:
        report = check_certificate(res.certificate, F)
        if report.passed:
            try:
                report = check_recurrence(rec, F, k, n, seed=seed,
                                          certificate=res.certificate)
            except UnboundedSupport:
                report = CheckReport("skipped-pole")
            if report.verdict == "skipped-pole":
                report = check_certificate(res.certificate, F)
        out.check = report


def _max_order(cfg, fixed):
    if fixed is not None and fixed < 1:
        raise UsageError("the recurrence order must be at least 1")
    if cfg.order < 1:
        raise UsageError("the recurrence order must be at least 1")
    return cfg.order


def _run_sumrecursion(args, cfg, out, seed, check, fixed):
    F, k, n = parse(args[0]), _symbol(args[1]), _symbol(args[2])
    res = sumrecursion(F, k, n, order=fixed, max_order=_max_order(cfg, fixed),
                       trace=out.trace, direction=cfg.direction)
    _recurrence_output(res, F, k, n, cfg, out, seed, check)


def _run_hyperrecursion(args, cfg, out, seed, check, fixed):
    spec = HyperSpec(parse_list(args[0]), parse_list(args[1]), parse(args[2]))
    n = _symbol(args[3])
    res = hyperrecursion(spec, n, order=fixed, max_order=_max_order(cfg, fixed),
                         trace=out.trace, direction=cfg.direction)
    _recurrence_output(res, res.summand, res.certificate.k, n, cfg, out, seed, check)


def _run_simplify(args, cfg, out, seed, check, factorial=False):
    e = parse(args[0])
    r = simplify_combinatorial(e)
    if factorial:
        r = gamma_to_factorial(r)
    out.result = r
    if check:
        out.check = check_equal(e, r, seed)


def _run_hyperterm(args, cfg, out, seed, check):
    spec = HyperSpec(parse_list(args[0]), parse_list(args[1]), parse(args[2]))
    out.result = hyperterm(spec, _symbol(args[3]))


def _run_sum(args, cfg, out, seed, check):
    F, k = parse(args[0]), _symbol(args[1])
    lo, hi = _int(args[2]), _int(args[3])
    out.result = finite_sum(F, k, lo, hi)
    if check:
        other = finite_sum(F, k, lo, hi, order="pairwise")
        ok = other == out.result
        out.check = CheckReport("pass" if ok else "fail",
                                [] if ok else [({}, out.result, other)], seed, "pairwise")


def run(argv=None, stdout=None, stderr=None) -> int:
    """Run one command; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        ns = parser.parse_args([_protect(a) for a in argv])
    except SystemExit as exc:
        return int(exc.code or 0)
    if len(ns.args) not in _ARITIES[ns.command]:
        print(ARITY_MESSAGE, file=stderr)
        return 1
    try:
        cfg = Config(trace=ns.trace, direction=ns.direction,
                     order=ns.order, factor=ns.factor, proof=ns.proof)
    except ValueError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    out = Output(cfg)
    common = (ns.args, cfg, out, ns.seed, ns.check)
    try:
        cmd = ns.command
        if cmd == "gosper":
            _run_gosper(*common)
        elif cmd == "sumrecursion":
            _run_sumrecursion(*common, ns.fixed_order)
        elif cmd == "hyperrecursion":
            _run_hyperrecursion(*common, ns.fixed_order)
        elif cmd == "simplify":
            _run_simplify(*common, ns.factorial)
        elif cmd == "hyperterm":
            _run_hyperterm(*common)
        else:
            _run_sum(*common)
    except ArityError:
        _flush_trace(out, ns, stdout)
        print(ARITY_MESSAGE, file=stderr)
        return 1
    except ParseError as exc:
        print(f"syntax error: {exc}", file=stderr)
        return 2
    except AlgorithmFailure as exc:
        _flush_trace(out, ns, stdout)
        print(str(exc), file=stderr)
        return 1
    except PoleError as exc:
        _flush_trace(out, ns, stdout)
        print(f"pole: {exc}", file=stderr)
        return 1
    except (UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except HypersumError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    if ns.json:
        print(json.dumps(out.to_dict(), indent=2), file=stdout)
    else:
        for line in out.text_lines():
            print(line, file=stdout)
    if out.check is not None and out.check.verdict == "fail":
        return 1
    return 0


def _protect(arg: str) -> str:
    """Keep expressions such as ``-n`` or ``-1/2`` from being read as options."""
    if arg.startswith("-") and not arg.startswith("--") and arg != "-h":
        return " " + arg
    return arg


def _flush_trace(out, ns, stdout):
    if not ns.json:
        for line in out.trace.lines():
            print(line, file=stdout)


def main() -> None:
    sys.exit(run())
