import io
import json
import subprocess
import sys

import pytest

from hypersum import Recurrence, parse
from hypersum.cli import parse_list, run
from hypersum.verify import recurrences_equal


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    rc = run(list(argv), stdout=out, stderr=err)
    return rc, out.getvalue(), err.getvalue()


MESSAGES = [
    (("gosper", "factorial(k)", "k"), "Gosper algorithm: no closed form solution exists"),
    (("gosper", "factorial(k/2)", "k"), "Gosper algorithm not applicable"),
    (("gosper", "k"), "illegal number of arguments"),
    (("sumrecursion", "binomial(n,k)*binomial(6*k,n)", "k", "n"),
     "Zeilberger algorithm fails. Enlarge zb_order"),
    (("sumrecursion", "binomial(n/2,k)", "k", "n"), "Zeilberger algorithm not applicable"),
]


class TestMessages:
    @pytest.mark.parametrize("argv,message", MESSAGES)
    def test_byte_exact(self, argv, message):
        rc, out, err = call(*argv, "--no-trace")
        assert rc == 1
        assert err == message + "\n"
        assert out == ""

    def test_trace_flushed_before_failure(self):
        rc, out, err = call("gosper", "factorial(k)", "k")
        assert rc == 1
        assert out.splitlines()[-1] == "degreebound := none"

    def test_syntax_error(self):
        rc, _, err = call("gosper", "k+", "k")
        assert rc == 2 and err.startswith("syntax error:")

    def test_order_zero(self):
        rc, _, err = call("sumrecursion", "binomial(n,k)", "k", "n", "--order", "0")
        assert rc == 2 and "order" in err

    def test_not_a_symbol(self):
        rc, _, err = call("gosper", "k", "k+1")
        assert rc == 2


class TestCommands:
    def test_gosper_trace(self):
        rc, out, _ = call("gosper", "pochhammer(k-n,n)", "k", "--trace")
        assert rc == 0
        lines = out.splitlines()
        assert "degreebound := 0" in lines
        assert lines.index("degreebound := 0") < len(lines) - 1
        assert parse(lines[-1]) == parse("pochhammer(k-n,n)*k/(n+1)")

    def test_sumrecursion(self):
        rc, out, _ = call("sumrecursion", "binomial(n,k)", "k", "n", "--no-trace")
        assert rc == 0 and out == "2*sum(n - 1) - sum(n)\n"

    def test_order_six(self):
        rc, out, _ = call("sumrecursion", "binomial(n,k)*binomial(6*k,n)", "k", "n",
                          "--order", "6", "--no-trace")
        assert rc == 0
        assert Recurrence.from_expr(parse(out)).order == 6

    def test_fixed_order(self):
        rc, out, _ = call("sumrecursion", "binomial(n,k)^3", "k", "n", "--fixed-order", "2",
                          "--no-trace")
        assert rc == 0 and "sum(n - 2)" in out

    def test_hyperrecursion(self):
        rc, out, _ = call("hyperrecursion", "{-n,b}", "{c}", "1", "n", "--no-trace")
        assert rc == 0
        got = Recurrence.from_expr(parse(out))
        assert got == Recurrence.from_expr(parse("(n-1+c-b)*sum(n-1) - (n-1+c)*sum(n)"))

    def test_hyperrecursion_leading_minus(self):
        rc, out, _ = call("hyperrecursion", "-n", "", "x", "n", "--no-trace")
        assert rc == 0
        assert Recurrence.from_expr(parse(out)) == Recurrence.from_expr(
            parse("sum(n) - (1-x)*sum(n-1)"))

    def test_simplify(self):
        rc, out, _ = call("simplify", "binomial(n,k)", "--factorial")
        assert rc == 0
        assert parse(out) == parse("factorial(n)/(factorial(-(k-n))*factorial(k))")

    def test_hyperterm(self):
        rc, out, _ = call("hyperterm", "{-n,b}", "{c}", "1", "k")
        assert parse(out) == parse("pochhammer(-n,k)*pochhammer(b,k)/(pochhammer(c,k)*factorial(k))")

    @pytest.mark.parametrize("summand,hi,want", [
        ("sub(n=0,binomial(n,k)^3)", "0", "1"),
        ("sub(n=0,binomial(n,k)^2*binomial(2*k,n))", "0", "1"),
        ("sub(n=1,binomial(n,k)^3)", "1", "2"),
        ("sub(n=1,binomial(n,k)^2*binomial(2*k,n))", "1", "2"),
    ])
    def test_sum(self, summand, hi, want):
        rc, out, _ = call("sum", summand, "k", "0", hi)
        assert rc == 0 and out == want + "\n"

    def test_proof(self):
        rc, out, _ = call("gosper", "k*factorial(k)", "k", "--proof", "--no-trace")
        assert out.splitlines() == ["(k + 1)*factorial(k)", "gosper_representation:= {k,k,1,1}"]

    def test_check(self):
        rc, out, _ = call("sumrecursion", "binomial(n,k)^2", "k", "n", "--check", "--no-trace")
        assert rc == 0 and out.splitlines()[-1] == "check: pass"

    def test_definite(self):
        rc, out, _ = call("gosper", "k", "k", "1", "n", "--no-trace", "--check")
        assert rc == 0
        assert parse(out.splitlines()[0]) == parse("n*(n+1)/2")


class TestJson:
    def test_schema(self):
        rc, out, _ = call("sumrecursion", "binomial(n,k)^2", "k", "n", "--json", "--check")
        d = json.loads(out)
        assert set(d) == {"result", "certificate", "recurrence", "check", "trace"}
        assert {"p", "q", "r", "f"} <= set(d["certificate"])
        assert d["recurrence"]["order"] == 1
        assert d["check"]["verdict"] == "pass"
        assert "Zeilberger algorithm successful" in d["trace"]

    @pytest.mark.parametrize("argv", [
        ("gosper", "pochhammer(k-n,n)", "k"),
        ("sumrecursion", "binomial(n,k)^3", "k", "n"),
        ("simplify", "binomial(n,k)"),
    ])
    def test_json_matches_text(self, argv):
        _, text, _ = call(*argv, "--no-trace")
        _, js, _ = call(*argv, "--no-trace", "--json")
        assert parse(json.loads(js)["result"]) == parse(text.strip())


class TestDirection:
    @pytest.mark.parametrize("summand", ["binomial(n,k)^2", "binomial(n,k)^3", "binomial(n,k)"])
    def test_up_and_down_agree(self, summand):
        _, down, _ = call("sumrecursion", summand, "k", "n", "--no-trace")
        _, up, _ = call("sumrecursion", summand, "k", "n", "--no-trace", "--direction", "up")
        r_down = Recurrence.from_expr(parse(down), direction="down")
        r_up = Recurrence.from_expr(parse(up), direction="up")
        assert recurrences_equal(r_down, r_up)

    def test_prompt_up_output(self):
        _, up, _ = call("sumrecursion", "binomial(n,k)^2", "k", "n", "--no-trace",
                        "--direction", "up")
        assert Recurrence.from_expr(parse(up)) == Recurrence.from_expr(
            parse("sum(n+1)*n + sum(n+1) - 4*sum(n)*n - 2*sum(n)"))


def test_parse_list():
    assert parse_list("{-n, b}") == [parse("-n"), parse("b")]
    assert parse_list("") == []
    assert parse_list("binomial(n,2),c") == [parse("binomial(n,2)"), parse("c")]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hypersum", "sumrecursion", "binomial(n,k)",
                           "k", "n", "--no-trace"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "2*sum(n - 1) - sum(n)\n"
