import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypersum import Recurrence, parse, sumrecursion, to_direction
from hypersum.errors import DegenerateRecurrence, UnboundedSupport
from hypersum.poly import to_rational
from hypersum.verify import (CheckReport, check_antidifference, check_certificate,
                             check_definite_sum, check_equal, check_recurrence, finite_sum,
                             recurrences_equal)
from strategies import hyper_terms

P = parse


def rec(text, var="n"):
    return Recurrence.from_expr(P(text), var)


class TestFiniteSum:
    @pytest.mark.parametrize("text,hi,want", [
        ("sub(n=0,binomial(n,k)^3)", 0, 1),
        ("sub(n=0,binomial(n,k)^2*binomial(2*k,n))", 0, 1),
        ("sub(n=1,binomial(n,k)^3)", 1, 2),
        ("sub(n=1,binomial(n,k)^2*binomial(2*k,n))", 1, 2),
    ])
    def test_initial_values(self, text, hi, want):
        assert finite_sum(P(text), "k", 0, hi) == P(str(want))

    def test_symbolic_summand(self):
        got = finite_sum(P("binomial(n,k)"), "k", 0, 2)
        assert to_rational(got) == to_rational(P("1 + n + n*(n-1)/2"))

    def test_empty_range(self):
        assert finite_sum(P("k"), "k", 5, 3) == P("0")

    def test_half_integer_gammas(self):
        got = finite_sum(P("gamma(k+1/2)"), "k", 0, 2)
        assert str(got) == "9*pi^(1/2)/4"

    @settings(max_examples=40)
    @given(hyper_terms(params=()), st.integers(0, 6), st.integers(0, 8))
    def test_two_accumulation_orders(self, e, lo, length):
        try:
            left = finite_sum(e, "k", lo, lo + length)
        except Exception:
            return
        assert finite_sum(e, "k", lo, lo + length, order="pairwise") == left


class TestAntidifference:
    def test_pass(self):
        assert check_antidifference(P("(k+1)*factorial(k)"), P("k*factorial(k)"), "k").passed

    def test_linear(self):
        assert check_antidifference(P("k"), P("1"), "k").passed

    def test_siam_problem(self):
        a = P("(-1)^(k+1)*(4*k+1)*factorial(2*k)/(factorial(k)*4^k*(2*k-1)*factorial(k+1))")
        g = P("-(-1)^k*factorial(2*k)/(4^k*factorial(k+1)*factorial(k))")
        assert check_antidifference(g, a, "k").passed

    def test_square_against_one(self):
        r = check_antidifference(P("k^2"), P("1"), "k")
        assert r.verdict == "fail" and r.evidence

    def test_fail_has_counterexample(self):
        r = check_antidifference(P("k^2"), P("k"), "k")
        assert r.verdict == "fail" and r.evidence

    def test_up(self):
        assert check_antidifference(P("k*(k-1)/2"), P("k"), "k", "up").passed


class TestRecurrenceCheck:
    def test_binomial(self):
        F = P("binomial(n,k)")
        assert check_recurrence(rec("2*sum(n-1) - sum(n)"), F, "k", "n").passed

    def test_cubes_window(self):
        r = rec("8*(n-1)^2*sum(n-2) - sum(n)*n^2 + (7*n^2-7*n+2)*sum(n-1)")
        report = check_recurrence(r, P("binomial(n,k)^3"), "k", "n", trials=1)
        assert report.passed
        assert [env["n"] for env, _, _ in report.evidence] == list(range(2, 9))

    def test_wrong_recurrence(self):
        r = check_recurrence(rec("3*sum(n-1) - sum(n)"), P("binomial(n,k)"), "k", "n")
        assert r.verdict == "fail" and r.evidence

    def test_invariant_under_scaling_and_direction(self):
        F = P("binomial(n,k)^2")
        r = sumrecursion(F, "k", "n").recurrence
        scaled = Recurrence([c * 7 for c in r.coeffs], "n", normalize=False)
        up = to_direction(r, "up")
        for variant in (r, scaled, up):
            assert check_recurrence(variant, F, "k", "n").passed

    def test_unbounded_support(self):
        with pytest.raises(UnboundedSupport):
            check_recurrence(rec("sum(n) - 2*sum(n-1)"), P("2^k*binomial(n,0)"), "k", "n")

    def test_clausen_with_explicit_support(self):
        F = P("factorial(a+k-1)*factorial(b+k-1)/(factorial(k)*factorial(-1/2+a+b+k))"
              "*factorial(a+n-k-1)*factorial(b+n-k-1)/(factorial(n-k)*factorial(-1/2+a+b+n-k))")
        res = sumrecursion(F, "k", "n")
        assert check_certificate(res.certificate, F).passed
        assert check_recurrence(res.recurrence, F, "k", "n", support=(0, P("n"))).passed

    def test_seed_recorded(self):
        r = check_recurrence(rec("2*sum(n-1) - sum(n)"), P("binomial(n,k)"), "k", "n", seed=11)
        assert r.seed == 11

    def test_zero_leading_coefficient_rejected(self):
        bad = Recurrence([P("0"), P("1")], "n", normalize=False)
        with pytest.raises(DegenerateRecurrence):
            check_recurrence(bad, P("binomial(n,k)"), "k", "n")


class TestRecurrencesEqual:
    def test_cubes_and_franel_type(self):
        r1 = sumrecursion(P("binomial(n,k)^3"), "k", "n").recurrence
        r2 = sumrecursion(P("binomial(n,k)^2*binomial(2*k,n)"), "k", "n").recurrence
        assert recurrences_equal(r1, r2)

    def test_scaled(self):
        r = rec("8*(n-1)^2*sum(n-2) - sum(n)*n^2 + (7*n^2-7*n+2)*sum(n-1)")
        scaled = Recurrence([c * 7 for c in r.coeffs], "n", normalize=False)
        assert recurrences_equal(r, scaled)

    def test_different(self):
        assert not recurrences_equal(rec("2*sum(n-1) - sum(n)"), rec("sum(n-1) - sum(n)"))

    def test_different_orders(self):
        assert not recurrences_equal(rec("2*sum(n-1) - sum(n)"), rec("sum(n-2) - sum(n)"))


class TestEqual:
    def test_equal(self):
        assert check_equal(P("binomial(n,k)"), P("factorial(n)/(factorial(k)*factorial(n-k))"))

    def test_unequal(self):
        r = check_equal(P("k^2"), P("1"))
        assert r.verdict == "fail" and r.evidence

    def test_report(self):
        d = CheckReport("pass", [], 3).to_dict()
        assert d["verdict"] == "pass" and d["evidence"] == [] and d["seed"] == 3


class TestDefiniteSum:
    def test_closed_form(self):
        assert check_definite_sum(P("n*(n+1)/2"), P("k"), "k", 1, P("n")).passed

    def test_wrong_closed_form(self):
        assert not check_definite_sum(P("n^2"), P("k"), "k", 1, P("n")).passed

    def test_exact_rational(self):
        assert check_definite_sum(P("1 - 1/(n+1)"), P("1/(k*(k+1))"), "k", 1, P("n")).passed
