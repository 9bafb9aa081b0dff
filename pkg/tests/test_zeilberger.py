import pytest
from hypothesis import assume, given, settings

from hypersum import (HyperSpec, Recurrence, Trace, first_order_closed_form, hyperterm,
                      parse, sumrecursion, to_direction)
from hypersum.errors import DegenerateRecurrence, OrderExceeded, ZeilbergerNotApplicable
from hypersum.expr import mul
from hypersum.verify import (check_certificate, check_recurrence, finite_sum,
                             recurrences_equal)
from strategies import bivariate_summands

P = parse


def rec(text, var="n"):
    return Recurrence.from_expr(P(text), var)


def krawtchouk():
    spec = HyperSpec([P("-n"), P("-x")], [P("-NN")], P("1/p"))
    return mul(P("(-1)^n*p^n*binomial(NN,n)"), hyperterm(spec, "k"))


CLAUSEN = ("factorial(a+k-1)*factorial(b+k-1)/(factorial(k)*factorial(-1/2+a+b+k))"
           "*factorial(a+n-k-1)*factorial(b+n-k-1)/(factorial(n-k)*factorial(-1/2+a+b+n-k))")
DOUGALL = ("pochhammer(d,k)*pochhammer(1+d/2,k)*pochhammer(d+b-a,k)*pochhammer(d+c-a,k)"
           "*pochhammer(1+a-b-c,k)*pochhammer(n+a,k)*pochhammer(-n,k)"
           "/(factorial(k)*pochhammer(d/2,k)*pochhammer(1+a-b,k)*pochhammer(1+a-c,k)"
           "*pochhammer(b+c+d-a,k)*pochhammer(1+d-a-n,k)*pochhammer(1+d+n,k))")


class TestGolden:
    def test_binomial(self):
        r = sumrecursion(P("binomial(n,k)"), "k", "n").recurrence
        assert str(r) == "2*sum(n - 1) - sum(n)"

    def test_cubes_and_franel_type_agree(self):
        r1 = sumrecursion(P("binomial(n,k)^3"), "k", "n").recurrence
        r2 = sumrecursion(P("binomial(n,k)^2*binomial(2*k,n)"), "k", "n").recurrence
        want = rec("8*(n-1)^2*sum(n-2) - sum(n)*n^2 + (7*n^2-7*n+2)*sum(n-1)")
        assert recurrences_equal(r1, r2)
        assert r1 == want

    def test_clausen(self):
        r = sumrecursion(P(CLAUSEN), "k", "n").recurrence
        want = rec("(2*a+2*b+2*n-1)*(2*a+2*b+n-1)*sum(n)*n"
                   " - 2*(2*a+n-1)*(a+b+n-1)*(2*b+n-1)*sum(n-1)")
        assert recurrences_equal(r, want)

    def test_dougall(self):
        r = sumrecursion(P(DOUGALL), "k", "n").recurrence
        want = rec("(2*a-b-c-d+n)*(b+n-1)*(c+n-1)*(d+n)*sum(n-1)"
                   " + (a-b-c-d-n+1)*(a-b+n)*(a-c+n)*(a-d+n-1)*sum(n)")
        assert r == want

    @pytest.mark.parametrize("var,expected", [
        ("n", "(x+1-2*p-NN*p+(2*p-1)*n)*sum(n-1) - ((n-NN-2)*(p-1)*sum(n-2)*p + sum(n)*n)"),
        ("x", "-((x-1+NN*p-n-2*(x-1)*p)*sum(x-1) + (x-1-NN)*sum(x)*p + (p-1)*(x-1)*sum(x-2))"),
        ("NN", "(x+1+n+(p-2)*NN)*sum(NN-1) - ((x+1-NN)*sum(NN-2) - (n-NN)*(p-1)*sum(NN))"),
    ])
    def test_krawtchouk(self, var, expected):
        r = sumrecursion(krawtchouk(), "k", var).recurrence
        assert recurrences_equal(r, rec(expected, var))

    def test_squares_up(self):
        r = sumrecursion(P("binomial(n,k)^2"), "k", "n", direction="up").recurrence
        assert r == rec("sum(n+1)*n + sum(n+1) - 4*sum(n)*n - 2*sum(n)")
        assert r.direction == "up"
        assert str(r) == "(n + 1)*sum(n + 1) - 2*(2*n + 1)*sum(n)"

    def test_trace_of_squares(self):
        t = Trace()
        sumrecursion(P("binomial(n,k)^2"), "k", "n", trace=t)
        lines = t.lines()
        assert lines[0] == "F(n,k)/F(n-1,k):= n^2/(k^2 + n^2 - 2*k*n)"
        assert "degreebound := 1" in lines
        assert "f:= (2*k - 3*n + 2)/n" in lines
        assert lines[-1] == "Zeilberger algorithm successful"


class TestOrders:
    def test_order_five_is_not_enough(self):
        with pytest.raises(OrderExceeded) as info:
            sumrecursion(P("binomial(n,k)*binomial(6*k,n)"), "k", "n")
        assert str(info.value) == "Zeilberger algorithm fails. Enlarge zb_order"

    def test_order_six(self):
        F = P("binomial(n,k)*binomial(6*k,n)")
        res = sumrecursion(F, "k", "n", max_order=6)
        assert res.recurrence.order == 6
        assert res.tried == [1, 2, 3, 4, 5, 6]
        assert check_certificate(res.certificate, F).passed

    def test_fixed_order_bypasses_search(self):
        res = sumrecursion(P("binomial(n,k)^3"), "k", "n", order=2)
        assert res.tried == [2]

    def test_fixed_order_too_low(self):
        with pytest.raises(OrderExceeded):
            sumrecursion(P("binomial(n,k)^3"), "k", "n", order=1)

    def test_lower_orders_fail_first(self):
        F = P("binomial(n,k)^3")
        res = sumrecursion(F, "k", "n")
        for J in range(1, res.recurrence.order):
            with pytest.raises(OrderExceeded):
                sumrecursion(F, "k", "n", order=J)

    def test_not_applicable(self):
        with pytest.raises(ZeilbergerNotApplicable) as info:
            sumrecursion(P("factorial(n*k)"), "k", "n")
        assert str(info.value) == "Zeilberger algorithm not applicable"


class TestRecurrence:
    def test_from_expr_and_print(self):
        r = rec("2*sum(n-1) - sum(n)")
        assert str(r) == "2*sum(n - 1) - sum(n)"

    def test_normalization_removes_content(self):
        assert rec("14*sum(n-1) - 7*sum(n)") == rec("2*sum(n-1) - sum(n)")

    def test_sign_rule(self):
        assert str(rec("sum(n) - 2*sum(n-1)")) == "2*sum(n - 1) - sum(n)"

    def test_polynomial_common_factor_removed(self):
        assert rec("(n+3)*sum(n) - 2*(n+3)*sum(n-1)") == rec("sum(n) - 2*sum(n-1)")

    def test_up_form(self):
        up = to_direction(rec("2*sum(n-1) - sum(n)"), "up")
        assert up == rec("2*sum(n) - sum(n+1)")
        assert up.direction == "up"

    @pytest.mark.parametrize("text", [
        "2*sum(n-1) - sum(n)",
        "8*(n-1)^2*sum(n-2) - sum(n)*n^2 + (7*n^2-7*n+2)*sum(n-1)",
        "(n-1+c-b)*sum(n-1) - (n-1+c)*sum(n)",
    ])
    def test_direction_round_trip(self, text):
        r = rec(text)
        back = to_direction(to_direction(r, "up"), "down")
        assert back.coeffs == r.coeffs

    def test_inequality(self):
        assert not recurrences_equal(rec("2*sum(n-1) - sum(n)"), rec("sum(n-1) - sum(n)"))

    def test_degenerate(self):
        with pytest.raises(DegenerateRecurrence):
            Recurrence([0, 0], "n")

    def test_json_shape(self):
        d = rec("2*sum(n-1) - sum(n)").to_dict()
        assert d["order"] == 1 and d["direction"] == "down"
        assert d["coefficients"] == ["-1", "2"]


class TestClosedForm:
    def test_powers_of_two(self):
        r = sumrecursion(P("binomial(n,k)"), "k", "n").recurrence
        assert first_order_closed_form(r, 1) == P("2^n")

    def test_vandermonde(self):
        r = rec("(n-1+c-b)*sum(n-1) - (n-1+c)*sum(n)")
        assert first_order_closed_form(r, 1) == P("pochhammer(c-b,n)/pochhammer(c,n)")

    def test_constant(self):
        assert first_order_closed_form(rec("sum(n) - sum(n-1)"), 5) == P("5")

    def test_order_two_rejected(self):
        with pytest.raises(ValueError):
            first_order_closed_form(rec("sum(n) - sum(n-2)"), 1)

    def test_values_match_sums(self):
        F = P("binomial(n,k)^2")
        r = rec("(2*n)*(2*n-1)*sum(n-1) - n^2*sum(n)")
        closed = first_order_closed_form(r, 1)
        for m in range(6):
            from hypersum import substitute
            want = finite_sum(substitute(F, "n", m), "k", 0, m)
            assert substitute(closed, "n", m) == want


class TestChecks:
    @pytest.mark.parametrize("text", ["binomial(n,k)", "binomial(n,k)^2", "binomial(n,k)^3",
                                      "binomial(n,k)^2*binomial(2*k,n)",
                                      "(-1)^k*binomial(n,k)*binomial(2*k,k)",
                                      "binomial(2*n,2*k)"])
    def test_corpus_passes(self, text):
        F = P(text)
        res = sumrecursion(F, "k", "n")
        assert check_certificate(res.certificate, F).passed
        assert check_recurrence(res.recurrence, F, "k", "n",
                                certificate=res.certificate).passed

    def test_corrupted_recurrence_fails(self):
        F = P("binomial(n,k)^2")
        bad = rec("(2*n)*(2*n+1)*sum(n-1) - n^2*sum(n)")
        report = check_recurrence(bad, F, "k", "n")
        assert report.verdict == "fail" and report.evidence

    @settings(max_examples=30)
    @given(bivariate_summands())
    def test_every_success_passes(self, F):
        try:
            res = sumrecursion(F, "k", "n", max_order=3)
        except (OrderExceeded, ZeilbergerNotApplicable):
            assume(False)
        assert check_certificate(res.certificate, F).passed
        report = check_recurrence(res.recurrence, F, "k", "n", trials=3, nvalues=7,
                                  certificate=res.certificate)
        assert report.verdict in ("pass", "skipped-pole")
