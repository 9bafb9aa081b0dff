from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hypersum import Trace, gosper, gosper_definite, gpp_decompose, parse, substitute
from hypersum.errors import GosperNotApplicable, NoClosedForm, NoSolution, PoleInRange
from hypersum.expr import div, mul, sub
from hypersum.gosper import GosperForm, degree_bound, solve_f
from hypersum.normalize import term_ratio
from hypersum.poly import Polynomial, RationalFunction, dispersion_set, to_rational
from hypersum.verify import check_antidifference, check_definite_sum, check_equal
from strategies import hyper_terms, linear_factors, polynomials

P = parse


def same_up_to_constant(g1, g2, k="k"):
    """``g1 - g2`` has zero downward difference."""
    d = sub(P(g1) if isinstance(g1, str) else g1, P(g2) if isinstance(g2, str) else g2)
    step = sub(d, substitute(d, k, P(f"{k}-1")))
    return check_equal(step, P("0"), positive=k).passed


def form_of(p, q, r, f, k="k"):
    return [to_rational(P(x)) for x in (p, q, r, f)]


PROMPT_2 = "(-1)^(k+1)*(4*k+1)*factorial(2*k)/(factorial(k)*4^k*(2*k-1)*factorial(k+1))"
PROMPT_3 = ("sub(n=n+1,binomial(n,k)^2/binomial(2*n,n))-binomial(n,k)^2/binomial(2*n,n)")
PROMPT_5 = ("(-25+15*k+18*k^2-2*k^3-k^4)/"
            "(-23+479*k+613*k^2+137*k^3+53*k^4+5*k^5+k^6)")
PROMPT_42 = "1/(k+1)*binomial(2*k,k)/(n-k+1)*binomial(2*n-2*k,n-k)"

GOLDEN = [
    (PROMPT_2, "-(-1)^k*factorial(2*k)/(4^k*factorial(k+1)*factorial(k))"),
    (PROMPT_3, "((binomial(n+1,k)^2*binomial(2*n,n) - binomial(2*(n+1),n+1)*binomial(n,k)^2)"
               "*(2*k-3*n-1)*(k-n-1)^2)/((2*(2*(n+1)-k)*(2*n+1)*k-(3*n+1)*(n+1)^2)"
               "*binomial(2*(n+1),n+1)*binomial(2*n,n))"),
    ("binomial(k,n)", "(k+1)*binomial(k,n)/(n+1)"),
    (PROMPT_5, "-(2*k^2-15*k+8)*k/(23*(k^3+4*k^2+27*k+23))"),
    ("pochhammer(k-n,n)", "pochhammer(k-n,n)*k/(n+1)"),
    ("k*factorial(k)", "(k+1)*factorial(k)"),
    (PROMPT_42, "(2*k-n+1)*(2*k+1)*binomial(-2*(k-n),-(k-n))*binomial(2*k,k)"
                "/((k+1)*(n+2)*(n+1))"),
]


class TestGolden:
    @pytest.mark.parametrize("summand,expected", GOLDEN)
    def test_matches_paper_output(self, summand, expected):
        g = gosper(P(summand), "k").g
        assert same_up_to_constant(g, expected)
        assert check_antidifference(g, P(summand), "k").passed

    def test_certificate_of_k_factorial(self):
        form = gosper(P("k*factorial(k)"), "k").form
        assert [str(x) for x in form.as_exprs()] == ["k", "k", "1", "1"]

    def test_certificate_of_catalan_convolution(self):
        form = gosper(P(PROMPT_42), "k").form
        got = [to_rational(x) for x in form.as_exprs()]
        want = form_of("1", "(2*k-1)*(k-n-2)", "(2*k-2*n-1)*(k+1)", "(n-1-2*k)/((n+2)*(n+1))")
        assert got == want

    def test_trace_of_pochhammer(self):
        t = Trace()
        gosper(P("pochhammer(k-n,n)"), "k", trace=t)
        assert t.lines() == [
            "a(k)/a(k-1):= (k - 1)/(k - n - 1)",
            "Gosper algorithm applicable",
            "p:= 1",
            "q:= k - 1",
            "r:= k - n - 1",
            "degreebound := 0",
            "f:= 1/(n + 1)",
            "Gosper algorithm successful",
        ]

    def test_product_terms(self):
        a = P("prod(c*j^2+b*j+a,j,1,k-1)/prod(c*j^2+b*j+e,j,1,k)")
        g = gosper(a, "k").g
        assert g == P("prod(c*j^2+b*j+a,j,1,k)/((a-e)*prod(c*j^2+b*j+e,j,1,k))")

    def test_up_direction(self):
        anti = gosper(P("k"), "k", direction="up")
        assert check_antidifference(anti.g, P("k"), "k", "up").passed
        assert same_up_to_constant(anti.g, "k*(k-1)/2")


class TestFailures:
    @pytest.mark.parametrize("text", ["1/k", "factorial(k)", "binomial(n,k)", "1/(k^2+1)"])
    def test_no_closed_form(self, text):
        with pytest.raises(NoClosedForm) as info:
            gosper(P(text), "k")
        assert str(info.value) == "Gosper algorithm: no closed form solution exists"

    def test_not_applicable(self):
        with pytest.raises(GosperNotApplicable) as info:
            gosper(P("factorial(k/2)"), "k")
        assert str(info.value) == "Gosper algorithm not applicable"

    @pytest.mark.parametrize("text", ["1/k", "factorial(k)", "binomial(n,k)"])
    def test_no_solution_beyond_bound(self, text):
        # raising the degree bound by three still gives no polynomial f
        form = gpp_decompose(term_ratio(P(text), "k"), "k")
        D = degree_bound(form)
        top = (D if D is not None else 0) + 3
        for d in range(top + 1):
            with pytest.raises(NoSolution):
                solve_f(form, d)


class TestDefinite:
    def test_arithmetic_series(self):
        assert gosper_definite(P("k"), "k", 1, P("n")) == P("n*(n+1)/2")

    def test_numeric_bounds(self):
        a = P("pochhammer(k-n,n)")
        got = gosper_definite(a, "k", 0, 5)
        want = sum(Fraction(1) * _poch(j - 3, 3) for j in range(6))
        assert substitute(got, "n", 3) == P(str(want))

    def test_binomial_sum_has_no_closed_form(self):
        with pytest.raises(NoClosedForm):
            gosper_definite(P("binomial(n,k)"), "k", 0, P("n"))

    def test_pole_in_range(self):
        with pytest.raises(PoleInRange):
            gosper_definite(P("1/(k*(k+1))"), "k", -3, 4)

    def test_symbolic_upper_bound(self):
        a = P("k*factorial(k)")
        res = gosper_definite(a, "k", 0, P("n"))
        assert check_definite_sum(res, a, "k", 0, P("n")).passed


def _poch(a, m):
    out = 1
    for i in range(m):
        out *= a + i
    return out


class TestDecomposition:
    def test_pochhammer_form(self):
        form = gpp_decompose(term_ratio(P("pochhammer(k-n,n)"), "k"), "k")
        assert (form.p, form.q, form.r) == (Polynomial.const(1, form.p.names),
                                            *[to_rational(P(x)).num.coerce(form.q.names)
                                              for x in ("k-1", "k-n-1")])

    @settings(max_examples=100)
    @given(linear_factors(), linear_factors(), st.integers(1, 4))
    def test_gpp_invariants(self, num, den, c):
        ratio = RationalFunction(num * c, den)
        assume(not ratio.is_zero())
        form = gpp_decompose(ratio, "k")
        # ratio reconstruction
        assert form.ratio() == ratio
        # gcd(q(k), r(k+j)) = 1 for every j >= 0
        if form.q.degree("k") > 0 and form.r.degree("k") > 0:
            assert dispersion_set(form.q, form.r, "k") == []
        # decomposing q/r again is a fixed point
        again = gpp_decompose(RationalFunction(form.q, form.r), "k")
        assert again.p.is_constant()
        assert RationalFunction(again.q, again.r) == RationalFunction(form.q, form.r)

    @settings(max_examples=40)
    @given(polynomials(max_deg=2, max_terms=3), polynomials(max_deg=2, max_terms=3))
    def test_gpp_on_random_polynomials(self, num, den):
        ratio = RationalFunction(num, den)
        assume(ratio.num.degree("k") > 0 or ratio.den.degree("k") > 0)
        form = gpp_decompose(ratio, "k")
        assert form.ratio() == ratio


def _telescoped(g):
    """``g_k - g_{k-1}`` written as ``g_k * (1 - 1/ratio)``."""
    ratio = term_ratio(g, "k").ratio
    if ratio == RationalFunction.const(1):
        return None
    return mul(g, (1 - ratio.inverse()).to_expr(True))


class TestTelescoping:
    @settings(max_examples=200)
    @given(hyper_terms())
    def test_constructed_differences(self, g):
        a = _telescoped(g)
        assume(a is not None)
        anti = gosper(a, "k")
        assert check_antidifference(anti.g, a, "k").passed
        assert anti.form.residual().is_zero()

    @settings(max_examples=100)
    @given(hyper_terms())
    def test_random_terms(self, a):
        try:
            anti = gosper(a, "k")
        except NoClosedForm:
            return
        assert check_antidifference(anti.g, a, "k").passed
        assert anti.form.residual().is_zero()

    @settings(max_examples=40)
    @given(hyper_terms(), st.sampled_from(["down", "up"]))
    def test_directions(self, g, direction):
        a = _telescoped(g)
        assume(a is not None)
        anti = gosper(a, "k", direction=direction)
        assert check_antidifference(anti.g, a, "k", direction).passed
