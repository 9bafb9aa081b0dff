"""A walk through indefinite summation.

Gosper's algorithm either finds a hypergeometric antidifference g with
g(k) - g(k-1) = a(k), or proves that none exists.  Run with

    python demos/gosper_tour.py
"""

from hypersum import NoClosedForm, Trace, gosper, gosper_definite, parse
from hypersum.verify import check_antidifference


def show(text, k="k"):
    a = parse(text)
    try:
        anti = gosper(a, k)
    except NoClosedForm as exc:
        print(f"  {text}\n    -> {exc}")
        return
    verdict = check_antidifference(anti.g, a, k).verdict
    print(f"  {text}\n    -> {anti.g}   [check: {verdict}]")


print("Antidifferences that exist:")
show("k*factorial(k)")
show("binomial(k,n)")
show("pochhammer(k-n,n)")
show("(-25+15*k+18*k^2-2*k^3-k^4)/(-23+479*k+613*k^2+137*k^3+53*k^4+5*k^5+k^6)")

# A negative answer is a proof, not a timeout: the degree bound rules out
# every polynomial solution of the key equation.
print("\nSums with no hypergeometric antidifference:")
show("1/k")
show("factorial(k)")
show("binomial(n,k)")

print("\nThe intermediate steps for pochhammer(k-n,n):")
t = Trace()
gosper(parse("pochhammer(k-n,n)"), "k", trace=t)
for line in t.lines():
    print("  " + line)

print("\nDefinite sums follow by telescoping:")
print("  sum(k, k=1..n) =", gosper_definite(parse("k"), "k", 1, parse("n")))
print("  sum(k*k!, k=0..n) =", gosper_definite(parse("k*factorial(k)"), "k", 0, parse("n")))
