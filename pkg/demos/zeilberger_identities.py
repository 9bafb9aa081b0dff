"""Proving binomial identities with creative telescoping.

When a definite sum has no closed form by telescoping, Zeilberger's method
still finds a recurrence in the outer parameter.  A first-order recurrence
plus one initial value pins the sum down completely.
"""

import time

from hypersum import first_order_closed_form, parse, sumrecursion
from hypersum.verify import check_certificate, check_recurrence, finite_sum, recurrences_equal


def recurrence_for(text):
    F = parse(text)
    t0 = time.perf_counter()
    res = sumrecursion(F, "k", "n")
    took = time.perf_counter() - t0
    ok = check_certificate(res.certificate, F).verdict
    print(f"  sum over k of {text}\n    {res.recurrence} = 0   ({took:.2f}s, certificate {ok})")
    return F, res


print("Row sums of Pascal's triangle:")
F, res = recurrence_for("binomial(n,k)")
print("    closed form:", first_order_closed_form(res.recurrence, 1))

print("\nFranel numbers, two ways:")
F1, r1 = recurrence_for("binomial(n,k)^3")
F2, r2 = recurrence_for("binomial(n,k)^2*binomial(2*k,n)")
print("    same recurrence:", recurrences_equal(r1.recurrence, r2.recurrence))
# with matching initial values the two sums agree for every n
for n in (0, 1):
    a = finite_sum(parse(f"sub(n={n},binomial(n,k)^3)"), "k", 0, n)
    b = finite_sum(parse(f"sub(n={n},binomial(n,k)^2*binomial(2*k,n))"), "k", 0, n)
    print(f"    n={n}: {a} and {b}")

print("\nSquares of binomials, shifting upward:")
res = sumrecursion(parse("binomial(n,k)^2"), "k", "n", direction="up")
print("   ", res.recurrence, "= 0")
print("    closed form:", first_order_closed_form(res.recurrence, 1))

print("\nThe recurrence is checked numerically as well:")
F = parse("binomial(n,k)^2*binomial(n+k,k)")
res = sumrecursion(F, "k", "n")
print("   ", res.recurrence, "= 0")
report = check_recurrence(res.recurrence, F, "k", "n", certificate=res.certificate)
print("    numeric check:", report.verdict)
