"""Recurrences for generalized hypergeometric series.

A pFq series is described by its upper and lower parameter lists and its
argument.  Classical summation theorems show up as first-order recurrences.
"""

from hypersum import HyperSpec, first_order_closed_form, hyperrecursion, hyperterm, parse


def spec(upper, lower, x):
    return HyperSpec([parse(u) for u in upper], [parse(v) for v in lower], parse(x))


print("The summand of 2F1(-n, b; c; 1):")
vandermonde = spec(["-n", "b"], ["c"], "1")
print("  ", hyperterm(vandermonde, "k"))

rec = hyperrecursion(vandermonde, "n").recurrence
print("\nits recurrence:", rec, "= 0")
print("closed form (Chu-Vandermonde):", first_order_closed_form(rec, 1))

print("\nPfaff-Saalschutz, 3F2(-n, a, b; c, 1+a+b-c-n; 1):")
saal = spec(["-n", "a", "b"], ["c", "1+a+b-c-n"], "1")
rec = hyperrecursion(saal, "n").recurrence
print("  ", rec, "= 0")
print("   closed form:", first_order_closed_form(rec, 1))

print("\nA generic 2F1(-n, b; c; x) needs a second-order recurrence:")
generic = spec(["-n", "b"], ["c"], "x")
print("  ", hyperrecursion(generic, "n").recurrence, "= 0")
