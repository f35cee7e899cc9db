"""
Which couplings give which phase space
======================================

For SU(n) the coupling y enters only through exp(2iy), and y/pi = r/s is
regular exactly when s > n.  Regular couplings split into type (i), where
the moment polytope is a simplex, and type (ii), where it is not.
"""

from fractions import Fraction

from compact_rs import Coupling, classify, type_one_intervals

# The type (i) intervals for a few ranks, in units of pi.
for n in (3, 4, 5, 6):
    print(f"n = {n}")
    for iv in type_one_intervals(n):
        print(f"  p = {iv.p}, q = {iv.q}: ({iv.a}, {iv.b})")

# Some individual verdicts.
for n, r, s in [(4, 2, 5), (5, 3, 10), (5, 9, 20), (4, 1, 4), (3, 4, 11)]:
    cl = classify(Coupling.exact(n, r, s))
    print(f"n = {n}, y = {r}/{s} pi -> {cl.verdict.value}", f"(p = {cl.p}, q = {cl.q})" if cl.p else "")

# For n = 2 and n = 3 every regular coupling is type (i).
for n in (2, 3):
    verdicts = {
        classify(Coupling(n, ratio=Fraction(r, s))).verdict.value
        for s in range(n + 1, 60)
        for r in range(1, s)
        if Fraction(r, s).denominator == s
    }
    print(f"n = {n}: verdicts seen {sorted(verdicts)}")
