"""
Degrees of Frobenius on an ordinary elliptic curve
==================================================

The Frobenius endomorphism of an elliptic curve over F_q is a root of
t^2 - a t + q with |pi| = sqrt(q).  Its cohomological degrees are therefore
chi_i = q^(i/2), and its first dynamical degree equals q.
"""

import math

from dyndeg import cohomological_degrees, full_char_poly_exact, verify_main_theorem
from dyndeg.instances import frobenius_ordinary

# Build the instance for q = 5, trace 1.  The single block holds pi itself;
# an integer companion matrix gives the exact characteristic polynomial.
inst = frobenius_ordinary(5, 1)
print("P(t) =", full_char_poly_exact(inst))

# chi_i is the product of the i largest root moduli.
chi = cohomological_degrees(inst)
for i, c in enumerate(chi):
    print(f"chi_{i} = {c:.12f}   q^(i/2) = {5 ** (i / 2):.12f}")

# lambda_1 is the spectral radius of the pullback on the Hermitian part.
report = verify_main_theorem(inst)
print("lambda_1 =", report.lambda1, " chi_2 =", report.chi2)
print("h_et =", report.h_et, " log q =", math.log(5))

# The same holds for every (q, a) with a^2 < 4q.
for q, a in [(2, 1), (3, 1), (7, 3), (11, 5)]:
    r = verify_main_theorem(frobenius_ordinary(q, a))
    print(f"q={q:2d} a={a}: lambda_1 = {r.lambda1:.12f}, passed = {r.passed}")
