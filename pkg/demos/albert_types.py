"""
One endomorphism of each Albert type
====================================

The four types differ in how a block is realized: real matrices (I, II),
quaternion matrices (III) and complex matrices (IV).  In every case the
numerical degree lambda_1 equals |omega_1|^2, the squared top root modulus
of the characteristic polynomial.
"""

from dyndeg import verify_main_theorem
from dyndeg.instances import cm_elliptic, qm_surface, rm_surface, supersingular

examples = [
    ("I   real multiplication 2 + sqrt 2", rm_surface(2, 1, 2)),
    ("II  quaternion multiplication",      qm_surface((3, 1, 1, 0), 2, 3)),
    ("III supersingular 1 + i + j + k",    supersingular(1, 1, 1, 1)),
    ("IV  complex multiplication 1 + i",   cm_elliptic(1, 1)),
]

for title, inst in examples:
    r = verify_main_theorem(inst)
    f = inst.factors[0]
    print(title)
    print(f"    {f.summary()}, m = {f.m}, g = {r.g}")
    print(f"    |omega| = {[round(x, 10) for x in r.omega_moduli]}")
    print(f"    lambda_1 = {r.lambda1:.10f}   chi_2 = {r.chi2:.10f}   deg = {r.degree}")
    print(f"    key equality residual {r.key_eq_residual:.1e}, pairing ok {r.pairing_ok}")
