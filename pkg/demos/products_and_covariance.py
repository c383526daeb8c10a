"""
Products, powers and scalar multiples
=====================================

On a product of non-isogenous factors, lambda_1 is the largest factor
value and chi_2 comes from the merged list of root moduli.  Scaling by m
multiplies chi_i by m^i and lambda_1 by m^2; squaring squares every chi_i.
"""

from dyndeg import cohomological_degrees, power_instance, scale_instance, verify_main_theorem
from dyndeg.instances import cm_elliptic, product, rm_surface

inst = product(cm_elliptic(2, 1), rm_surface(2, 1, 2))
r = verify_main_theorem(inst)
print("factor lambda_1:", r.factor_lambda1)
print("factor chi_2   :", r.factor_chi2)
print("lambda_1 =", r.lambda1, " chi_2 =", r.chi2, " passed:", r.passed)

alpha = cm_elliptic(1, 1)
chi = cohomological_degrees(alpha)
print("\nalpha = 1 + i:       chi =", chi)
print("3 alpha:             chi =", cohomological_degrees(scale_instance(alpha, 3)))
print("alpha^2 = 2i:        chi =", cohomological_degrees(power_instance(alpha, 2)))
print("lambda_1(2 alpha) =", verify_main_theorem(scale_instance(alpha, 2)).lambda1)
