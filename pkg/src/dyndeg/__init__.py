"""Cohomological and dynamical degrees of endomorphisms of abelian varieties."""

from .algebra import (AlbertFactor, AlbertType, EndInstance, HermitianBasis,
                      hermitian_basis, realization_dimension, rosati, validate,
                      validate_instance)
from .degrees import (DegreeReport, chi_from_moduli, cohomological_degree,
                      cohomological_degrees, degree_of_endomorphism, full_char_poly,
                      full_char_poly_exact, numerical_degree_lambda1, power_instance,
                      reduced_char_poly, reduced_char_poly_exact, restrict_to_subspace,
                      scale_instance, spectral_radius, verify_main_theorem)
from .errors import *  # noqa: F401,F403
from .instances import (GeneratorConfig, catalog, catalog_entry, parse_document,
                        parse_instance, random_instance, random_instances,
                        serialize_batch, serialize_instance)
from .matrix import (Quaternion, QuaternionMatrix, conj_transpose, iota, is_hermitian,
                     kron, pullback_operator, realify, unvec, vec)
from .polynomial import (ComplexPolynomial, IntPolynomial, RootMultiset, char_poly_exact,
                         char_poly_float, find_roots, poly_power, sorted_moduli)

__version__ = "0.1.0"
