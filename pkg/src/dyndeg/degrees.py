"""
Dynamical degrees of endomorphisms of abelian varieties.

The cohomological degrees come from the roots ``omega`` of the
characteristic polynomial ``P = prod chi_red^m``: ``chi_i`` is the product
of the ``i`` largest root moduli.  The first numerical degree is the
spectral radius of ``B -> A^dagger B A`` restricted to the Hermitian part
of each block, which realizes the action on ``NS(X)_R``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import (AlbertFactor, AlbertType, EndInstance, HermitianBasis,
                      hermitian_basis, validate, validate_instance)
from .errors import (IndexOutOfRange, RestrictionNotInvariant, ShapeMismatch,
                     SingularBasis)
from .matrix import QuaternionMatrix, iota, pullback_operator, realify, vec
from .polynomial import (ComplexPolynomial, IntPolynomial, RootMultiset,
                         char_poly_exact, char_poly_float, find_roots,
                         poly_power, sorted_moduli)

SPECTRAL_TOL = 1e-8
RESTRICTION_TOL = 1e-9
GRAM_COND_LIMIT = 1e12

_EXACT_LIMIT = 2.0 ** 52


# -- characteristic polynomials ---------------------------------------------

def complex_block(f: AlbertFactor, index: int):
    """Block ``index`` as a real or complex matrix (quaternion blocks go through iota)."""
    b = f.blocks[index]
    if isinstance(b, QuaternionMatrix):
        return iota(b)
    return b


def reduced_char_poly(f: AlbertFactor) -> ComplexPolynomial:
    """
    Reduced characteristic polynomial of the factor, in floating point.

    Types I and II multiply ``det(t - A_i)`` over the blocks, type III uses
    ``det(t - iota(A_i))``, and type IV multiplies each ``det(t - A_i)`` by
    its complex conjugate.
    """
    validate(f)
    out = ComplexPolynomial(np.array([1.0 + 0j]))
    for i in range(f.e0):
        p = char_poly_float(complex_block(f, i))
        out = out * p
        if f.albert_type is AlbertType.IV:
            out = out * p.conj()
    return out


def _integral(arr) -> bool:
    arr = np.asarray(arr)
    parts = (arr.real, arr.imag) if np.iscomplexobj(arr) else (arr,)
    return all(np.all(np.abs(p) < _EXACT_LIMIT) and np.all(p == np.round(p)) for p in parts)


def _to_int(arr):
    return [[int(round(x)) for x in row] for row in np.asarray(arr).real]


def reduced_char_poly_exact(f: AlbertFactor):
    """
    Exact reduced characteristic polynomial, or ``None`` if unavailable.

    Uses ``rational_form`` when given.  Otherwise integral blocks are
    handled through integer matrices: real blocks directly, complex blocks
    through :func:`realify` (whose characteristic polynomial is
    ``p * conj(p)``), and quaternion blocks through ``realify(iota(.))``
    followed by an exact square root.
    """
    validate(f)
    if f.rational_form is not None:
        return char_poly_exact(f.rational_form)
    out = IntPolynomial((1,))
    for i in range(f.e0):
        b = f.blocks[i]
        if isinstance(b, QuaternionMatrix):
            if not _integral(b.to_array()):
                return None
            out = out * char_poly_exact(_to_int(realify(iota(b)))).isqrt()
        elif f.albert_type is AlbertType.IV:
            if not _integral(b):
                return None
            out = out * char_poly_exact(_to_int(realify(b)))
        else:
            if not _integral(b):
                return None
            out = out * char_poly_exact(_to_int(b))
    return out


def algebra_char_poly_exact(f: AlbertFactor):
    """Non-reduced characteristic polynomial ``chi_red^(d n)`` of ``alpha`` in ``End^0``."""
    red = reduced_char_poly_exact(f)
    return None if red is None else poly_power(red, f.d * f.n)


def full_char_poly(inst: EndInstance) -> ComplexPolynomial:
    """``P_alpha = prod over factors of chi_red^m``, degree ``2g``."""
    validate_instance(inst)
    out = ComplexPolynomial(np.array([1.0 + 0j]))
    for f in inst.factors:
        out = out * reduced_char_poly(f) ** f.m
    return out


def full_char_poly_exact(inst: EndInstance):
    validate_instance(inst)
    out = IntPolynomial((1,))
    for f in inst.factors:
        red = reduced_char_poly_exact(f)
        if red is None:
            return None
        out = out * poly_power(red, f.m)
    return out


# -- cohomological degrees ----------------------------------------------------

def reduced_roots(f: AlbertFactor, tol: float = 1e-10) -> RootMultiset:
    """Roots of the reduced characteristic polynomial, found block by block."""
    validate(f)
    roots = RootMultiset(np.empty(0, dtype=complex))
    for i in range(f.e0):
        r = find_roots(char_poly_float(complex_block(f, i)), tol)
        roots = roots.union(r)
        if f.albert_type is AlbertType.IV:
            roots = roots.union(RootMultiset(r.roots.conj(), r.residuals))
    return roots


def factor_roots(f: AlbertFactor, tol: float = 1e-10) -> RootMultiset:
    """
    Roots of ``P = chi_red^m`` with multiplicity.

    Each root of ``chi_red`` is repeated ``m`` times instead of root-finding
    the power, whose repeated roots would only be located to about
    ``sqrt(eps)``.
    """
    return reduced_roots(f, tol).repeated(f.m)


def instance_roots(inst: EndInstance, tol: float = 1e-10) -> RootMultiset:
    roots = RootMultiset(np.empty(0, dtype=complex))
    for f in inst.factors:
        roots = roots.union(factor_roots(f, tol))
    return roots


def chi_from_moduli(moduli) -> list:
    """``chi_i`` = product of the ``i`` largest moduli, for ``i = 0..len``."""
    moduli = sorted(moduli, reverse=True)
    chi = [1.0]
    for x in moduli:
        chi.append(chi[-1] * x)
    return chi


def cohomological_degrees(inst: EndInstance) -> list:
    return chi_from_moduli(sorted_moduli(instance_roots(inst)))


def cohomological_degree(inst: EndInstance, i: int) -> float:
    g = inst.g
    if not 0 <= i <= 2 * g:
        raise IndexOutOfRange(f"degree index {i} outside 0..{2 * g}")
    return cohomological_degrees(inst)[i]


# -- numerical degree -------------------------------------------------------

def _stack_real(M):
    M = np.asarray(M)
    if np.iscomplexobj(M):
        return np.vstack([M.real, M.imag])
    return M


def _basis_columns(basis: HermitianBasis):
    cols = []
    for el in basis.elements:
        cols.append(vec(iota(el) if isinstance(el, QuaternionMatrix) else el))
    return np.column_stack(cols)


def restrict_to_subspace(L, basis: HermitianBasis, tol: float = RESTRICTION_TOL):
    """
    Matrix of ``L`` restricted to the real span of ``basis``.

    Column ``k`` holds the real coordinates of ``L @ vec(basis_k)``, found by
    least squares.  The residual is the largest relative distance of an
    image from the span.

    Returns
    -------
    R : ndarray
        Real square matrix of size ``len(basis)``.
    residual : float

    Raises
    ------
    SingularBasis
        If the basis Gram matrix has condition number above 1e12.
    RestrictionNotInvariant
        If the residual exceeds ``tol``.
    """
    L = np.asarray(L)
    Phi = _basis_columns(basis)
    if L.shape != (Phi.shape[0], Phi.shape[0]):
        raise ShapeMismatch(f"operator of shape {L.shape} does not act on vectors of length {Phi.shape[0]}")
    images = L @ Phi
    Phi_r, Y = _stack_real(Phi), _stack_real(images)
    gram = Phi_r.T @ Phi_r
    if np.linalg.cond(gram) > GRAM_COND_LIMIT:
        raise SingularBasis("basis Gram matrix is numerically singular")
    R, *_ = np.linalg.lstsq(Phi_r, Y, rcond=None)
    out = np.linalg.norm(Y - Phi_r @ R, axis=0)
    size = np.linalg.norm(Y, axis=0)
    rel = np.where(size > 0, out / np.where(size > 0, size, 1.0), 0.0)
    residual = float(rel.max()) if rel.size else 0.0
    if residual > tol:
        raise RestrictionNotInvariant(f"restriction residual {residual:.3e} exceeds {tol:.1e}")
    return R, residual


def spectral_radius(M, tol: float = 1e-10) -> float:
    return float(max(abs(z) for z in find_roots(char_poly_float(M), tol).roots))


@dataclass(frozen=True)
class BlockDiagnostic:
    factor: int
    block: int
    restricted_dim: int
    spectral_radius: float
    residual: float


@dataclass(frozen=True)
class Lambda1Diagnostics:
    blocks: tuple
    factor_values: tuple

    @property
    def max_residual(self) -> float:
        return max((b.residual for b in self.blocks), default=0.0)


def factor_lambda1(f: AlbertFactor, factor_index: int = 0, tol: float = RESTRICTION_TOL):
    """``lambda_1`` of one factor and the per-block diagnostics."""
    validate(f)
    basis = hermitian_basis(f.field, f.block_size)
    diags = []
    for i in range(f.e0):
        L = pullback_operator(complex_block(f, i))
        R, res = restrict_to_subspace(L, basis, tol)
        diags.append(BlockDiagnostic(factor_index, i, R.shape[0], spectral_radius(R), res))
    return max(d.spectral_radius for d in diags), diags


def numerical_degree_lambda1(inst: EndInstance, tol: float = RESTRICTION_TOL):
    """
    First numerical dynamical degree.

    Maximum over factors and blocks of the spectral radius of the pullback
    restricted to the Hermitian subspace.

    Returns
    -------
    lambda1 : float
    diagnostics : Lambda1Diagnostics
    """
    validate_instance(inst)
    blocks, values = [], []
    for k, f in enumerate(inst.factors):
        val, diags = factor_lambda1(f, k, tol)
        values.append(val)
        blocks.extend(diags)
    return max(values), Lambda1Diagnostics(tuple(blocks), tuple(values))


# -- degree of alpha ----------------------------------------------------------

@dataclass(frozen=True)
class EndomorphismDegree:
    value: int
    exact: bool
    rounding_residual: float = 0.0

    def __int__(self):
        return self.value


def degree_of_endomorphism(inst: EndInstance) -> EndomorphismDegree:
    """
    ``deg alpha = P_alpha(0)``.

    Exact when an exact characteristic polynomial is available; otherwise
    the floating constant term is rounded and the rounding distance kept as
    a certificate.  Zero means ``alpha`` is not surjective.
    """
    exact = full_char_poly_exact(inst)
    if exact is not None:
        return EndomorphismDegree(exact(0), True)
    value = 1.0
    for f in inst.factors:
        value *= reduced_char_poly(f).coefficients[0].real ** f.m
    rounded = int(round(value))
    return EndomorphismDegree(rounded, False, abs(value - rounded))


# -- verification ------------------------------------------------------------

def _rel(a, b):
    return abs(a - b) / max(abs(b), 1.0)


def _log(x):
    return math.log(x) if x > 0 else -math.inf


@dataclass
class DegreeReport:
    label: str
    g: int
    type_summary: str
    chi: list
    lambda1: float
    degree: int
    degree_exact: bool
    omega_moduli: list
    key_eq_residual: float
    theorem_residual: float
    pairing_ok: bool
    pairing_residual: float
    lambda_le_chi2: bool
    h_et: float
    h_alg_partial: float
    restriction_residual: float
    factor_lambda1: list = field(default_factory=list)
    factor_chi2: list = field(default_factory=list)
    factor_top_modulus: list = field(default_factory=list)
    exact_mismatch: float = 0.0
    asserted: bool = False
    translation_discarded: bool = False
    tol: float = SPECTRAL_TOL

    @property
    def chi2(self) -> float:
        return self.chi[2] if len(self.chi) > 2 else float("nan")

    @property
    def key_equality_ok(self) -> bool:
        return self.key_eq_residual <= self.tol

    @property
    def theorem_ok(self) -> bool:
        return self.theorem_residual <= self.tol and self.pairing_ok and self.lambda_le_chi2

    @property
    def passed(self) -> bool:
        """Key equality always; the full theorem only when asserted."""
        ok = self.key_equality_ok and self.exact_mismatch <= self.tol
        return ok and (self.theorem_ok or not self.asserted)


def _exact_mismatch(f: AlbertFactor) -> float:
    exact = reduced_char_poly_exact(f)
    if exact is None:
        return 0.0
    approx = reduced_char_poly(f).coefficients
    ref = np.array([float(c) for c in exact.coefficients])
    if ref.size != approx.size:
        return math.inf
    return float(np.max(np.abs(approx - ref) / np.maximum(np.abs(ref), 1.0)))


def verify_main_theorem(inst: EndInstance, tol: float = SPECTRAL_TOL,
                        restriction_tol: float = RESTRICTION_TOL) -> DegreeReport:
    """
    Compute every degree of ``inst`` and compare them.

    The per-factor key equality ``lambda_1 = |omega_1|^2`` holds for any
    blocks.  ``chi_2 = lambda_1`` and ``|omega_1| = |omega_2|`` are only
    expected for realizable instances; they are always computed but only
    enter :attr:`DegreeReport.passed` when ``inst.assert_theorem`` is set.
    """
    validate_instance(inst)
    lam, diags = numerical_degree_lambda1(inst, restriction_tol)

    tops, factor_chi2, key_res = [], [], 0.0
    for f, lam_f in zip(inst.factors, diags.factor_values):
        mods = sorted_moduli(factor_roots(f))
        tops.append(float(mods[0]))
        factor_chi2.append(float(mods[0] * mods[1] if len(mods) > 1 else mods[0]))
        key_res = max(key_res, float(abs(lam_f - mods[0] ** 2) / max(mods[0] ** 2, 1.0)))

    moduli = [float(x) for x in sorted_moduli(instance_roots(inst))]
    chi = chi_from_moduli(moduli)
    chi2 = chi[2]
    deg = degree_of_endomorphism(inst)
    pairing_res = float(_rel(moduli[1], moduli[0])) if len(moduli) > 1 else 0.0

    return DegreeReport(
        label=inst.label,
        g=inst.g,
        type_summary=inst.type_summary(),
        chi=chi,
        lambda1=lam,
        degree=deg.value,
        degree_exact=deg.exact,
        omega_moduli=moduli,
        key_eq_residual=key_res,
        theorem_residual=float(_rel(lam, chi2)),
        pairing_ok=pairing_res <= tol,
        pairing_residual=pairing_res,
        lambda_le_chi2=bool(lam <= chi2 + tol * max(chi2, 1.0)),
        h_et=max(_log(x) for x in chi),
        h_alg_partial=max(0.0, _log(lam), _log(abs(deg.value))),
        restriction_residual=diags.max_residual,
        factor_lambda1=list(diags.factor_values),
        factor_chi2=factor_chi2,
        factor_top_modulus=tops,
        exact_mismatch=max(_exact_mismatch(f) for f in inst.factors),
        asserted=inst.assert_theorem,
        translation_discarded=inst.translation_discarded,
        tol=tol,
    )


# -- reductions -------------------------------------------------------------

def _int_matrix_power(M, p):
    n = len(M)
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(p):
        out = [[sum(out[i][k] * M[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return out


def power_instance(inst: EndInstance, p: int) -> EndInstance:
    """``alpha^p``: every block (and rational form) raised to the ``p``-th power."""
    if p < 1:
        raise ValueError("power must be a positive integer")
    factors = []
    for f in inst.factors:
        blocks = [b ** p if isinstance(b, QuaternionMatrix) else np.linalg.matrix_power(b, p)
                  for b in f.blocks]
        rf = None if f.rational_form is None else _int_matrix_power(f.rational_form, p)
        factors.append(f.replace_blocks(blocks, rf))
    return EndInstance(tuple(factors), f"{inst.label}^{p}", inst.assert_theorem)


def scale_instance(inst: EndInstance, m: int) -> EndInstance:
    """``m * alpha``: every block (and rational form) multiplied by ``m``."""
    if m < 1:
        raise ValueError("scale must be a positive integer")
    factors = []
    for f in inst.factors:
        blocks = [b * m for b in f.blocks]
        rf = None if f.rational_form is None else [[m * x for x in row] for row in f.rational_form]
        factors.append(f.replace_blocks(blocks, rf))
    return EndInstance(tuple(factors), f"{m}*{inst.label}", inst.assert_theorem)
