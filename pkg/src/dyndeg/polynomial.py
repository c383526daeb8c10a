"""
Univariate polynomials, characteristic polynomials and complex roots.

Coefficients are always stored constant term first.  Exact polynomials use
Python integers; floating polynomials use complex128 arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import DimensionTooLarge, NoConvergence, NotSquare

UNDERFLOW_FLOOR = 1e-300
DEFAULT_ROOT_TOL = 1e-10
DEFAULT_MAX_ITER = 500
MAX_FLOAT_DIM = 64

_EPS = np.finfo(float).eps


def _format_terms(coeffs, fmt):
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        text = fmt(c)
        neg = text.startswith("-")
        text = text.lstrip("-")
        if mono and text == "1":
            text = ""
        body = f"{text}{'*' if text and mono else ''}{mono}" if not text.startswith("(") else text + mono
        if not terms:
            terms.append(("-" if neg else "") + body)
        else:
            terms.append((" - " if neg else " + ") + body)
    return "".join(terms) or "0"


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with arbitrary-precision integer coefficients."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = [int(c) for c in self.coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            coeffs = [0]
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_roots(cls, roots: Sequence[int]) -> "IntPolynomial":
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @property
    def degree(self) -> int:
        if self.is_zero():
            return 0
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return self.coefficients == (0,)

    def is_monic(self) -> bool:
        return self.coefficients[-1] == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return IntPolynomial(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, other.coefficients
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(tuple(out))

    def __pow__(self, m: int) -> "IntPolynomial":
        return poly_power(self, m)

    def isqrt(self) -> "IntPolynomial":
        """Exact square root of a monic square, raising ValueError otherwise."""
        if not self.is_monic() or self.degree % 2:
            raise ValueError("not the square of a monic integer polynomial")
        n = self.degree // 2
        c = self.coefficients
        # root coefficients r_n = 1, r_{n-1}, ..., r_0 from the top down
        r = [0] * (n + 1)
        r[n] = 1
        for k in range(n - 1, -1, -1):
            # coefficient of t^(n+k) in r^2 is 2 r_n r_k + sum_{i+j=n+k, k<i,j<n} r_i r_j
            s = sum(r[i] * r[n + k - i] for i in range(k + 1, n))
            num = c[n + k] - s
            if num % 2:
                raise ValueError("not the square of a monic integer polynomial")
            r[k] = num // 2
        root = IntPolynomial(tuple(r))
        if root * root != self:
            raise ValueError("not the square of a monic integer polynomial")
        return root

    def to_complex(self) -> "ComplexPolynomial":
        return ComplexPolynomial(np.array([complex(c) for c in self.coefficients]))

    def __str__(self):
        return _format_terms(self.coefficients, str)


def poly_power(p: IntPolynomial, m: int) -> IntPolynomial:
    """Exact ``m``-th power by repeated squaring."""
    if m < 1:
        raise ValueError("exponent must be a positive integer")
    result = IntPolynomial((1,))
    base = p
    while m:
        if m & 1:
            result = result * base
        m >>= 1
        if m:
            base = base * base
    return result


@dataclass(frozen=True, eq=False)
class ComplexPolynomial:
    coefficients: np.ndarray
    underflow_floor: float = UNDERFLOW_FLOOR

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("empty coefficient list")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def degree(self) -> int:
        return self.coefficients.size - 1

    @property
    def leading(self) -> complex:
        return complex(self.coefficients[-1])

    def __call__(self, x):
        acc = np.zeros_like(np.asarray(x, dtype=complex))
        for c in self.coefficients[::-1]:
            acc = acc * x + c
        return acc

    def __mul__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        return ComplexPolynomial(np.convolve(self.coefficients, other.coefficients))

    def __pow__(self, m: int) -> "ComplexPolynomial":
        out = ComplexPolynomial(np.array([1.0 + 0j]))
        for _ in range(m):
            out = out * self
        return out

    def conj(self) -> "ComplexPolynomial":
        return ComplexPolynomial(self.coefficients.conj())

    def scale(self, s: complex) -> "ComplexPolynomial":
        return ComplexPolynomial(self.coefficients * s)

    def allclose(self, other, rtol=1e-10) -> bool:
        a, b = self.coefficients, other.coefficients
        if a.size != b.size:
            return False
        return bool(np.all(np.abs(a - b) <= rtol * np.maximum(np.abs(b), 1.0)))

    def __str__(self):
        def fmt(c):
            c = complex(c)
            if c.imag == 0:
                return repr(c.real)
            return f"({c.real!r}{c.imag:+g}j)"
        return _format_terms(list(self.coefficients), fmt)


@dataclass(frozen=True, eq=False)
class RootMultiset:
    """Roots with multiplicity, plus the backward-error residual of each."""

    roots: np.ndarray
    residuals: np.ndarray = field(default=None)

    def __post_init__(self):
        r = np.array(self.roots, dtype=complex).ravel()
        r.setflags(write=False)
        object.__setattr__(self, "roots", r)
        res = np.zeros(r.size) if self.residuals is None else np.array(self.residuals, dtype=float).ravel()
        res.setflags(write=False)
        object.__setattr__(self, "residuals", res)

    def __len__(self):
        return self.roots.size

    def __iter__(self):
        return iter(self.roots)

    def repeated(self, m: int) -> "RootMultiset":
        return RootMultiset(np.tile(self.roots, m), np.tile(self.residuals, m))

    def union(self, other: "RootMultiset") -> "RootMultiset":
        return RootMultiset(np.concatenate([self.roots, other.roots]),
                            np.concatenate([self.residuals, other.residuals]))


def _square_check(M):
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise NotSquare(f"expected a non-empty square matrix, got shape {M.shape}")
    return M


def char_poly_exact(M) -> IntPolynomial:
    """
    Characteristic polynomial ``det(t I - M)`` of an integer matrix.

    Faddeev-LeVerrier recurrence over Python integers.  Every division in
    the recurrence is exact, which is asserted rather than assumed.
    """
    rows = [[int(x) for x in row] for row in M]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise NotSquare("expected a non-empty square matrix")

    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    # N holds M_k of the recurrence M_k = M M_{k-1} + c_{n-k+1} I
    N = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        MN = _int_matmul(rows, N)
        for i in range(n):
            MN[i][i] += coeffs[n - k + 1]
        N = MN
        tr = sum(sum(rows[i][j] * N[j][i] for j in range(n)) for i in range(n))
        q, rem = divmod(-tr, k)
        assert rem == 0, "Faddeev-LeVerrier division must be exact over the integers"
        coeffs[n - k] = q
    return IntPolynomial(tuple(coeffs))


def _int_matmul(A, B):
    n = len(A)
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(A[i], Bt[j])) for j in range(n)] for i in range(n)]


def char_poly_float(M) -> ComplexPolynomial:
    """
    Characteristic polynomial of a real or complex matrix in floating point.

    The matrix is reduced to upper Hessenberg form by unitary similarity
    and the coefficients follow from La Budde's recurrence on the leading
    principal submatrices.  Faddeev-LeVerrier is avoided here: in floating
    point it loses most digits once the eigenvalues spread over a few
    orders of magnitude, which pullback operators routinely do.
    """
    M = _square_check(np.asarray(M, dtype=complex))
    n = M.shape[0]
    if n > MAX_FLOAT_DIM:
        raise DimensionTooLarge(f"dimension {n} exceeds {MAX_FLOAT_DIM}")
    H = scipy.linalg.hessenberg(M)
    # p[k] = det(t I_k - H[:k, :k]), constant term first
    p = [np.ones(1, dtype=complex)]
    for k in range(n):
        nxt = np.zeros(k + 2, dtype=complex)
        nxt[1:] = p[k]
        nxt[:-1] -= H[k, k] * p[k]
        prod = 1.0 + 0j
        for i in range(k - 1, -1, -1):
            prod *= H[i + 1, i]
            nxt[:i + 1] -= H[i, k] * prod * p[i]
        p.append(nxt)
    return ComplexPolynomial(p[n])


def fujiwara_bound(coeffs) -> float:
    """Upper bound on root moduli of a polynomial (constant term first)."""
    c = np.asarray(coeffs, dtype=complex)
    n = c.size - 1
    a = np.abs(c / c[-1])
    terms = [a[n - k] ** (1.0 / k) for k in range(1, n)]
    terms.append((a[0] / 2.0) ** (1.0 / n))
    return 2.0 * max(terms)


def _backward_error(c_abs_scale, pz):
    return np.abs(pz) / np.maximum(c_abs_scale, np.finfo(float).tiny)


def find_roots(p: ComplexPolynomial, tol: float = DEFAULT_ROOT_TOL,
               max_iter: int = DEFAULT_MAX_ITER) -> RootMultiset:
    """
    All complex roots of ``p`` by Aberth-Ehrlich simultaneous iteration.

    Starting points lie on a circle whose radius is the Fujiwara bound,
    rotated by a fixed irrational offset so that no start sits on a
    symmetry axis of a real polynomial.  Iteration stops once every
    correction has stalled at roundoff level; a Newton pass then polishes
    each root.  The residual of a root ``z`` is
    ``|p(z)| / sum_k |c_k| max(1, |z|)^k``.

    Raises
    ------
    NoConvergence
        If some residual still exceeds ``tol`` after ``max_iter`` sweeps.
    """
    c = p.coefficients
    if p.degree < 1:
        raise ValueError("polynomial must have degree >= 1")
    if abs(c[-1]) <= p.underflow_floor:
        raise ValueError("leading coefficient below the underflow floor")
    c = c / c[-1]
    n = c.size - 1
    dc = c[1:] * np.arange(1, n + 1)
    cabs = np.abs(c)

    def scale_at(z):
        r = np.maximum(1.0, np.abs(z))
        out = np.zeros(z.shape)
        for a in cabs[::-1]:
            out = out * r + a
        return out

    def horner(coef, z):
        acc = np.zeros(z.shape, dtype=complex)
        for a in coef[::-1]:
            acc = acc * z + a
        return acc

    if n == 1:
        z = np.array([-c[0]])
        return RootMultiset(z, _backward_error(scale_at(z), horner(c, z)))

    radius = fujiwara_bound(c)
    if radius == 0.0:
        z = np.zeros(n, dtype=complex)
        return RootMultiset(z, np.zeros(n))
    angles = 2.0 * np.pi * np.arange(n) / n + 0.4
    z = radius * np.exp(1j * angles)

    active = np.ones(n, dtype=bool)
    for _ in range(max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        zi = z[idx]
        pz = horner(c, zi)
        dpz = horner(dc, zi)
        hit = pz == 0
        diff = zi[:, None] - z[None, :]
        diff[np.arange(idx.size), idx] = 1.0
        repulse = (1.0 / diff).sum(axis=1) - 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dpz
            step = ratio / (1.0 - ratio * repulse)
        bad = ~np.isfinite(step)
        step[bad] = 0.0
        step[hit] = 0.0
        z[idx] = zi - step
        small = np.abs(step) <= 4.0 * _EPS * np.maximum(np.abs(z[idx]), _EPS)
        active[idx[small | hit]] = False

    z = _newton_polish(c, dc, z, horner, scale_at)
    z = merge_clusters(c, z)
    residuals = _backward_error(scale_at(z), horner(c, z))
    if np.any(residuals > tol):
        worst = int(np.argmax(residuals))
        raise NoConvergence(
            f"root {z[worst]!r} has residual {residuals[worst]:.3e} > {tol:.1e} "
            f"after {max_iter} iterations"
        )
    return RootMultiset(z, residuals)


def _newton_polish(c, dc, z, horner, scale_at, sweeps=2):
    z = z.copy()
    for _ in range(sweeps):
        pz = horner(c, z)
        dpz = horner(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = z - pz / dpz
        ok = np.isfinite(cand)
        better = ok.copy()
        better[ok] = np.abs(horner(c, cand[ok])) < np.abs(pz[ok])
        z[better] = cand[better]
    return z


def _taylor(c, x):
    """Coefficients of ``p(x + h)`` in ``h`` (constant first), by repeated synthetic division."""
    work = np.array(c, dtype=complex)
    n = work.size - 1
    out = np.empty(n + 1, dtype=complex)
    for k in range(n + 1):
        for i in range(n - 1, k - 1, -1):
            work[i] += x * work[i + 1]
        out[k] = work[k]
    return out


def _noise_radius(c, x, k, backward_eps):
    """Radius within which a ``k``-fold root at ``x`` is smeared by coefficient noise."""
    t = _taylor(c, x)
    lead = abs(t[k])
    if lead == 0:
        return np.inf
    scale = float(np.sum(np.abs(c) * abs(x) ** np.arange(c.size)))
    return (backward_eps * scale / lead) ** (1.0 / k)


def merge_clusters(c, z, backward_eps=None):
    """
    Collapse clusters that are numerically a single multiple root.

    Closest clusters are merged greedily.  A merged cluster of ``k`` roots
    is accepted only if its spread around the centroid (refined by Newton
    on the ``(k-1)``-th derivative) is within the noise radius of a
    ``k``-fold root there; the roots are then all replaced by that centre.
    Distinct roots that are resolvable at working precision are never moved.
    """
    c = np.asarray(c, dtype=complex)
    n = c.size - 1
    if backward_eps is None:
        backward_eps = 64.0 * n * _EPS
    # simple-root sensitivity; resolved roots sit much further apart than this
    dc = np.polynomial.polynomial.polyder(c)
    weight = np.abs(c) * np.abs(z)[:, None] ** np.arange(c.size)
    with np.errstate(divide="ignore"):
        delta = backward_eps * weight.sum(axis=1) / np.abs(np.polynomial.polynomial.polyval(z, dc))
    clusters = [(i,) for i in range(z.size)]
    centres = list(z.astype(complex))
    rejected = set()
    while len(clusters) > 1:
        pts = np.array(centres)
        dist = np.abs(pts[:, None] - pts[None, :])
        np.fill_diagonal(dist, np.inf)
        reach = np.array([delta[list(m)].max() for m in clusters])
        dist[dist > 8.0 * np.maximum(reach[:, None], reach[None, :])] = np.inf
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                if frozenset((clusters[a], clusters[b])) in rejected:
                    dist[a, b] = dist[b, a] = np.inf
        if not np.isfinite(dist).any():
            break
        a, b = np.unravel_index(np.argmin(dist), dist.shape)
        members = clusters[a] + clusters[b]
        k = len(members)
        centre = complex(np.mean(z[list(members)]))
        deriv = np.polynomial.polynomial.polyder(c, k - 1)
        deriv2 = np.polynomial.polynomial.polyder(deriv)
        for _ in range(3):
            d2 = np.polynomial.polynomial.polyval(centre, deriv2)
            if d2 == 0:
                break
            centre -= np.polynomial.polynomial.polyval(centre, deriv) / d2
        spread = float(np.max(np.abs(z[list(members)] - centre)))
        if spread > 2.0 * _noise_radius(c, centre, k, backward_eps):
            rejected.add(frozenset((clusters[a], clusters[b])))
            continue
        for idx in sorted((a, b), reverse=True):
            del clusters[idx]
            del centres[idx]
        clusters.append(members)
        centres.append(centre)
    out = z.astype(complex).copy()
    for members, centre in zip(clusters, centres):
        if len(members) > 1:
            out[list(members)] = centre
    return out


def _order_key(root):
    return (-abs(root), -root.real, -root.imag)


def sorted_roots(r: RootMultiset) -> list:
    """Roots ordered by non-increasing modulus, then real part, then imaginary part."""
    return sorted((complex(x) for x in r.roots), key=_order_key)


def sorted_moduli(r: RootMultiset) -> list:
    return [abs(x) for x in sorted_roots(r)]
