"""
Dense matrices over R, C and the quaternions H.

Real and complex matrices are plain numpy arrays.  A quaternion matrix is
stored as a pair of complex matrices ``(A1, A2)`` with ``A = A1 + A2 j``,
which is the form the complex embedding :func:`iota` consumes directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FieldMismatch, NotSquare, ShapeMismatch

HERMITIAN_ATOL = 1e-12


@dataclass(frozen=True)
class Quaternion:
    """``a + b i + c j + d k``."""

    a: float
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    def __mul__(self, other):
        if not isinstance(other, Quaternion):
            other = Quaternion(float(other))
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __add__(self, other):
        return Quaternion(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def conj(self):
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self):
        """Reduced norm ``a^2 + b^2 + c^2 + d^2``."""
        return self.a ** 2 + self.b ** 2 + self.c ** 2 + self.d ** 2

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)


class QuaternionMatrix:
    """Matrix over H stored as ``A1 + A2 j`` with complex ``A1``, ``A2``."""

    __slots__ = ("c1", "c2")

    def __init__(self, c1, c2=None):
        c1 = np.array(c1, dtype=complex)
        if c1.ndim != 2:
            raise ShapeMismatch("quaternion matrix parts must be 2-d")
        c2 = np.zeros_like(c1) if c2 is None else np.array(c2, dtype=complex)
        if c1.shape != c2.shape:
            raise ShapeMismatch(f"part shapes differ: {c1.shape} vs {c2.shape}")
        c1.setflags(write=False)
        c2.setflags(write=False)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)

    def __setattr__(self, name, value):
        raise AttributeError("QuaternionMatrix is immutable")

    @classmethod
    def from_parts(cls, a, b, c, d):
        """Build from the four real component matrices of ``a + b i + c j + d k``."""
        a, b, c, d = (np.asarray(x, dtype=float) for x in (a, b, c, d))
        return cls(a + 1j * b, c + 1j * d)

    @classmethod
    def from_array(cls, arr):
        """Build from an array of shape ``(rows, cols, 4)``."""
        arr = np.asarray(arr, dtype=float)
        if arr.ndim != 3 or arr.shape[2] != 4:
            raise ShapeMismatch(f"expected shape (rows, cols, 4), got {arr.shape}")
        return cls.from_parts(arr[..., 0], arr[..., 1], arr[..., 2], arr[..., 3])

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n))

    @classmethod
    def zeros(cls, rows, cols=None):
        return cls(np.zeros((rows, rows if cols is None else cols)))

    def to_array(self):
        return np.stack([self.c1.real, self.c1.imag, self.c2.real, self.c2.imag], axis=-1)

    def entry(self, i, j) -> Quaternion:
        z1, z2 = self.c1[i, j], self.c2[i, j]
        return Quaternion(z1.real, z1.imag, z2.real, z2.imag)

    @property
    def shape(self):
        return self.c1.shape

    def __add__(self, other):
        return QuaternionMatrix(self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other):
        return QuaternionMatrix(self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self):
        return QuaternionMatrix(-self.c1, -self.c2)

    def __mul__(self, s):
        # real scalars only: complex scalars do not commute with j
        s = float(s)
        return QuaternionMatrix(self.c1 * s, self.c2 * s)

    __rmul__ = __mul__

    def __matmul__(self, other):
        # (P1 + P2 j)(Q1 + Q2 j) = (P1 Q1 - P2 conj(Q2)) + (P1 Q2 + P2 conj(Q1)) j
        if self.shape[1] != other.shape[0]:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return QuaternionMatrix(
            self.c1 @ other.c1 - self.c2 @ other.c2.conj(),
            self.c1 @ other.c2 + self.c2 @ other.c1.conj(),
        )

    def __pow__(self, p):
        if p < 0:
            raise ValueError("negative powers are not supported")
        out = QuaternionMatrix.identity(self.shape[0])
        for _ in range(p):
            out = out @ self
        return out

    def conj_transpose(self):
        return QuaternionMatrix(self.c1.conj().T, -self.c2.T)

    def allclose(self, other, atol=1e-12):
        return bool(np.allclose(self.c1, other.c1, rtol=0, atol=atol)
                    and np.allclose(self.c2, other.c2, rtol=0, atol=atol))

    def is_hermitian(self, atol=HERMITIAN_ATOL):
        return self.allclose(self.conj_transpose(), atol=atol)

    def __repr__(self):
        return f"QuaternionMatrix(shape={self.shape})"


def _field_of(M):
    if isinstance(M, QuaternionMatrix):
        return "H"
    M = np.asarray(M)
    if np.iscomplexobj(M):
        return "C"
    return "R"


def kron(A, B):
    """Kronecker product of two real or two complex matrices."""
    fa, fb = _field_of(A), _field_of(B)
    if "H" in (fa, fb):
        raise FieldMismatch("Kronecker products of quaternion matrices are not defined here")
    if fa != fb:
        raise FieldMismatch(f"operands live over different fields ({fa} and {fb})")
    return np.kron(np.asarray(A), np.asarray(B))


def vec(B):
    """Column-major stacking: ``e11, e21, ..., en1, e12, ...``."""
    B = np.asarray(B)
    if B.ndim != 2:
        raise ShapeMismatch("vec expects a matrix")
    return B.reshape(-1, order="F")


def unvec(v, r):
    v = np.asarray(v)
    if v.ndim != 1 or v.size != r * r:
        raise ShapeMismatch(f"vector of length {v.size} cannot be unstacked into {r}x{r}")
    return v.reshape((r, r), order="F")


def conj_transpose(M):
    if isinstance(M, QuaternionMatrix):
        return M.conj_transpose()
    return np.asarray(M).conj().T


def is_hermitian(M, atol=HERMITIAN_ATOL):
    if isinstance(M, QuaternionMatrix):
        return M.is_hermitian(atol)
    M = np.asarray(M)
    return bool(np.allclose(M, M.conj().T, rtol=0, atol=atol))


def _require_square(M):
    shape = M.shape
    if len(shape) != 2 or shape[0] != shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {shape}")


def iota(Q: QuaternionMatrix):
    """
    Complex embedding ``M_n(H) -> M_2n(C)``.

    ``A1 + A2 j`` maps to ``[[A1, A2], [-conj(A2), conj(A1)]]``.
    """
    _require_square(Q)
    return np.block([[Q.c1, Q.c2], [-Q.c2.conj(), Q.c1.conj()]])


def iota_inverse(M):
    """Recover ``A1 + A2 j`` from a matrix in the image of :func:`iota`."""
    M = np.asarray(M, dtype=complex)
    _require_square(M)
    n = M.shape[0] // 2
    return QuaternionMatrix(M[:n, :n], M[:n, n:])


def realify(M):
    """``[[Re M, -Im M], [Im M, Re M]]``, similar to ``M (+) conj(M)``."""
    M = np.asarray(M, dtype=complex)
    _require_square(M)
    return np.block([[M.real, -M.imag], [M.imag, M.real]])


def pullback_operator(A):
    """
    Matrix of ``B -> conj(A).T @ B @ A`` in the :func:`vec` basis.

    Built column by column from the images of the matrix units, so the
    result does not depend on any Kronecker identity.  Its spectrum
    coincides with that of ``kron(A, conj(A))``.
    """
    A = np.asarray(A)
    _require_square(A)
    n = A.shape[0]
    AH = A.conj().T
    L = np.empty((n * n, n * n), dtype=A.dtype if np.iscomplexobj(A) else float)
    E = np.zeros((n, n), dtype=L.dtype)
    for k in range(n * n):
        i, j = k % n, k // n
        E[i, j] = 1
        L[:, k] = vec(AH @ E @ A)
        E[i, j] = 0
    return L
