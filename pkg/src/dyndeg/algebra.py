"""
Albert-type factors and endomorphism instances.

An endomorphism of ``X = A_1^{n_1} x ... x A_s^{n_s}`` is given by one
:class:`AlbertFactor` per isotypic piece.  Each factor carries the real
realization of its component of ``End(X)_R``: ``e0`` square blocks over R,
C or H, in a fixed realization where the Rosati involution is the
(conjugate) transpose.  Symmetric elements are then literally the
symmetric / Hermitian matrices, spanned by :func:`hermitian_basis`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import IndexOutOfRange, InvalidParameters
from .matrix import QuaternionMatrix, conj_transpose, is_hermitian


class AlbertType(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"

    @property
    def field(self) -> str:
        return {"I": "R", "II": "R", "III": "H", "IV": "C"}[self.value]


# d is fixed for types I-III, free for IV
_FORCED_D = {AlbertType.I: 1, AlbertType.II: 2, AlbertType.III: 2}


@dataclass(frozen=True, eq=False)
class AlbertFactor:
    """
    One isotypic factor ``A^n`` together with the blocks of ``alpha``.

    ``rational_form`` is an optional square integer matrix whose
    characteristic polynomial is the reduced characteristic polynomial of
    ``alpha`` (for instance the regular representation of ``a + b sqrt(D)``
    on ``Z[sqrt(D)]``).  It gives an exact route when the real blocks are
    irrational.
    """

    albert_type: AlbertType
    e0: int
    d: int
    n: int
    g_A: int
    blocks: tuple
    translation_flag: bool = False
    rational_form: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "albert_type", AlbertType(self.albert_type))
        blocks = []
        for b in self.blocks:
            if isinstance(b, QuaternionMatrix):
                blocks.append(b)
            elif self.albert_type is AlbertType.III:
                arr = np.asarray(b, dtype=float)
                blocks.append(QuaternionMatrix.from_array(arr) if arr.ndim == 3 else QuaternionMatrix(arr))
            else:
                dtype = complex if self.albert_type is AlbertType.IV else float
                arr = np.array(b, dtype=dtype)
                arr.setflags(write=False)
                blocks.append(arr)
        object.__setattr__(self, "blocks", tuple(blocks))
        if self.rational_form is not None:
            rf = tuple(tuple(int(x) for x in row) for row in self.rational_form)
            object.__setattr__(self, "rational_form", rf)

    @property
    def field(self) -> str:
        return self.albert_type.field

    @property
    def e(self) -> int:
        return 2 * self.e0 if self.albert_type is AlbertType.IV else self.e0

    @property
    def block_size(self) -> int:
        """Side length of each block in its own field."""
        t = self.albert_type
        if t is AlbertType.II:
            return 2 * self.n
        if t is AlbertType.IV:
            return self.d * self.n
        return self.n

    @property
    def dim(self) -> int:
        """Contribution ``n * g_A`` to ``g = dim X``."""
        return self.n * self.g_A

    @property
    def m(self) -> int:
        """Exponent in ``P = chi_red^m``; only meaningful after validation."""
        return (2 * self.dim) // (self.e * self.d * self.n)

    @property
    def reduced_degree(self) -> int:
        return self.e * self.d * self.n

    def summary(self) -> str:
        return f"{self.albert_type.value}(e0={self.e0},d={self.d},n={self.n},g_A={self.g_A})"

    def replace_blocks(self, blocks, rational_form=None) -> "AlbertFactor":
        return AlbertFactor(self.albert_type, self.e0, self.d, self.n, self.g_A,
                            tuple(blocks), self.translation_flag, rational_form)


@dataclass(frozen=True, eq=False)
class EndInstance:
    """
    A pair ``(X, alpha)`` up to translation.

    Factors are asserted by the caller to be mutually non-isogenous; this
    cannot be checked from the data.  ``assert_theorem`` marks curated,
    realizable instances on which the full theorem is asserted.
    """

    factors: tuple
    label: str = ""
    assert_theorem: bool = False

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise InvalidParameters("factors", "an instance needs at least one factor")

    @property
    def g(self) -> int:
        return sum(f.dim for f in self.factors)

    def type_summary(self) -> str:
        return " x ".join(f.summary() for f in self.factors)

    @property
    def translation_discarded(self) -> bool:
        return any(f.translation_flag for f in self.factors)


@dataclass(frozen=True)
class ValidationReport:
    e: int
    m: int
    dim: int


def validate(f: AlbertFactor) -> ValidationReport:
    """
    Check the arithmetic invariants of a factor.

    Only integrality of ``m = 2 g / (e d n)`` is checked on the arithmetic
    side; whether the tuple is realized by an actual abelian variety is not.
    """
    for name in ("e0", "d", "n", "g_A"):
        v = getattr(f, name)
        if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 1:
            raise InvalidParameters(name, f"must be a positive integer, got {v!r}")
    forced = _FORCED_D.get(f.albert_type)
    if forced is not None and f.d != forced:
        raise InvalidParameters("d", f"type {f.albert_type.value} forces d = {forced}, got {f.d}")

    num, den = 2 * f.dim, f.e * f.d * f.n
    if num % den:
        raise InvalidParameters("m", f"m = 2g/(edn) = {num}/{den} is not an integer")

    if len(f.blocks) != f.e0:
        raise InvalidParameters("blocks", f"expected {f.e0} blocks, got {len(f.blocks)}")
    size = f.block_size
    for i, b in enumerate(f.blocks):
        if f.albert_type is AlbertType.III and not isinstance(b, QuaternionMatrix):
            raise InvalidParameters("blocks", f"block {i} must be a quaternion matrix")
        if b.shape != (size, size):
            raise InvalidParameters("blocks", f"block {i} has shape {b.shape}, expected {(size, size)}")
        if isinstance(b, np.ndarray) and not np.all(np.isfinite(b)):
            raise InvalidParameters("blocks", f"block {i} has non-finite entries")
        if isinstance(b, QuaternionMatrix) and not np.all(np.isfinite(b.to_array())):
            raise InvalidParameters("blocks", f"block {i} has non-finite entries")

    if f.rational_form is not None:
        k = f.reduced_degree
        rf = f.rational_form
        if len(rf) != k or any(len(row) != k for row in rf):
            raise InvalidParameters("rational_form", f"must be a {k}x{k} integer matrix")
    return ValidationReport(e=f.e, m=num // den, dim=f.dim)


def validate_instance(inst: EndInstance) -> list:
    return [validate(f) for f in inst.factors]


@dataclass(frozen=True, eq=False)
class HermitianBasis:
    field: str
    r: int
    elements: tuple

    def __len__(self):
        return len(self.elements)

    @staticmethod
    def expected_size(field: str, r: int) -> int:
        return {"R": r * (r + 1) // 2, "C": r * r, "H": r * (2 * r - 1)}[field]


def hermitian_basis(field: str, r: int) -> HermitianBasis:
    """
    Canonical real basis of the r x r symmetric / Hermitian matrices.

    Diagonal units come first, then for each ``i < j`` in lexicographic
    order: ``e_ij + e_ji``, then ``u (e_ij - e_ji)`` for each imaginary unit
    ``u`` of the field (``i`` for C; ``i``, ``j``, ``k`` for H).
    """
    if r < 1:
        raise ValueError("r must be positive")
    field = {"ℝ": "R", "ℂ": "C", "ℍ": "H"}.get(field, field)
    if field not in ("R", "C", "H"):
        raise ValueError(f"unknown field {field!r}")

    def unit(i, j):
        E = np.zeros((r, r))
        E[i, j] = 1.0
        return E

    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    out = []
    if field == "R":
        out += [unit(i, i) for i in range(r)]
        out += [unit(i, j) + unit(j, i) for i, j in pairs]
    elif field == "C":
        out += [unit(i, i).astype(complex) for i in range(r)]
        for i, j in pairs:
            out.append((unit(i, j) + unit(j, i)).astype(complex))
            out.append(1j * (unit(i, j) - unit(j, i)))
    else:
        zero = np.zeros((r, r))
        out += [QuaternionMatrix(unit(i, i)) for i in range(r)]
        for i, j in pairs:
            sym, anti = unit(i, j) + unit(j, i), unit(i, j) - unit(j, i)
            out.append(QuaternionMatrix.from_parts(sym, zero, zero, zero))
            out.append(QuaternionMatrix.from_parts(zero, anti, zero, zero))
            out.append(QuaternionMatrix.from_parts(zero, zero, anti, zero))
            out.append(QuaternionMatrix.from_parts(zero, zero, zero, anti))
    for el in out:
        for a in (el.c1, el.c2) if isinstance(el, QuaternionMatrix) else (el,):
            a.setflags(write=False)
    assert all(is_hermitian(el) for el in out)
    return HermitianBasis(field, r, tuple(out))


def rosati(f: AlbertFactor, block_index: int):
    """Realization of ``alpha^dagger`` on one block: its conjugate transpose."""
    if not 0 <= block_index < len(f.blocks):
        raise IndexOutOfRange(f"block index {block_index} outside 0..{len(f.blocks) - 1}")
    return conj_transpose(f.blocks[block_index])


def realization_dimension(f: AlbertFactor) -> int:
    """Real dimension of the factor's component of ``End(X)_R``."""
    scale = {"R": 1, "C": 2, "H": 4}[f.field]
    return f.e0 * scale * f.block_size ** 2
