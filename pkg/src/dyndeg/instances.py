"""
Curated arithmetic instances, seeded random instances, and the JSON format.

Catalog expectations are written out by hand from elementary arithmetic
(Gaussian and quaternion norms, quadratic-field embeddings, Weil numbers)
and kept exact: integer polynomial coefficients and quadratic surds
``a + b sqrt(D)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

import numpy as np

from .algebra import AlbertFactor, AlbertType, EndInstance, validate
from .degrees import scale_instance
from .errors import ConfigInvalid, InvalidParameters, SchemaError, VersionError
from .matrix import QuaternionMatrix
from .polynomial import IntPolynomial

FORMAT_VERSION = 1
MAX_BLOCK_SIZE = 6
MAX_RESTRICTED_DIM = 64


class Surd(NamedTuple):
    """Exact value ``a + b * sqrt(D)``."""

    a: int
    b: int = 0
    D: int = 1

    def value(self) -> float:
        return self.a + self.b * math.sqrt(self.D)


@dataclass(frozen=True)
class Expected:
    P_factors: tuple  # ((coefficients, exponent), ...) with constant term first
    degree: int
    chi2: Surd
    lambda1: Surd
    chi1: Optional[Surd] = None

    @property
    def P(self) -> IntPolynomial:
        out = IntPolynomial((1,))
        for coeffs, k in self.P_factors:
            out = out * IntPolynomial(tuple(coeffs)) ** k
        return out


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    instance: EndInstance
    expected: Optional[Expected] = None


# -- builders -----------------------------------------------------------------

def _single(factor, label, curated=True):
    return EndInstance((factor,), label, curated)


def cm_elliptic(a: int, b: int) -> EndInstance:
    """``a + b i`` on an elliptic curve with CM by ``Z[i]`` (type IV)."""
    f = AlbertFactor(AlbertType.IV, 1, 1, 1, 1, (np.array([[complex(a, b)]]),))
    return _single(f, f"cm_elliptic({a},{b})")


def supersingular(a: int, b: int, c: int, d: int) -> EndInstance:
    """``a + b i + c j + d k`` on a supersingular elliptic curve (type III)."""
    q = QuaternionMatrix.from_parts([[a]], [[b]], [[c]], [[d]])
    f = AlbertFactor(AlbertType.III, 1, 2, 1, 1, (q,))
    return _single(f, f"supersingular({a},{b},{c},{d})")


def supersingular_power(entries) -> EndInstance:
    """Quaternion matrix acting on ``E^n`` for a supersingular ``E`` (type III, ``n > 1``).

    ``entries`` is an ``n x n`` nested list of integer 4-tuples.
    """
    arr = np.array(entries, dtype=float)
    n = arr.shape[0]
    f = AlbertFactor(AlbertType.III, 1, 2, n, 1, (QuaternionMatrix.from_array(arr),))
    return _single(f, f"supersingular_power({n})")


def rm_surface(a: int, b: int, D: int) -> EndInstance:
    """``a + b sqrt(D)`` on an abelian surface with real multiplication (type I, ``m = 2``)."""
    if D <= 1 or math.isqrt(D) ** 2 == D:
        raise InvalidParameters("D", "must be a positive non-square")
    s = math.sqrt(D)
    f = AlbertFactor(AlbertType.I, 2, 1, 1, 2,
                     (np.array([[a + b * s]]), np.array([[a - b * s]])),
                     rational_form=((a, b * D), (b, a)))
    return _single(f, f"rm_surface({a},{b},{D})")


def frobenius_ordinary(q: int, trace: int) -> EndInstance:
    """Frobenius of an ordinary elliptic curve over ``F_q``: root of ``t^2 - trace t + q``."""
    disc = trace * trace - 4 * q
    if disc >= 0:
        raise InvalidParameters("trace", "need trace^2 < 4q for a Weil number")
    pi = complex(trace / 2.0, math.sqrt(-disc) / 2.0)
    f = AlbertFactor(AlbertType.IV, 1, 1, 1, 1, (np.array([[pi]]),),
                     rational_form=((0, -q), (1, trace)))
    return _single(f, f"frobenius_ordinary({q},{trace})")


def matrix_power_cm(n: int, entries) -> EndInstance:
    """Matrix over ``Z[i]`` acting on ``E^n`` for a CM curve ``E`` (type IV, ``n > 1``).

    ``entries`` holds ``(re, im)`` pairs.
    """
    arr = np.array(entries, dtype=float)
    A = arr[..., 0] + 1j * arr[..., 1]
    f = AlbertFactor(AlbertType.IV, 1, 1, n, 1, (A,))
    return _single(f, f"matrix_power_cm({n})")


def qm_surface(x, a: int, b: int) -> EndInstance:
    """
    ``x0 + x1 i + x2 j + x3 ij`` in the indefinite quaternion algebra ``(a, b)_Q``
    acting on a QM abelian surface (type II, ``m = 2``).

    The block is the real 2x2 image under ``i -> diag(sqrt a, -sqrt a)``,
    ``j -> [[0, b], [1, 0]]``.
    """
    if a <= 0:
        raise InvalidParameters("a", "indefinite algebra needs a > 0")
    x0, x1, x2, x3 = x
    r = math.sqrt(a)
    one, i = np.eye(2), np.diag([r, -r])
    j = np.array([[0.0, b], [1.0, 0.0]])
    block = x0 * one + x1 * i + x2 * j + x3 * (i @ j)
    norm = x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3
    f = AlbertFactor(AlbertType.II, 1, 2, 1, 2, (block,),
                     rational_form=((0, -norm), (1, 2 * x0)))
    return _single(f, f"qm_surface({x0},{x1},{x2},{x3};{a},{b})")


def product(*instances: EndInstance, label=None) -> EndInstance:
    factors = tuple(f for inst in instances for f in inst.factors)
    label = label or " x ".join(inst.label for inst in instances)
    return EndInstance(factors, label, all(inst.assert_theorem for inst in instances))


def identity_of(inst: EndInstance) -> EndInstance:
    """Identity endomorphism on the same variety."""
    factors = []
    for f in inst.factors:
        size = f.block_size
        if f.albert_type is AlbertType.III:
            blocks = [QuaternionMatrix.identity(size)] * f.e0
        else:
            blocks = [np.eye(size)] * f.e0
        rf = None
        if f.rational_form is not None:
            k = f.reduced_degree
            rf = [[int(i == j) for j in range(k)] for i in range(k)]
        factors.append(f.replace_blocks(blocks, rf))
    return EndInstance(tuple(factors), f"id[{inst.label}]", inst.assert_theorem)


def multiplication_by(m: int, inst: EndInstance) -> EndInstance:
    out = scale_instance(identity_of(inst), m)
    return EndInstance(out.factors, f"{m}_X[{inst.label}]", inst.assert_theorem)


# -- catalog ------------------------------------------------------------------

def catalog() -> list:
    """
    Curated, realizable instances with hand-derived expectations.

    Covers all four Albert types, powers ``A^n`` with ``n > 1``, products of
    non-isogenous factors, identities and multiplication maps.
    """
    E = Expected
    return [
        CatalogEntry("cm_elliptic_1_1", cm_elliptic(1, 1),
                     E((((2, -2, 1), 1),), 2, Surd(2), Surd(2))),
        CatalogEntry("cm_elliptic_2_1", cm_elliptic(2, 1),
                     E((((5, -4, 1), 1),), 5, Surd(5), Surd(5))),
        CatalogEntry("supersingular_1_1_1_1", supersingular(1, 1, 1, 1),
                     E((((4, -2, 1), 1),), 4, Surd(4), Surd(4))),
        CatalogEntry("supersingular_2_1_0_1", supersingular(2, 1, 0, 1),
                     E((((6, -4, 1), 1),), 6, Surd(6), Surd(6))),
        # embeddings 2 +- sqrt 2, each twice
        CatalogEntry("rm_surface_2_1_2", rm_surface(2, 1, 2),
                     E((((2, -4, 1), 2),), 4, Surd(6, 4, 2), Surd(6, 4, 2))),
        # embeddings 1 +- sqrt 5, norm -4
        CatalogEntry("rm_surface_1_1_5", rm_surface(1, 1, 5),
                     E((((-4, -2, 1), 2),), 16, Surd(6, 2, 5), Surd(6, 2, 5))),
        CatalogEntry("frobenius_ordinary_2_1", frobenius_ordinary(2, 1),
                     E((((2, -1, 1), 1),), 2, Surd(2), Surd(2), chi1=Surd(0, 1, 2))),
        CatalogEntry("frobenius_ordinary_3_1", frobenius_ordinary(3, 1),
                     E((((3, -1, 1), 1),), 3, Surd(3), Surd(3), chi1=Surd(0, 1, 3))),
        CatalogEntry("frobenius_ordinary_5_1", frobenius_ordinary(5, 1),
                     E((((5, -1, 1), 1),), 5, Surd(5), Surd(5), chi1=Surd(0, 1, 5))),
        CatalogEntry("frobenius_ordinary_7_3", frobenius_ordinary(7, 3),
                     E((((7, -3, 1), 1),), 7, Surd(7), Surd(7), chi1=Surd(0, 1, 7))),
        # 3 + i + j in (2, 3)_Q: trace 6, norm 9 - 2 - 3 = 4, roots 3 +- sqrt 5
        CatalogEntry("qm_surface_3_1_1_0", qm_surface((3, 1, 1, 0), 2, 3),
                     E((((4, -6, 1), 2),), 16, Surd(14, 6, 5), Surd(14, 6, 5))),
        # upper triangular, diagonal 1+i (norm 2) and 2+i+j+k (norm 7)
        CatalogEntry("supersingular_power_2",
                     supersingular_power([[(1, 1, 0, 0), (0, 0, 1, 0)],
                                          [(0, 0, 0, 0), (2, 1, 1, 1)]]),
                     E((((2, -2, 1), 1), ((7, -4, 1), 1)), 14, Surd(7), Surd(7))),
        # upper triangular, eigenvalues 1+i and 2
        CatalogEntry("matrix_power_cm_2",
                     matrix_power_cm(2, [[(1, 1), (1, 0)], [(0, 0), (2, 0)]]),
                     E((((2, -2, 1), 1), ((-2, 1), 2)), 8, Surd(4), Surd(4))),
        CatalogEntry("product_cm_supersingular",
                     product(cm_elliptic(1, 1), supersingular(1, 1, 1, 1)),
                     E((((2, -2, 1), 1), ((4, -2, 1), 1)), 8, Surd(4), Surd(4))),
        # top moduli 2+sqrt2 (twice) beat sqrt5 from the CM factor
        CatalogEntry("product_cm_rm",
                     product(cm_elliptic(2, 1), rm_surface(2, 1, 2)),
                     E((((5, -4, 1), 1), ((2, -4, 1), 2)), 20, Surd(6, 4, 2), Surd(6, 4, 2))),
        CatalogEntry("identity_cm", identity_of(cm_elliptic(1, 1)),
                     E((((-1, 1), 2),), 1, Surd(1), Surd(1), chi1=Surd(1))),
        CatalogEntry("identity_qm", identity_of(qm_surface((3, 1, 1, 0), 2, 3)),
                     E((((-1, 1), 4),), 1, Surd(1), Surd(1), chi1=Surd(1))),
        CatalogEntry("mult2_supersingular", multiplication_by(2, supersingular(1, 1, 1, 1)),
                     E((((-2, 1), 2),), 4, Surd(4), Surd(4), chi1=Surd(2))),
        CatalogEntry("mult3_rm", multiplication_by(3, rm_surface(2, 1, 2)),
                     E((((-3, 1), 4),), 81, Surd(9), Surd(9), chi1=Surd(3))),
    ]


def catalog_entry(key: str) -> CatalogEntry:
    for entry in catalog():
        if entry.key == key:
            return entry
    raise KeyError(key)


# -- random generation --------------------------------------------------------

@dataclass(frozen=True)
class GeneratorConfig:
    """
    Parameters for :func:`random_instance`.

    ``g_A`` is not drawn: it is solved as the smallest value making
    ``m = 2 g / (e d n)`` a positive integer.  ``d_range`` only matters for
    type IV.
    """

    albert_type: AlbertType
    e0_range: tuple = (1, 1)
    d_range: tuple = (1, 1)
    n_range: tuple = (1, 2)
    entry_distribution: str = "uniform"
    bound: float = 2.0
    seed: int = 0
    count: int = 1
    n_factors: int = 1

    def check(self):
        try:
            t = AlbertType(self.albert_type)
        except ValueError as exc:
            raise ConfigInvalid(f"unknown Albert type {self.albert_type!r}") from exc
        for name in ("e0_range", "d_range", "n_range"):
            lo, hi = getattr(self, name)
            if not (1 <= lo <= hi):
                raise ConfigInvalid(f"{name} = {(lo, hi)} is empty or not positive")
        if self.entry_distribution not in ("uniform", "normal"):
            raise ConfigInvalid(f"unknown distribution {self.entry_distribution!r}")
        if not self.bound > 0:
            raise ConfigInvalid("bound must be positive")
        if self.count < 0 or self.n_factors < 1:
            raise ConfigInvalid("count must be >= 0 and n_factors >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigInvalid("seed must fit in 64 bits")
        n_hi, d_hi = self.n_range[1], self.d_range[1] if t is AlbertType.IV else 1
        size = {AlbertType.I: n_hi, AlbertType.II: 2 * n_hi,
                AlbertType.III: n_hi, AlbertType.IV: d_hi * n_hi}[t]
        restricted = {"R": size * (size + 1) // 2, "C": size * size, "H": size * (2 * size - 1)}[t.field]
        if size > MAX_BLOCK_SIZE or restricted > MAX_RESTRICTED_DIM:
            raise ConfigInvalid(f"block size {size} too large (cap {MAX_BLOCK_SIZE}, "
                                f"restricted dimension {restricted} vs {MAX_RESTRICTED_DIM})")
        return t


def _rng(seed, *key):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def _draw(rng, cfg, shape):
    if cfg.entry_distribution == "uniform":
        return rng.uniform(-cfg.bound, cfg.bound, size=shape)
    return rng.standard_normal(size=shape)


def _solve_g_A(e, d):
    return e * d // math.gcd(e * d, 2)


def random_instance(cfg: GeneratorConfig) -> EndInstance:
    """
    One instance, determined entirely by ``cfg``.

    Draw order: parameters ``(e0, d, n)`` for every factor from stream
    ``(0,)``, then the entries of block ``i`` of factor ``k`` from stream
    ``(1, k, i)``; all streams are PCG64 seeded from ``cfg.seed``.
    """
    t = cfg.check()
    params = _rng(cfg.seed, 0)
    factors = []
    for k in range(cfg.n_factors):
        e0 = int(params.integers(cfg.e0_range[0], cfg.e0_range[1], endpoint=True))
        n = int(params.integers(cfg.n_range[0], cfg.n_range[1], endpoint=True))
        if t is AlbertType.IV:
            d = int(params.integers(cfg.d_range[0], cfg.d_range[1], endpoint=True))
        else:
            d = {AlbertType.I: 1, AlbertType.II: 2, AlbertType.III: 2}[t]
        e = 2 * e0 if t is AlbertType.IV else e0
        g_A = _solve_g_A(e, d)
        size = {AlbertType.I: n, AlbertType.II: 2 * n, AlbertType.III: n, AlbertType.IV: d * n}[t]
        blocks = []
        for i in range(e0):
            rng = _rng(cfg.seed, 1, k, i)
            if t is AlbertType.III:
                blocks.append(QuaternionMatrix.from_array(_draw(rng, cfg, (size, size, 4))))
            elif t is AlbertType.IV:
                z = _draw(rng, cfg, (size, size, 2))
                blocks.append(z[..., 0] + 1j * z[..., 1])
            else:
                blocks.append(_draw(rng, cfg, (size, size)))
        f = AlbertFactor(t, e0, d, n, g_A, tuple(blocks))
        validate(f)
        factors.append(f)
    return EndInstance(tuple(factors), f"random-{t.value}-seed{cfg.seed}", False)


def random_instances(cfg: GeneratorConfig) -> list:
    """``cfg.count`` instances with seeds ``cfg.seed, cfg.seed + 1, ...``."""
    cfg.check()
    return [random_instance(replace(cfg, seed=cfg.seed + k, count=1)) for k in range(cfg.count)]


# -- JSON format --------------------------------------------------------------

def _encode_block(f: AlbertFactor, b):
    if isinstance(b, QuaternionMatrix):
        return [[[float(x) for x in q] for q in row] for row in b.to_array()]
    if f.albert_type is AlbertType.IV:
        return [[[float(z.real), float(z.imag)] for z in row] for row in b]
    return [[float(x) for x in row] for row in b]


def instance_to_dict(inst: EndInstance, with_version=True) -> dict:
    doc = {}
    if with_version:
        doc["format_version"] = FORMAT_VERSION
    doc["label"] = inst.label
    doc["assert"] = inst.assert_theorem
    doc["factors"] = []
    for f in inst.factors:
        fd = {"albert_type": f.albert_type.value, "e0": f.e0, "d": f.d, "n": f.n, "g_A": f.g_A,
              "translation_flag": f.translation_flag,
              "blocks": [_encode_block(f, b) for b in f.blocks]}
        if f.rational_form is not None:
            fd["rational_form"] = [list(row) for row in f.rational_form]
        doc["factors"].append(fd)
    return doc


def serialize_instance(inst: EndInstance) -> str:
    """JSON text; floats use the shortest repr that round-trips exactly."""
    return json.dumps(instance_to_dict(inst), indent=2) + "\n"


def serialize_batch(instances) -> str:
    doc = {"format_version": FORMAT_VERSION,
           "instances": [instance_to_dict(i, with_version=False) for i in instances]}
    return json.dumps(doc, indent=2) + "\n"


def _is_number(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _require(obj, key, path):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    if key not in obj:
        raise SchemaError(f"{path}/{key}", "missing required field")
    return obj[key]


def _pos_int(obj, key, path):
    v = _require(obj, key, path)
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise SchemaError(f"{path}/{key}", f"expected a positive integer, got {v!r}")
    return v


def _decode_matrix(raw, path, width):
    """``width`` is 0 for real scalars, 2 for complex pairs, 4 for quaternions."""
    if not isinstance(raw, list) or not raw:
        raise SchemaError(path, "expected a non-empty list of rows")
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != len(raw[0]):
            raise SchemaError(f"{path}/{i}", "rows must be lists of equal length")
        out = []
        for j, x in enumerate(row):
            p = f"{path}/{i}/{j}"
            if width == 0:
                if not _is_number(x):
                    raise SchemaError(p, f"expected a real number, got {x!r}")
                out.append(float(x))
            else:
                if not (isinstance(x, list) and len(x) == width and all(_is_number(v) for v in x)):
                    raise SchemaError(p, f"expected an array of {width} numbers")
                out.append([float(v) for v in x])
        rows.append(out)
    return np.array(rows, dtype=float)


def _decode_factor(fd, path) -> AlbertFactor:
    t_raw = _require(fd, "albert_type", path)
    try:
        t = AlbertType(t_raw)
    except ValueError:
        raise SchemaError(f"{path}/albert_type", f"expected one of I, II, III, IV, got {t_raw!r}") from None
    e0, d, n, g_A = (_pos_int(fd, k, path) for k in ("e0", "d", "n", "g_A"))
    flag = fd.get("translation_flag", False)
    if not isinstance(flag, bool):
        raise SchemaError(f"{path}/translation_flag", "expected a boolean")
    raw_blocks = _require(fd, "blocks", path)
    if not isinstance(raw_blocks, list):
        raise SchemaError(f"{path}/blocks", "expected a list of matrices")
    width = {AlbertType.III: 4, AlbertType.IV: 2}.get(t, 0)
    blocks = []
    for i, rb in enumerate(raw_blocks):
        arr = _decode_matrix(rb, f"{path}/blocks/{i}", width)
        if t is AlbertType.III:
            blocks.append(QuaternionMatrix.from_array(arr))
        elif t is AlbertType.IV:
            blocks.append(arr[..., 0] + 1j * arr[..., 1])
        else:
            blocks.append(arr)
    rf = fd.get("rational_form")
    if rf is not None:
        ok = isinstance(rf, list) and all(
            isinstance(r, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in r) for r in rf)
        if not ok:
            raise SchemaError(f"{path}/rational_form", "expected a matrix of integers")
    f = AlbertFactor(t, e0, d, n, g_A, tuple(blocks), flag, rf)
    try:
        validate(f)
    except InvalidParameters as exc:
        raise SchemaError(f"{path}/{exc.invariant}", str(exc)) from exc
    return f


def _decode_instance(doc, path) -> EndInstance:
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected an object")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise SchemaError(f"{path}/label", "expected a string")
    asserted = doc.get("assert", False)
    if not isinstance(asserted, bool):
        raise SchemaError(f"{path}/assert", "expected a boolean")
    raw = _require(doc, "factors", path)
    if not isinstance(raw, list) or not raw:
        raise SchemaError(f"{path}/factors", "expected a non-empty list")
    factors = tuple(_decode_factor(fd, f"{path}/factors/{i}") for i, fd in enumerate(raw))
    return EndInstance(factors, label, asserted)


def _load(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("", "top level must be an object")
    version = _require(doc, "format_version", "")
    if version != FORMAT_VERSION:
        raise VersionError("/format_version", f"unsupported format_version {version!r}")
    return doc


def parse_instance(text: str) -> EndInstance:
    """Parse a single-instance document."""
    return _decode_instance(_load(text), "")


def parse_document(text: str) -> list:
    """Parse either a single instance or a batch ``{"instances": [...]}``."""
    doc = _load(text)
    if "instances" in doc:
        raw = doc["instances"]
        if not isinstance(raw, list):
            raise SchemaError("/instances", "expected a list")
        return [_decode_instance(d, f"/instances/{i}") for i, d in enumerate(raw)]
    return [_decode_instance(doc, "")]
