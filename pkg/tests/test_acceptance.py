"""
Acceptance suite.  One test per criterion; each prints a single
``PASS``/``FAIL`` line, and the lines are collected again in the pytest
terminal summary.  Also runnable directly: ``python3 tests/test_acceptance.py``.
"""

import contextlib
import io
import json
import math
import os
import sys
import tempfile
import time

import numpy as np

sys.path.insert(0, os.path.dirname(__file__))

from dyndeg.cli import main as cli_main  # noqa: E402
from dyndeg.degrees import (cohomological_degrees, factor_lambda1,  # noqa: E402
                            full_char_poly_exact, numerical_degree_lambda1, power_instance,
                            reduced_roots, scale_instance, verify_main_theorem)
from dyndeg.instances import (GeneratorConfig, catalog, cm_elliptic,  # noqa: E402
                              frobenius_ordinary, random_instance, rm_surface,
                              serialize_instance, supersingular)
from dyndeg.matrix import (QuaternionMatrix, conj_transpose, iota,  # noqa: E402
                           pullback_operator, realify)
from dyndeg.polynomial import (IntPolynomial, char_poly_float, find_roots,  # noqa: E402
                               sorted_moduli)
from helpers import match_multisets  # noqa: E402

RESULTS = {}

RANGES = {
    "I": dict(e0_range=(1, 3), n_range=(1, 4)),
    "II": dict(e0_range=(1, 3), n_range=(1, 2)),
    "III": dict(e0_range=(1, 3), n_range=(1, 4)),
    "IV": dict(e0_range=(1, 3), d_range=(1, 2), n_range=(1, 2)),
}


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}"
    RESULTS[number] = line
    print(line)
    return ok


def relerr(a, b):
    return abs(a - b) / max(abs(b), np.finfo(float).tiny)


# -- criteria -------------------------------------------------------------------

def criterion_1():
    start = time.perf_counter()
    worst, count = 0.0, 0
    for t, ranges in RANGES.items():
        for seed in range(1, 201):
            inst = random_instance(GeneratorConfig(t, seed=seed, **ranges))
            for k, f in enumerate(inst.factors):
                assert f.block_size <= 4 and f.e0 <= 3
                lam, _ = factor_lambda1(f, k)
                top = sorted_moduli(reduced_roots(f))[0]
                worst = max(worst, relerr(lam, top ** 2))
                count += 1
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-8 and elapsed <= 60.0
    return record(1, "matrix-level key equality", ok,
                  f"{count} factors, max rel err {worst:.2e} (<= 1e-8), {elapsed:.1f} s (<= 60 s)")


def criterion_2():
    entries = catalog()
    types = {f.albert_type.value for e in entries for f in e.instance.factors}
    products = sum(len(e.instance.factors) >= 2 for e in entries)
    worst_thm = worst_pair = 0.0
    ineq = True
    for e in entries:
        r = verify_main_theorem(e.instance, tol=1e-9)
        worst_thm = max(worst_thm, relerr(r.lambda1, r.chi2))
        worst_pair = max(worst_pair, relerr(r.omega_moduli[1], r.omega_moduli[0]))
        ineq &= r.lambda1 <= r.chi2 + 1e-9
    ok = (len(entries) >= 10 and types == {"I", "II", "III", "IV"} and products >= 1
          and worst_thm <= 1e-9 and worst_pair <= 1e-9 and ineq)
    return record(2, "theorem suite on curated catalog", ok,
                  f"{len(entries)} entries, types {sorted(types)}, {products} products; "
                  f"|lambda1-chi2| {worst_thm:.2e}, pairing {worst_pair:.2e}, lambda1<=chi2+tol {ineq}")


def criterion_3():
    worst, exact = 0.0, True
    for q, a in [(2, 1), (3, 1), (5, 1), (7, 3)]:
        assert a * a - 4 * q < 0
        inst = frobenius_ordinary(q, a)
        chi = cohomological_degrees(inst)
        for i in range(3):
            worst = max(worst, relerr(chi[i], q ** (i / 2)))
        lam, _ = numerical_degree_lambda1(inst)
        exact &= round(lam) == q
    ok = worst <= 1e-10 and exact
    return record(3, "Frobenius anchor", ok,
                  f"max rel err chi_i vs q^(i/2) {worst:.2e} (<= 1e-10), round(lambda1) == q: {exact}")


def criterion_4():
    checks = [
        (cm_elliptic(1, 1), IntPolynomial((2, -2, 1)), 2),
        (supersingular(1, 1, 1, 1), IntPolynomial((4, -2, 1)), 4),
        (rm_surface(2, 1, 2), IntPolynomial((2, -4, 1)) ** 2, None),
    ]
    ok, parts = True, []
    for inst, P, deg in checks:
        got = full_char_poly_exact(inst)
        good = got == P and (deg is None or got(0) == deg)
        ok &= good
        parts.append(f"{inst.label}: {got}")
    return record(4, "exact-arithmetic anchor", ok, "; ".join(parts))


def criterion_5():
    rng = np.random.default_rng(5)
    worst = 0.0
    for n in range(2, 6):
        for _ in range(50):
            A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            pis = np.linalg.eigvals(A)
            expected = [p * np.conj(q) for p in pis for q in pis]
            spectrum = find_roots(char_poly_float(pullback_operator(A))).roots
            worst = max(worst, match_multisets(spectrum, expected, 1e-7))
    return record(5, "pullback spectrum vs Kronecker products", worst <= 1e-7,
                  f"200 matrices, sizes 2..5, max matching err {worst:.2e} (<= 1e-7)")


def criterion_6():
    rng = np.random.default_rng(6)
    worst_iota = worst_real = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 5))
        P = QuaternionMatrix.from_array(rng.standard_normal((n, n, 4)))
        Q = QuaternionMatrix.from_array(rng.standard_normal((n, n, 4)))
        for lhs, rhs in [(iota(P + Q), iota(P) + iota(Q)), (iota(P @ Q), iota(P) @ iota(Q)),
                         (iota(conj_transpose(P)), conj_transpose(iota(P))),
                         (iota(QuaternionMatrix.identity(n)), np.eye(2 * n))]:
            worst_iota = max(worst_iota, np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(rhs))))
    for _ in range(100):
        n = int(rng.integers(1, 6))
        M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        ev = np.linalg.eigvals(M)
        spectrum = find_roots(char_poly_float(realify(M))).roots
        worst_real = max(worst_real, match_multisets(spectrum, np.concatenate([ev, ev.conj()]), 1e-10))
    ok = worst_iota <= 1e-10 and worst_real <= 1e-10
    return record(6, "embedding and realification", ok,
                  f"iota identities {worst_iota:.2e}, realify cospectrality {worst_real:.2e} (<= 1e-10)")


def criterion_7():
    worst = 0.0
    count = 0
    for t, ranges in RANGES.items():
        for seed in range(1, 26):
            inst = random_instance(GeneratorConfig(t, seed=seed, **ranges))
            chi = cohomological_degrees(inst)
            lam, _ = numerical_degree_lambda1(inst)
            for m in (2, 3):
                scaled = scale_instance(inst, m)
                for i, c in enumerate(cohomological_degrees(scaled)):
                    worst = max(worst, relerr(c, m ** i * chi[i]))
                worst = max(worst, relerr(numerical_degree_lambda1(scaled)[0], m * m * lam))
            for c2, c in zip(cohomological_degrees(power_instance(inst, 2)), chi):
                worst = max(worst, relerr(c2, c * c))
            count += 1
    return record(7, "covariance laws", worst <= 1e-8,
                  f"{count} instances, m in {{2, 3}} and alpha^2, max rel err {worst:.2e} (<= 1e-8)")


def criterion_8():
    products = [e for e in catalog() if len(e.instance.factors) >= 2]
    worst = 0.0
    for e in products:
        r = verify_main_theorem(e.instance, tol=1e-9)
        worst = max(worst, relerr(r.lambda1, max(r.factor_lambda1)),
                    relerr(r.chi2, max(r.factor_chi2)))
    ok = bool(products) and worst <= 1e-9
    return record(8, "product splitting", ok,
                  f"{len(products)} products, max rel err {worst:.2e} (<= 1e-9)")


def criterion_9():
    with tempfile.TemporaryDirectory() as tmp:
        cat = os.path.join(tmp, "catalog.json")
        bad = os.path.join(tmp, "bad.json")
        sink = io.StringIO()
        with contextlib.redirect_stdout(sink), contextlib.redirect_stderr(io.StringIO()):
            cli_main(["catalog", "--out", cat])
            verify_code = cli_main(["verify", cat])
            doc = json.loads(serialize_instance(cm_elliptic(1, 1)))
            doc["factors"][0]["blocks"] = "corrupted"
            with open(bad, "w") as fh:
                json.dump(doc, fh)
            bad_code = cli_main(["verify", bad])
        runs = []
        for k in range(2):
            out = os.path.join(tmp, f"run{k}.csv")
            with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
                cli_main(["random", "--count", "10", "--seed", "11", "--out", out])
            with open(out, "rb") as fh:
                runs.append(fh.read())
    identical = runs[0] == runs[1] and len(runs[0]) > 0
    ok = verify_code == 0 and bad_code == 2 and identical
    return record(9, "CLI contract", ok,
                  f"verify catalog exit {verify_code}, corrupted file exit {bad_code}, "
                  f"byte-identical CSV {identical}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def test_criterion_1_key_equality():
    assert criterion_1(), RESULTS[1]


def test_criterion_2_theorem_suite():
    assert criterion_2(), RESULTS[2]


def test_criterion_3_frobenius():
    assert criterion_3(), RESULTS[3]


def test_criterion_4_exact_anchor():
    assert criterion_4(), RESULTS[4]


def test_criterion_5_kronecker():
    assert criterion_5(), RESULTS[5]


def test_criterion_6_embeddings():
    assert criterion_6(), RESULTS[6]


def test_criterion_7_covariance():
    assert criterion_7(), RESULTS[7]


def test_criterion_8_products():
    assert criterion_8(), RESULTS[8]


def test_criterion_9_cli():
    assert criterion_9(), RESULTS[9]


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
