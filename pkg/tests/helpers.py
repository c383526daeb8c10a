import numpy as np


def match_multisets(a, b, tol):
    """
    Greedy matching of two complex multisets.

    Walk ``a`` by decreasing modulus and pair each value with the nearest
    unused value of ``b``.  Returns the largest relative pairing error,
    or ``inf`` if the sizes differ.
    """
    a = np.asarray(a, dtype=complex).ravel()
    b = list(np.asarray(b, dtype=complex).ravel())
    if a.size != len(b):
        return np.inf
    worst = 0.0
    for z in sorted(a, key=lambda z: -abs(z)):
        k = int(np.argmin([abs(z - w) for w in b]))
        worst = max(worst, abs(z - b[k]) / max(1.0, abs(z)))
        b.pop(k)
    return worst


def assert_multiset_close(a, b, tol):
    err = match_multisets(a, b, tol)
    assert err <= tol, f"multisets differ: worst pairing error {err:.3e} > {tol:.1e}"


def rel(a, b):
    return abs(a - b) / max(abs(b), 1.0)


def random_complex(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
