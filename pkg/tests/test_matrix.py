import numpy as np
import pytest

from dyndeg.errors import FieldMismatch, NotSquare, ShapeMismatch
from dyndeg.matrix import (Quaternion, QuaternionMatrix, conj_transpose, iota, iota_inverse,
                           is_hermitian, kron, pullback_operator, realify, unvec, vec)
from dyndeg.polynomial import char_poly_float, find_roots
from helpers import assert_multiset_close, random_complex


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_quaternion_matrix(rng, n):
    return QuaternionMatrix.from_array(rng.standard_normal((n, n, 4)))


def hamilton_product(P, Q):
    """Entrywise reference product built from the scalar Hamilton rule."""
    n, k, m = P.shape[0], P.shape[1], Q.shape[1]
    out = np.zeros((n, m, 4))
    for i in range(n):
        for j in range(m):
            acc = Quaternion(0.0, 0.0, 0.0, 0.0)
            for t in range(k):
                acc = acc + P.entry(i, t) * Q.entry(t, j)
            out[i, j] = acc.as_tuple()
    return QuaternionMatrix.from_array(out)


class TestKron:
    def test_examples(self):
        assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
        D = np.diag([2.0, 3.0])
        assert np.array_equal(kron(D, D), np.diag([4.0, 6.0, 6.0, 9.0]))

    def test_mixed_product(self, rng):
        for _ in range(20):
            A, B, C, D = (random_complex(rng, 3) for _ in range(4))
            lhs = kron(A, B) @ kron(C, D)
            assert np.allclose(lhs, kron(A @ C, B @ D), atol=1e-10, rtol=0)

    def test_spectrum_of_kron_with_conjugate(self, rng):
        A = random_complex(rng, 3)
        pis = find_roots(char_poly_float(A)).roots
        expected = [p * np.conj(q) for p in pis for q in pis]
        assert_multiset_close(np.linalg.eigvals(kron(A, A.conj())), expected, 1e-8)

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatch):
            kron(np.eye(2), np.eye(2) * 1j)
        with pytest.raises(FieldMismatch):
            kron(QuaternionMatrix.identity(2), QuaternionMatrix.identity(2))


class TestVec:
    def test_column_major(self):
        assert vec(np.array([[1, 2], [3, 4]])).tolist() == [1, 3, 2, 4]

    def test_unit_position(self):
        n = 3
        for i in range(n):
            for j in range(n):
                E = np.zeros((n, n))
                E[i, j] = 1
                assert np.flatnonzero(vec(E)).tolist() == [j * n + i]

    def test_round_trip(self, rng):
        B = random_complex(rng, 4)
        assert np.array_equal(unvec(vec(B), 4), B)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            unvec(np.arange(5), 2)


class TestConjTranspose:
    def test_examples(self, rng):
        S = rng.standard_normal((3, 3))
        S = S + S.T
        assert np.array_equal(conj_transpose(S), S)
        assert conj_transpose(np.array([[1j]]))[0, 0] == -1j

    def test_quaternion_involution(self, rng):
        M = random_quaternion_matrix(rng, 3)
        assert conj_transpose(conj_transpose(M)).allclose(M, atol=0)

    def test_quaternion_entries(self, rng):
        M = random_quaternion_matrix(rng, 3)
        H = conj_transpose(M)
        for i in range(3):
            for j in range(3):
                assert np.allclose(H.entry(i, j).as_tuple(), M.entry(j, i).conj().as_tuple())


class TestQuaternionMatrix:
    def test_product_matches_hamilton_rule(self, rng):
        for _ in range(10):
            P, Q = random_quaternion_matrix(rng, 3), random_quaternion_matrix(rng, 3)
            assert (P @ Q).allclose(hamilton_product(P, Q), atol=1e-12)

    def test_units(self):
        i, j, k = (QuaternionMatrix.from_array(np.eye(4)[u].reshape(1, 1, 4)) for u in (1, 2, 3))
        minus_one = QuaternionMatrix.from_array(np.array([[[-1.0, 0, 0, 0]]]))
        assert (i @ j).allclose(k) and (j @ i).allclose(-k)
        assert (i @ i).allclose(minus_one) and (i @ j @ k).allclose(minus_one)


class TestIota:
    def test_examples(self):
        assert np.array_equal(iota(QuaternionMatrix.identity(1)), np.eye(2))
        j = QuaternionMatrix.from_array(np.array([[[0.0, 0, 1, 0]]]))
        assert np.array_equal(iota(j), [[0, 1], [-1, 0]])
        q = QuaternionMatrix.from_array(np.array([[[1.0, 1, 1, 1]]]))
        assert np.array_equal(iota(q), [[1 + 1j, 1 + 1j], [-1 + 1j, 1 - 1j]])

    def test_homomorphism(self, rng):
        for _ in range(100):
            P, Q = random_quaternion_matrix(rng, 3), random_quaternion_matrix(rng, 3)
            assert np.allclose(iota(P + Q), iota(P) + iota(Q), atol=1e-12, rtol=0)
            assert np.allclose(iota(P @ Q), iota(P) @ iota(Q), atol=1e-12, rtol=0)
            assert np.allclose(iota(conj_transpose(P)), conj_transpose(iota(P)), atol=1e-12, rtol=0)

    def test_inverse(self, rng):
        P = random_quaternion_matrix(rng, 4)
        assert iota_inverse(iota(P)).allclose(P, atol=0)

    def test_hermitian_iff(self, rng):
        P = random_quaternion_matrix(rng, 3)
        H = P + conj_transpose(P)
        assert is_hermitian(H) and is_hermitian(iota(H))
        assert not is_hermitian(P) and not is_hermitian(iota(P))

    def test_not_square(self):
        with pytest.raises(NotSquare):
            iota(QuaternionMatrix.from_array(np.zeros((2, 3, 4))))


class TestRealify:
    def test_rotation(self):
        R = realify(np.array([[1j]]))
        assert np.array_equal(R, [[0, -1], [1, 0]])
        assert_multiset_close(np.linalg.eigvals(R), [1j, -1j], 1e-12)

    def test_real_input_doubles_spectrum(self, rng):
        M = rng.standard_normal((3, 3))
        ev = np.linalg.eigvals(M)
        assert_multiset_close(np.linalg.eigvals(realify(M)), np.concatenate([ev, ev]), 1e-8)

    def test_one_plus_i(self):
        roots = find_roots(char_poly_float(realify(np.array([[1 + 1j]])))).roots
        assert_multiset_close(roots, [1 + 1j, 1 - 1j], 1e-12)

    def test_cospectral_with_direct_sum(self, rng):
        for n in range(1, 6):
            M = random_complex(rng, n)
            ev = np.linalg.eigvals(M)
            assert_multiset_close(np.linalg.eigvals(realify(M)), np.concatenate([ev, ev.conj()]), 1e-8)

    def test_not_square(self):
        with pytest.raises(NotSquare):
            realify(np.zeros((2, 3)))


class TestPullback:
    def test_identity(self):
        assert np.array_equal(pullback_operator(np.eye(3)), np.eye(9))

    def test_defining_property(self, rng):
        A, B = random_complex(rng, 3), random_complex(rng, 3)
        assert np.allclose(pullback_operator(A) @ vec(B), vec(A.conj().T @ B @ A))

    def test_diagonal_spectrum(self):
        ev = np.linalg.eigvals(pullback_operator(np.diag([2.0, 3.0])))
        assert sorted(ev.real) == pytest.approx([4, 6, 6, 9])

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    @pytest.mark.parametrize("field", ["R", "C"])
    def test_kronecker_spectrum(self, rng, n, field):
        A = rng.standard_normal((n, n)) if field == "R" else random_complex(rng, n)
        pis = np.linalg.eigvals(A)
        expected = [p * np.conj(q) for p in pis for q in pis]
        L = pullback_operator(A)
        assert_multiset_close(find_roots(char_poly_float(L)).roots, expected, 1e-8)
        assert_multiset_close(np.linalg.eigvals(kron(A, A.conj())), np.linalg.eigvals(L), 1e-8)

    def test_contravariance(self, rng):
        for _ in range(20):
            A, B = random_complex(rng, 3), random_complex(rng, 3)
            lhs = pullback_operator(A @ B)
            assert np.allclose(lhs, pullback_operator(B) @ pullback_operator(A), atol=1e-10, rtol=0)

    def test_hermitian_closure(self, rng):
        for _ in range(20):
            A, B = random_complex(rng, 4), random_complex(rng, 4)
            B = B + B.conj().T
            assert is_hermitian(A.conj().T @ B @ A, atol=1e-12)
