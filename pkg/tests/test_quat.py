import numpy as np
import pytest

from qmlp.quat import (
    quat,
    hamilton_mul,
    involution,
    conjugate,
    norm_sq,
    split_product,
    hermitian_dot,
    hermitian_matvec,
)

from oracles import matrix_mul, matrix_hermitian_dot, block_hermitian_matvec

RNG = np.random.default_rng(12345)

ONE = quat(1, 0, 0, 0)
I = quat(0, 1, 0, 0)
J = quat(0, 0, 1, 0)
K = quat(0, 0, 0, 1)


def random_quats(n, lo=-10.0, hi=10.0):
    return RNG.uniform(lo, hi, size=(n, 4))


class TestHamilton:
    def test_basis_table_exact(self):
        # all ordered basis products, with exact equality
        table = {
            (0, 1): K, (1, 2): I, (2, 0): J,          # ij=k, jk=i, ki=j
            (1, 0): -K, (2, 1): -I, (0, 2): -J,       # ji=-k, kj=-i, ik=-j
        }
        basis = [I, J, K]
        for (a, b), expected in table.items():
            assert (hamilton_mul(basis[a], basis[b]) == expected).all()
        for mu in basis:
            assert (hamilton_mul(mu, mu) == -ONE).all()
        ijk = hamilton_mul(hamilton_mul(I, J), K)
        assert (ijk == -ONE).all()

    def test_identity_element(self):
        q = quat(2.5, -1.0, 4.0, 0.5)
        assert (hamilton_mul(ONE, q) == q).all()
        assert (hamilton_mul(q, ONE) == q).all()

    def test_non_commutative(self):
        assert (hamilton_mul(I, J) == -hamilton_mul(J, I)).all()
        x, y = random_quats(2)
        assert not np.allclose(hamilton_mul(x, y), hamilton_mul(y, x))

    def test_matches_matrix_representation(self):
        for x, y in zip(random_quats(200), random_quats(200)):
            np.testing.assert_allclose(hamilton_mul(x, y), matrix_mul(x, y), atol=1e-12)

    def test_product_conjugate_reverses(self):
        for x, y in zip(random_quats(100), random_quats(100)):
            lhs = conjugate(hamilton_mul(x, y))
            rhs = hamilton_mul(conjugate(y), conjugate(x))
            np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_broadcasts_over_vectors(self):
        xs = random_quats(7)
        y = quat(1, 2, 3, 4)
        batch = hamilton_mul(xs, y)
        for k in range(7):
            np.testing.assert_array_equal(batch[k], hamilton_mul(xs[k], y))


class TestInvolution:
    def test_sign_patterns(self):
        q = quat(1, 2, 3, 4)
        assert (involution(q, "i") == quat(1, 2, -3, -4)).all()
        assert (involution(q, "j") == quat(1, -2, 3, -4)).all()
        assert (involution(q, "k") == quat(1, -2, -3, 4)).all()

    def test_real_fixed_point(self):
        q = quat(5, 0, 0, 0)
        for axis in "ijk":
            assert (involution(q, axis) == q).all()

    def test_equals_sandwich_product(self):
        # involution about mu is -mu q mu
        for axis, mu in (("i", I), ("j", J), ("k", K)):
            for q in random_quats(100):
                sandwich = hamilton_mul(hamilton_mul(-mu, q), mu)
                np.testing.assert_allclose(involution(q, axis), sandwich, atol=1e-12)

    def test_involutive(self):
        for axis in "ijk":
            for q in random_quats(50):
                np.testing.assert_array_equal(involution(involution(q, axis), axis), q)

    def test_bad_axis(self):
        with pytest.raises(ValueError):
            involution(quat(1, 0, 0, 0), "x")


class TestConjugate:
    def test_signs(self):
        assert (conjugate(quat(1, 2, 3, 4)) == quat(1, -2, -3, -4)).all()

    def test_real_fixed_point(self):
        assert (conjugate(quat(3, 0, 0, 0)) == quat(3, 0, 0, 0)).all()

    def test_involution_sum_identity(self):
        # conj(q) == (q^i + q^j + q^k - q) / 2
        for q in random_quats(200):
            total = involution(q, "i") + involution(q, "j") + involution(q, "k") - q
            np.testing.assert_allclose(conjugate(q), total / 2, atol=1e-12)


class TestNormSq:
    def test_unit_components(self):
        assert norm_sq(quat(1, 1, 1, 1)) == 4.0
        assert norm_sq(quat(0, 0, 0, 0)) == 0.0

    def test_equals_q_times_conj(self):
        for q in random_quats(200):
            prod = hamilton_mul(q, conjugate(q))
            assert abs(norm_sq(q) - prod[0]) < 1e-9
            assert np.max(np.abs(prod[1:])) < 1e-12

    def test_nonnegative(self):
        assert (norm_sq(random_quats(100)) >= 0).all()


class TestSplitProduct:
    def test_componentwise(self):
        out = split_product(quat(1, 2, 3, 4), quat(2, 2, 2, 2))
        assert (out == quat(2, 4, 6, 8)).all()

    def test_all_ones_identity(self):
        x = quat(0.3, -7.0, 2.0, 9.0)
        assert (split_product(x, quat(1, 1, 1, 1)) == x).all()

    def test_commutative_and_associative(self):
        x, y, z = random_quats(3)
        np.testing.assert_array_equal(split_product(x, y), split_product(y, x))
        np.testing.assert_allclose(
            split_product(split_product(x, y), z),
            split_product(x, split_product(y, z)),
            atol=1e-12,
        )

    def test_conjugate_property(self):
        # conj(x ⊙ y) == x ⊙ conj(y) == conj(x) ⊙ y
        for x, y in zip(random_quats(100), random_quats(100)):
            lhs = conjugate(split_product(x, y))
            np.testing.assert_allclose(lhs, split_product(x, conjugate(y)), atol=1e-12)
            np.testing.assert_allclose(lhs, split_product(conjugate(x), y), atol=1e-12)

    def test_vector_forms(self):
        xs, ys = RNG.uniform(-4, 4, (6, 4)), RNG.uniform(-4, 4, (6, 4))
        batch = split_product(xs, ys)
        np.testing.assert_array_equal(batch, split_product(ys, xs))
        for k in range(6):
            np.testing.assert_array_equal(batch[k], split_product(xs[k], ys[k]))
            np.testing.assert_allclose(
                conjugate(batch[k]), split_product(xs[k], conjugate(ys[k])), atol=1e-12
            )
        # scalar broadcast applies the scalar to every element
        scalar = quat(2, 3, 4, 5)
        bcast = split_product(xs, scalar)
        for k in range(6):
            np.testing.assert_array_equal(bcast[k], split_product(xs[k], scalar))


class TestHermitianDot:
    def test_unit_basis_selects_element(self):
        u = random_quats(4)
        for k in range(4):
            w = np.zeros((4, 4))
            w[k, 0] = 1.0
            np.testing.assert_array_equal(hermitian_dot(w, u), u[k])

    def test_self_dot_is_real_norm(self):
        u = random_quats(5)
        out = hermitian_dot(u, u)
        assert abs(out[0] - sum(norm_sq(u[k]) for k in range(5))) < 1e-9
        assert np.max(np.abs(out[1:])) < 1e-12

    def test_matches_matrix_expansion(self):
        for _ in range(50):
            w, u = RNG.uniform(-3, 3, (3, 4)), RNG.uniform(-3, 3, (3, 4))
            np.testing.assert_allclose(
                hermitian_dot(w, u), matrix_hermitian_dot(w, u), atol=1e-12
            )

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            hermitian_dot(random_quats(3), random_quats(4))


class TestHermitianMatvec:
    def test_identity_matrix(self):
        W = np.zeros((3, 3, 4))
        for k in range(3):
            W[k, k, 0] = 1.0
        x = random_quats(3)
        np.testing.assert_array_equal(hermitian_matvec(W, x), x)

    def test_single_column_reduces_to_dot(self):
        w = random_quats(4)
        x = random_quats(4)
        np.testing.assert_array_equal(hermitian_matvec(w[:, None, :], x)[0], hermitian_dot(w, x))

    def test_matches_block_real_form(self):
        for _ in range(25):
            W = RNG.uniform(-2, 2, (3, 2, 4))
            x = RNG.uniform(-2, 2, (3, 4))
            p = np.zeros((2, 4))
            np.testing.assert_allclose(
                hermitian_matvec(W, x), block_hermitian_matvec(W, x, p), atol=1e-12
            )

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            hermitian_matvec(RNG.uniform(-1, 1, (3, 2, 4)), random_quats(2))


def test_finite_outputs_on_finite_inputs():
    xs, ys = random_quats(500), random_quats(500)
    for op in (hamilton_mul, split_product):
        assert np.isfinite(op(xs, ys)).all()
    assert np.isfinite(conjugate(xs)).all()
    assert np.isfinite(norm_sq(xs)).all()
