import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from qutritlab import su3

from conftest import L1, L2, L3, L8

S3 = np.sqrt(3)

# Standard nonzero entries (1-based), used only as a cross-check on the
# numerically computed tensors.
F_TABLE = {
    (1, 2, 3): 1.0,
    (1, 4, 7): 0.5,
    (1, 5, 6): -0.5,
    (2, 4, 6): 0.5,
    (2, 5, 7): 0.5,
    (3, 4, 5): 0.5,
    (3, 6, 7): -0.5,
    (4, 5, 8): S3 / 2,
    (6, 7, 8): S3 / 2,
}
D_TABLE = {
    (1, 1, 8): 1 / S3,
    (2, 2, 8): 1 / S3,
    (3, 3, 8): 1 / S3,
    (8, 8, 8): -1 / S3,
    (4, 4, 8): -1 / (2 * S3),
    (5, 5, 8): -1 / (2 * S3),
    (6, 6, 8): -1 / (2 * S3),
    (7, 7, 8): -1 / (2 * S3),
    (1, 4, 6): 0.5,
    (1, 5, 7): 0.5,
    (2, 4, 7): -0.5,
    (2, 5, 6): 0.5,
    (3, 4, 4): 0.5,
    (3, 5, 5): 0.5,
    (3, 6, 6): -0.5,
    (3, 7, 7): -0.5,
}


def expand_table(table, antisymmetric):
    t = np.zeros((8, 8, 8))
    for (i, j, k), v in table.items():
        for perm in itertools.permutations(range(3)):
            idx = tuple((i, j, k)[p] - 1 for p in perm)
            sign = 1
            if antisymmetric:
                # parity of the permutation
                inv = sum(perm[a] > perm[b] for a in range(3) for b in range(a + 1, 3))
                sign = -1 if inv % 2 else 1
            t[idx] = sign * v
    return t


@pytest.fixture(scope="module")
def sc():
    return su3.compute_structure_constants()


def e(j):
    v = np.zeros(8)
    v[j - 1] = 1.0
    return v


class TestBasis:
    def test_generators(self):
        lam = su3.build_basis()
        assert_allclose(lam[1], [[0, 1, 0], [1, 0, 0], [0, 0, 0]])
        assert_allclose(lam[8], np.diag([1, 1, -2]) / S3)
        assert_allclose(lam[0], np.sqrt(2 / 3) * np.eye(3))
        for mine, ref in zip(lam[[1, 2, 3, 8]], (L1, L2, L3, L8)):
            assert_allclose(mine, ref)

    def test_bit_reproducible(self):
        assert np.array_equal(su3.build_basis(), su3.build_basis())
        assert not su3.basis().flags.writeable

    def test_orthogonality_all_pairs(self):
        lam = su3.basis()
        for a, b in itertools.product(range(9), repeat=2):
            assert abs(np.trace(lam[a] @ lam[b]) - 2 * (a == b)) <= 1e-14

    def test_traceless_hermitian(self):
        for g in su3.generators():
            assert abs(np.trace(g)) <= 1e-15
            assert_allclose(g, g.conj().T)


class TestStructureConstants:
    def test_examples(self, sc):
        assert sc.f[0, 1, 2] == pytest.approx(1.0, abs=1e-15)
        assert sc.d[0, 0, 7] == pytest.approx(1 / S3, abs=1e-15)
        assert sc.d[7, 7, 7] == pytest.approx(-1 / S3, abs=1e-15)

    def test_d118_from_square(self):
        # lambda_1^2 - (2/3) I is proportional to lambda_8 with coefficient d_118.
        assert_allclose(L1 @ L1 - 2 / 3 * np.eye(3), L8 / S3, atol=1e-15)
        assert_allclose(L8 @ L8 - 2 / 3 * np.eye(3), -L8 / S3, atol=1e-15)

    def test_symmetry(self, sc):
        for axes in itertools.permutations(range(3)):
            parity = sum(axes[a] > axes[b] for a in range(3) for b in range(a + 1, 3)) % 2
            assert np.max(np.abs(sc.f - (-1) ** parity * sc.f.transpose(axes))) <= 1e-13
            assert np.max(np.abs(sc.d - sc.d.transpose(axes))) <= 1e-13

    def test_f_vanishes_on_repeated_index(self, sc):
        for j in range(8):
            assert np.all(sc.f[j, j, :] == 0) and np.all(sc.f[:, j, j] == 0)

    def test_reconstruction(self, sc):
        gen = su3.generators()
        for j, k in itertools.product(range(8), repeat=2):
            rebuilt = (2 / 3) * (j == k) * np.eye(3) + np.einsum("l,lab->ab", sc.d[j, k] + 1j * sc.f[j, k], gen)
            assert np.max(np.abs(gen[j] @ gen[k] - rebuilt)) <= 1e-12

    def test_against_reference_table(self, sc):
        assert_allclose(sc.f, expand_table(F_TABLE, True), atol=1e-14)
        assert_allclose(sc.d, expand_table(D_TABLE, False), atol=1e-14)

    def test_cached_read_only(self):
        assert su3.structure_constants() is su3.structure_constants()
        assert not su3.structure_constants().d.flags.writeable


class TestStar:
    def test_zero(self):
        assert_allclose(su3.star(np.zeros(8), e(3)), np.zeros(8))

    def test_minus_e8(self):
        assert_allclose(su3.star(-e(8), -e(8)), -e(8), atol=1e-15)

    def test_basis_state_one(self):
        n1 = S3 / 2 * e(3) + 0.5 * e(8)
        assert_allclose(su3.star(n1, n1), n1, atol=1e-15)

    def test_unscaled_star_differs_by_sqrt3(self, sc):
        # Without the sqrt(3) the pure-state condition reads d_jkl n_k n_l = n_j / sqrt(3).
        n = -e(8)
        assert_allclose(np.einsum("jkl,k,l->j", sc.d, n, n), n / S3, atol=1e-15)

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.floats(-3, 3), min_size=24, max_size=24), st.floats(-2, 2))
    def test_bilinear_commutative(self, xs, s):
        a, b, c = np.array(xs).reshape(3, 8)
        assert_allclose(su3.star(a, b), su3.star(b, a), atol=1e-12)
        assert_allclose(su3.star(s * a + c, b), s * su3.star(a, b) + su3.star(c, b), atol=1e-10)


class TestDot:
    def test_examples(self):
        assert su3.dot(e(3), e(3)) == 1.0
        n1 = S3 / 2 * e(3) + 0.5 * e(8)
        n2 = -S3 / 2 * e(3) + 0.5 * e(8)
        assert su3.dot(n1, n2) == pytest.approx(-0.5)
        assert su3.dot(-e(8), -e(8)) == 1.0

    def test_lambda_dot_batch(self):
        c = np.arange(16.0).reshape(2, 8)
        ops = su3.lambda_dot(c)
        assert ops.shape == (2, 3, 3)
        assert_allclose(ops[1], np.einsum("j,jab->ab", c[1], su3.generators()))
