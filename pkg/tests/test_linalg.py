import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from statepart.linalg import abs_sum, exact_rank, hconcat, mat_mul, numerical_rank

int_mats = lambda r, c: arrays(  # noqa: E731
    np.int64, (r, c), elements=st.integers(-3, 3)
)


class TestMatMul:
    def test_identity(self):
        m = np.array([[1.0, 2.0], [3.0, 4.0]])
        assert np.array_equal(mat_mul(np.eye(2), m), m)

    def test_ones_times_column(self):
        out = mat_mul(np.ones((2, 2)), np.ones((2, 1)))
        assert np.array_equal(out, [[2.0], [2.0]])

    def test_sign_pattern(self):
        out = mat_mul(np.array([[1.0, 1.0], [1.0, -1.0]]), np.array([[1.0], [1.0]]))
        assert np.array_equal(out, [[2.0], [0.0]])

    def test_dimension_mismatch_names_both_shapes(self):
        with pytest.raises(ValueError, match=r"\(2, 3\).*\(2, 2\)"):
            mat_mul(np.ones((2, 3)), np.ones((2, 2)))

    @given(
        st.integers(1, 3),
        st.integers(1, 3),
        st.integers(1, 3),
        st.integers(1, 3),
        st.data(),
    )
    def test_associativity_on_integers(self, n1, n2, n3, n4, data):
        a = data.draw(int_mats(n1, n2)).astype(float)
        b = data.draw(int_mats(n2, n3)).astype(float)
        c = data.draw(int_mats(n3, n4)).astype(float)
        left = mat_mul(mat_mul(a, b), c)
        right = mat_mul(a, mat_mul(b, c))
        assert np.array_equal(left, right)


class TestAbsSum:
    def test_zero_matrix(self):
        assert abs_sum(np.zeros((3, 3))) == 0.0

    def test_mixed_signs(self):
        assert abs_sum(np.array([[1.0, -2.0], [-3.0, 4.0]])) == 10.0

    def test_f100_column_block(self, f100_model):
        # |a14| + |a24| + |a34| + |a54|, summed independently entry by entry.
        rows = [0, 1, 2, 4]
        expected = sum(abs(float(f100_model.A[i, 3])) for i in rows)
        block = f100_model.A[np.ix_(rows, [3])]
        assert abs_sum(block) == pytest.approx(expected, abs=0)
        assert abs_sum(block) == pytest.approx(1.965794, abs=1e-9)

    @given(arrays(np.float64, (3, 4), elements=st.floats(-5, 5, width=32)))
    def test_transpose_invariant(self, a):
        assert abs_sum(a) == abs_sum(a.T)

    def test_rejects_nan(self):
        with pytest.raises(ValueError, match="finite"):
            abs_sum(np.array([[np.nan]]))


class TestHconcat:
    def test_single_block(self):
        assert np.array_equal(hconcat([np.eye(2)]), np.eye(2))

    def test_two_columns(self):
        out = hconcat([np.array([[1.0], [1.0]]), np.array([[2.0], [0.0]])])
        assert np.array_equal(out, [[1.0, 2.0], [1.0, 0.0]])

    def test_reachability_blocks(self):
        b = np.array([[1.0], [1.0]])
        ab = mat_mul(np.ones((2, 2)), b)
        assert np.array_equal(hconcat([b, ab]), [[1.0, 2.0], [1.0, 2.0]])

    def test_row_mismatch(self):
        with pytest.raises(ValueError, match="row"):
            hconcat([np.ones((2, 1)), np.ones((3, 1))])

    def test_empty_list(self):
        with pytest.raises(ValueError):
            hconcat([])


class TestNumericalRank:
    def test_identity(self):
        assert numerical_rank(np.eye(5)) == 5

    def test_duplicated_row(self):
        assert numerical_rank(np.ones((2, 2))) == 1

    def test_rank_one_reachability(self):
        m = np.array([[1.0, 2.0], [1.0, 2.0]])
        assert numerical_rank(m) == 1
        assert exact_rank(m.astype(int)) == 1

    def test_absolute_tolerance_override(self):
        m = np.diag([1.0, 1e-8])
        assert numerical_rank(m) == 2
        assert numerical_rank(m, tol=1e-6) == 1

    @given(arrays(np.int64, (4, 3), elements=st.integers(-3, 3)))
    def test_transpose_invariant(self, a):
        a = a.astype(float)
        assert numerical_rank(a) == numerical_rank(a.T)

    @given(arrays(np.int64, (4, 4), elements=st.integers(-3, 3)), st.permutations(range(4)))
    def test_row_permutation_invariant(self, a, perm):
        a = a.astype(float)
        assert numerical_rank(a) == numerical_rank(a[list(perm)])

    def test_low_rank_products_match_exact_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            n = int(rng.integers(2, 8))
            r = int(rng.integers(1, n))
            u = rng.integers(-3, 4, (n, r))
            v = rng.integers(-3, 4, (r, n))
            m = u @ v
            assert numerical_rank(m.astype(float)) == exact_rank(m)


class TestExactRank:
    def test_rejects_fractional_entries(self):
        with pytest.raises(ValueError, match="integer"):
            exact_rank(np.array([[0.5]]))

    def test_handles_big_integers(self):
        m = [[10**30, 2 * 10**30], [3, 6]]
        assert exact_rank(m) == 1

    def test_full_rank(self):
        assert exact_rank(np.eye(4, dtype=int)) == 4
