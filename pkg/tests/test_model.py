import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from statepart import (
    GroupingPair,
    StateSpaceModel,
    controllability_matrix,
    extract_partition,
    interaction_cost_blocks,
    interaction_cost_elements,
    is_controllable,
    validate_problem,
)
from statepart.model import group_labels

from .helpers import (
    EX2_ALPHA,
    EX2_BETA,
    F100_ALPHA,
    F100_BETA,
    grouping_from_labels,
    random_grouping,
    random_model,
)


class TestTypes:
    def test_rejects_non_square_a(self):
        with pytest.raises(ValueError, match="square"):
            StateSpaceModel(A=np.ones((2, 3)), B=np.ones((2, 1)))

    def test_rejects_row_mismatch(self):
        with pytest.raises(ValueError, match="row count"):
            StateSpaceModel(A=np.eye(3), B=np.ones((2, 1)))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="finite"):
            StateSpaceModel(A=np.array([[np.inf]]), B=np.ones((1, 1)))

    def test_grouping_column_must_sum_to_one(self):
        with pytest.raises(ValueError, match="column 2"):
            GroupingPair(
                alpha=np.array([[1, 1], [0, 1]]), beta=np.array([[1, 0], [0, 1]])
            )

    def test_grouping_row_must_be_nonempty(self):
        with pytest.raises(ValueError, match="row 2"):
            GroupingPair(
                alpha=np.array([[1, 1], [0, 0]]), beta=np.array([[1, 0], [0, 1]])
            )

    def test_grouping_rejects_non_binary(self):
        with pytest.raises(ValueError, match="0 or 1"):
            GroupingPair(alpha=np.array([[2, 0], [0, 1]]) - np.array([[1, 0], [0, 0]]),
                         beta=np.array([[1, 0], [0, 2]]))

    def test_trace_identities(self):
        g = GroupingPair(alpha=EX2_ALPHA, beta=EX2_BETA)
        assert np.trace(g.alpha.T @ g.alpha) == g.n_states
        assert np.trace(g.beta.T @ g.beta) == g.n_inputs


class TestValidateProblem:
    def test_f100_two_groups_ok(self, f100_model):
        validate_problem(f100_model, 2)

    def test_single_group_rejected(self, ex2_model):
        with pytest.raises(ValueError, match="1 < P"):
            validate_problem(ex2_model, 1)

    def test_too_many_groups_rejected(self, ex2_model):
        with pytest.raises(ValueError, match="min"):
            validate_problem(ex2_model, 6)


class TestExtractPartition:
    def test_published_ex2_grouping(self, ex2_model):
        # Original (non-canonical) row order of the published matrices.
        alpha = np.array([[0, 0, 0, 1, 0], [1, 1, 1, 0, 0], [0, 0, 0, 0, 1]])
        beta = np.array([[0, 0, 0, 0, 1], [1, 1, 0, 1, 0], [0, 0, 1, 0, 0]])
        subs = extract_partition(ex2_model, GroupingPair(alpha=alpha, beta=beta))
        assert [list(s.state_indices) for s in subs] == [[3], [0, 1, 2], [4]]
        assert [list(s.input_indices) for s in subs] == [[4], [0, 1, 3], [2]]

    def test_identity_grouping_singletons(self, ex2_model):
        g = grouping_from_labels(range(5), range(5), 5)
        subs = extract_partition(ex2_model, g)
        assert len(subs) == 5
        for p, sub in enumerate(subs):
            assert np.array_equal(sub.A_pp, [[ex2_model.A[p, p]]])
            assert np.array_equal(sub.B_pp, [[ex2_model.B[p, p]]])

    def test_f100_isolated_block(self, f100_model):
        g = GroupingPair(alpha=F100_ALPHA, beta=F100_BETA)
        subs = extract_partition(f100_model, g)
        small = subs[1]
        assert list(small.state_indices) == [3]
        assert list(small.input_indices) == [0]
        assert np.array_equal(small.A_pp, [[-10.0]])
        assert np.array_equal(small.B_pp, [[10.0]])

    def test_index_sets_partition_everything(self, ex2_model):
        rng = np.random.default_rng(3)
        for _ in range(20):
            g = random_grouping(rng, 5, 5, 3)
            subs = extract_partition(ex2_model, g)
            states = sorted(i for s in subs for i in s.state_indices)
            inputs = sorted(k for s in subs for k in s.input_indices)
            assert states == list(range(5))
            assert inputs == list(range(5))

    def test_dimension_mismatch(self, ex2_model):
        g = grouping_from_labels([0, 1], [0, 1], 2)
        with pytest.raises(ValueError, match="grouping"):
            extract_partition(ex2_model, g)


class TestInteractionCost:
    def test_block_diagonal_is_zero(self):
        A = np.kron(np.eye(2), np.ones((2, 2)))
        B = np.kron(np.eye(2), np.ones((2, 1)))
        model = StateSpaceModel(A=A, B=B)
        g = grouping_from_labels([0, 0, 1, 1], [0, 1], 2)
        assert interaction_cost_blocks(model, g) == 0.0
        assert interaction_cost_elements(model, g) == 0.0

    def test_ex2_published_grouping_costs_four(self, ex2_model):
        g = GroupingPair(alpha=EX2_ALPHA, beta=EX2_BETA)
        assert interaction_cost_blocks(ex2_model, g) == pytest.approx(4.0, abs=1e-12)
        assert interaction_cost_elements(ex2_model, g) == pytest.approx(4.0, abs=1e-12)

    def test_f100_published_grouping_cost(self, f100_model):
        g = GroupingPair(alpha=F100_ALPHA, beta=F100_BETA)
        # Independent summation: column-4 couplings of A plus column-1 of B.
        expected = sum(
            abs(float(f100_model.A[i, 3])) for i in (0, 1, 2, 4)
        ) + sum(abs(float(f100_model.B[i, 0])) for i in (0, 1, 2, 4))
        got = interaction_cost_blocks(f100_model, g)
        assert got == pytest.approx(expected, rel=1e-15)
        assert got == pytest.approx(2.400783, abs=1e-6)
        assert interaction_cost_elements(f100_model, g) == pytest.approx(got, rel=1e-12)

    def test_ex2_singleton_grouping_cost(self, ex2_model):
        # P = N = M = 5 with identity grouping: every off-diagonal A entry
        # crosses groups and every B entry with i != k does.
        g = grouping_from_labels(range(5), range(5), 5)
        offdiag = sum(
            abs(float(ex2_model.A[i, j])) for i in range(5) for j in range(5) if i != j
        )
        mismatched = sum(
            abs(float(ex2_model.B[i, k])) for i in range(5) for k in range(5) if i != k
        )
        assert offdiag == 4.0 and mismatched == 8.0
        assert interaction_cost_elements(ex2_model, g) == offdiag + mismatched
        assert interaction_cost_blocks(ex2_model, g) == offdiag + mismatched

    def test_row_permutation_invariance(self, f100_model):
        g = GroupingPair(alpha=F100_ALPHA, beta=F100_BETA)
        swapped = GroupingPair(alpha=F100_ALPHA[::-1], beta=F100_BETA[::-1])
        assert interaction_cost_blocks(f100_model, g) == interaction_cost_blocks(
            f100_model, swapped
        )
        assert interaction_cost_elements(f100_model, g) == interaction_cost_elements(
            f100_model, swapped
        )

    @given(st.integers(0, 10_000))
    def test_forms_agree_on_random_pairs(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 9))
        m = int(rng.integers(2, 9))
        p = int(rng.integers(2, min(n, m) + 1))
        model = StateSpaceModel(
            A=rng.normal(size=(n, n)) * 10, B=rng.normal(size=(n, m)) * 10
        )
        g = random_grouping(rng, n, m, p)
        blocks = interaction_cost_blocks(model, g)
        elements = interaction_cost_elements(model, g)
        scale = 1.0 + np.abs(model.A).sum() + np.abs(model.B).sum()
        assert abs(blocks - elements) <= 1e-12 * scale
        assert blocks >= 0.0

    def test_relabeling_invariance_random(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            model = random_model(rng, 5, 4)
            g = random_grouping(rng, 5, 4, 3)
            perm = rng.permutation(3)
            relabeled = GroupingPair(alpha=g.alpha[perm], beta=g.beta[perm])
            assert interaction_cost_blocks(model, g) == interaction_cost_blocks(
                model, relabeled
            )


class TestControllability:
    def test_one_dimensional_block(self, f100_model):
        g = GroupingPair(alpha=F100_ALPHA, beta=F100_BETA)
        sub = extract_partition(f100_model, g)[1]
        assert np.array_equal(controllability_matrix(sub), [[10.0]])
        assert is_controllable(sub)

    def test_rank_deficient_pair(self, ex2_model):
        # States {3, 4} driven only by input 2: identical rows everywhere.
        g = grouping_from_labels([0, 0, 1, 1, 0], [0, 1, 0, 0, 0], 2)
        sub = extract_partition(ex2_model, g)[1]
        assert np.array_equal(controllability_matrix(sub), [[1.0, 2.0], [1.0, 2.0]])
        assert not is_controllable(sub)

    def test_identity_blocks(self):
        model = StateSpaceModel(A=np.eye(2), B=np.eye(2))
        sub = extract_partition(model, grouping_from_labels([0, 0], [0, 0], 1))[0]
        assert np.array_equal(controllability_matrix(sub), np.hstack([np.eye(2)] * 2))
        assert is_controllable(sub)

    def test_published_ex2_grouping_all_controllable(self, ex2_model):
        g = GroupingPair(alpha=EX2_ALPHA, beta=EX2_BETA)
        assert all(is_controllable(s) for s in extract_partition(ex2_model, g))

    def test_relabeling_does_not_change_verdicts(self, ex2_model):
        rng = np.random.default_rng(5)
        for _ in range(10):
            g = random_grouping(rng, 5, 5, 3)
            perm = rng.permutation(3)
            relabeled = GroupingPair(alpha=g.alpha[perm], beta=g.beta[perm])
            verdicts = sorted(
                is_controllable(s) for s in extract_partition(ex2_model, g)
            )
            relabeled_verdicts = sorted(
                is_controllable(s) for s in extract_partition(ex2_model, relabeled)
            )
            assert verdicts == relabeled_verdicts


def test_group_labels_roundtrip():
    g = GroupingPair(alpha=EX2_ALPHA, beta=EX2_BETA)
    sl, il = group_labels(g)
    assert list(sl) == [0, 0, 0, 1, 2]
    assert list(il) == [0, 0, 2, 0, 1]
