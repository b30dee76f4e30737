import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import distribution_pairs, q_values
from truth_belief import (
    QParam,
    find_strong_violation,
    make_distribution,
    point_mass,
    soundness_residual,
    strong_consistency_check,
    uniform,
    weak_consistency_residual,
)
from truth_belief.consistency import WEAK_TOLERANCE, ConsistencyWitness, boundary_family
from truth_belief.exceptions import DomainError


class TestWeakConsistency:
    def test_large_q(self):
        x = make_distribution(["s0", "s1"], [0.3, 0.7])
        y = make_distribution(["s0", "s1"], [0.9, 0.1])
        assert weak_consistency_residual(2, x, y) <= 1e-12

    @pytest.mark.parametrize("q", [0, 1])
    def test_endpoints_are_exact(self, q, fair_coin, belief_coin):
        assert weak_consistency_residual(q, fair_coin, belief_coin) == 0.0

    @given(q_values, distribution_pairs(max_size=16, full_support=False))
    @settings(max_examples=300)
    def test_holds_for_every_q(self, q, pair):
        x, y = pair
        assert weak_consistency_residual(q, x, y) <= WEAK_TOLERANCE * max(1.0, q)


class TestStrongConsistency:
    @given(
        st.floats(min_value=0.0, max_value=1.0),
        distribution_pairs(max_size=8, full_support=False),
    )
    def test_holds_up_to_one(self, q, pair):
        x, y = pair
        witness = strong_consistency_check(q, x, y)
        assert witness.passed
        assert witness.offending_index is None

    def test_fails_above_one(self):
        witness = strong_consistency_check(2, point_mass(2, 1), uniform(2))
        assert not witness.passed
        assert witness.offending_index == 0
        assert witness.offending_value == -0.5
        assert witness.residual == 0.5

    def test_classical_interaction_is_truth(self, skewed_coin, belief_coin):
        assert strong_consistency_check(1, skewed_coin, belief_coin).passed

    def test_witness_dict(self):
        witness = strong_consistency_check(3, point_mass(2, 1), uniform(2))
        data = witness.as_dict()
        assert data["q"] == 3.0
        assert data["labels"] == ["s0", "s1"]
        assert data["x"] == [0.0, 1.0]
        assert data["offending_value"] == -1.0

    def test_witness_validation(self, fair_coin):
        with pytest.raises(DomainError, match="together"):
            ConsistencyWitness(QParam(1), fair_coin, fair_coin, 0)
        with pytest.raises(DomainError, match="non-negative"):
            ConsistencyWitness(QParam(1), fair_coin, fair_coin, residual=-1.0)


class TestFindStrongViolation:
    @pytest.mark.parametrize("q", [1.5, 2.0, 10.0])
    def test_witness_above_one(self, q):
        witness = find_strong_violation(q)
        assert witness is not None
        assert witness.offending_value == pytest.approx((1 - q) / 2)
        # the witness is real: recomputing the interaction reproduces it
        assert not strong_consistency_check(q, witness.x, witness.y).passed

    def test_q_two(self):
        assert find_strong_violation(2).offending_value == -0.5

    @pytest.mark.parametrize("q", [0.0, 0.5, 1.0])
    def test_none_up_to_one(self, q):
        assert find_strong_violation(q, seed=3, trials=2_000) is None

    def test_jobs_do_not_change_outcome(self):
        assert find_strong_violation(0.75, seed=1, trials=800, jobs=4) is None

    @pytest.mark.slow
    @pytest.mark.parametrize("q", [0.0, 0.25, 0.5, 0.75, 1.0])
    def test_full_search(self, q):
        assert find_strong_violation(q, seed=42) is None

    def test_boundary_family(self):
        pairs = boundary_family(3)
        # n masses against the uniform both ways plus n*n mass pairs
        assert len(pairs) == sum(2 * n + n * n for n in range(1, 4))


class TestSoundness:
    @pytest.mark.parametrize("q, grid", [(3, 101), (0, 11), (0.25, 1001), (1e6, 1001)])
    def test_exact(self, q, grid):
        assert soundness_residual(q, grid) == 0.0

    def test_grid_size(self):
        with pytest.raises(DomainError):
            soundness_residual(1, 1)
