import math

import numpy as np
import pytest
from hypothesis import given

from strategies import distributions
from truth_belief import (
    Alphabet,
    make_distribution,
    point_mass,
    random_distribution,
    support_contains,
    uniform,
)
from truth_belief.dist import product_distribution, same_alphabet
from truth_belief.exceptions import DomainError


class TestAlphabet:
    def test_default_labels(self):
        assert Alphabet.default(3).labels == ("s0", "s1", "s2")

    def test_rejects_empty(self):
        with pytest.raises(DomainError, match="at least one"):
            Alphabet(())

    def test_rejects_duplicates(self):
        with pytest.raises(DomainError, match="duplicate labels: a"):
            Alphabet(("a", "b", "a"))

    @pytest.mark.parametrize("bad", ["", 3, None])
    def test_rejects_bad_labels(self, bad):
        with pytest.raises(DomainError, match="non-empty strings"):
            Alphabet(("a", bad))


class TestMakeDistribution:
    def test_normalize(self):
        d = make_distribution(["a", "b"], [1, 1], normalize=True)
        assert d.probs.tolist() == [0.5, 0.5]

    def test_accepts_normalized_input(self):
        d = make_distribution(["a", "b", "c"], [0.2, 0.3, 0.5])
        np.testing.assert_allclose(d.probs, [0.2, 0.3, 0.5], rtol=0, atol=1e-16)

    def test_rejects_bad_sum(self):
        with pytest.raises(DomainError, match="sum to 0.5"):
            make_distribution(["a", "b"], [0.2, 0.3])

    def test_input_tolerance(self):
        make_distribution(["a", "b"], [0.5, 0.5 + 5e-10])
        with pytest.raises(DomainError):
            make_distribution(["a", "b"], [0.5, 0.5 + 5e-9])

    def test_rejects_negative(self):
        with pytest.raises(DomainError, match="'b' is negative"):
            make_distribution(["a", "b"], [1.5, -0.5])

    def test_rejects_all_zero(self):
        with pytest.raises(DomainError, match="positive"):
            make_distribution(["a", "b"], [0, 0], normalize=True)

    def test_rejects_length_mismatch(self):
        with pytest.raises(DomainError, match="expected 2 weights"):
            make_distribution(["a", "b"], [1.0])

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError, match="finite"):
            make_distribution(["a", "b"], [math.inf, 1.0], normalize=True)

    def test_keeps_zero_entries(self):
        d = make_distribution(["a", "b", "c"], [0.5, 0.5, 0.0])
        assert len(d) == 3
        assert d.support.tolist() == [0, 1]
        assert d.support_size == 2

    def test_immutable(self):
        d = uniform(2)
        with pytest.raises(ValueError):
            d.probs[0] = 1.0

    @given(distributions(max_size=16, full_support=False))
    def test_stored_sum(self, d):
        assert abs(math.fsum(d.probs) - 1.0) <= 1e-12
        assert np.all((d.probs >= 0.0) & (d.probs <= 1.0))
        assert d.support_size >= 1


class TestConstructors:
    def test_uniform(self):
        assert uniform(1).probs.tolist() == [1.0]
        assert uniform(4).probs.tolist() == [0.25] * 4
        for p in uniform(3).probs:
            assert abs(p - 1 / 3) <= np.spacing(1 / 3)

    def test_uniform_rejects_zero(self):
        with pytest.raises(DomainError):
            uniform(0)

    def test_point_mass(self):
        assert point_mass(3, 0).probs.tolist() == [1.0, 0.0, 0.0]
        assert point_mass(1, 0).is_point_mass()

    @pytest.mark.parametrize("i", [5, -1, 2])
    def test_point_mass_range(self, i):
        with pytest.raises(DomainError, match="out of range"):
            point_mass(2, i)

    def test_random_is_deterministic(self):
        assert random_distribution(3, 42) == random_distribution(3, 42)
        assert random_distribution(3, 42) != random_distribution(3, 43)

    def test_random_is_normalized(self):
        assert abs(math.fsum(random_distribution(5, 7).probs) - 1.0) <= 1e-12

    @pytest.mark.parametrize("seed", range(20))
    def test_random_has_full_support(self, seed):
        assert np.all(random_distribution(2, seed).probs > 0.0)

    def test_random_with_support_size(self):
        d = random_distribution(6, 3, support_size=2)
        assert d.support_size == 2
        with pytest.raises(DomainError, match="exceeds"):
            random_distribution(2, 0, support_size=3)

    def test_random_is_flat(self):
        n, draws = 4, 10_000
        samples = np.array([random_distribution(n, seed).probs for seed in range(draws)])
        # each coordinate of a flat Dirichlet has variance (n - 1) / (n^2 (n + 1))
        stderr = math.sqrt((n - 1) / (n * n * (n + 1)) / draws)
        assert np.all(np.abs(samples.mean(axis=0) - 1 / n) <= 3 * stderr)


class TestSupport:
    def test_contains(self):
        x = make_distribution(["a", "b", "c"], [0.5, 0.5, 0.0])
        y = make_distribution(["a", "b", "c"], [0.3, 0.3, 0.4])
        assert support_contains(x, y)
        assert not support_contains(y, x)

    def test_point_mass_belief(self, fair_coin):
        assert not support_contains(fair_coin, point_mass(2, 0))

    @given(distributions(size=4, full_support=False))
    def test_reflexive(self, d):
        assert support_contains(d, d)

    @given(
        distributions(size=3, full_support=False),
        distributions(size=3, full_support=False),
        distributions(size=3, full_support=False),
    )
    def test_transitive(self, a, b, c):
        if support_contains(a, b) and support_contains(b, c):
            assert support_contains(a, c)

    def test_mismatch(self):
        with pytest.raises(DomainError, match="alphabet mismatch"):
            support_contains(uniform(2), uniform(3))
        with pytest.raises(DomainError):
            same_alphabet(uniform(2), make_distribution(["a", "b"], [0.5, 0.5]))


def test_product(fair_coin, skewed_coin):
    joint = product_distribution(fair_coin, skewed_coin)
    assert joint.labels == ("s0⊗s0", "s0⊗s1", "s1⊗s0", "s1⊗s1")
    np.testing.assert_allclose(joint.probs, [0.15, 0.35, 0.15, 0.35], rtol=1e-15)
