import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from truth_belief.exceptions import DomainError
from truth_belief.qcore import (
    BRANCH_WINDOW,
    Q_MAX,
    ExtendedReal,
    QParam,
    as_qparam,
    coder,
    coder_array,
    coder_derivative,
    format_extended,
    interaction,
    q_exp,
    q_log,
)

mpmath.mp.dps = 50


class TestQParam:
    def test_accepts_range(self):
        assert QParam(0).q == 0.0
        assert float(QParam(2)) == 2.0
        assert QParam(Q_MAX).q == Q_MAX

    @pytest.mark.parametrize("bad", [-1e-12, -1.0, math.nan, math.inf, Q_MAX * 2])
    def test_rejects(self, bad):
        with pytest.raises(DomainError):
            QParam(bad)

    def test_rejects_non_numbers(self):
        with pytest.raises(DomainError, match="real number"):
            QParam("two")

    def test_branch_window(self):
        assert QParam(1.0 + BRANCH_WINDOW / 10).is_classical
        assert not QParam(1.0 + 10 * BRANCH_WINDOW).is_classical

    def test_as_qparam_passes_instances_through(self):
        q = QParam(0.5)
        assert as_qparam(q) is q
        assert as_qparam(0.5) == q


class TestExtendedReal:
    def test_infinity_prints_with_sign(self):
        assert str(ExtendedReal(math.inf)) == "+inf"
        assert format_extended(0.5) == "0.5"

    @pytest.mark.parametrize("bad", [math.nan, -math.inf])
    def test_rejects(self, bad):
        with pytest.raises(DomainError):
            ExtendedReal(bad)


class TestQLog:
    def test_classical(self):
        assert q_log(1, math.e) == pytest.approx(1.0, rel=1e-15)

    def test_closed_forms(self):
        assert q_log(2, 2.0) == pytest.approx(0.5, rel=1e-15)
        assert q_log(0, 3.0) == pytest.approx(2.0, rel=1e-15)
        assert q_log(0.5, 4.0) == pytest.approx(2.0, rel=1e-14)
        assert q_log(0.5, 1.0) == 0.0

    @pytest.mark.parametrize("x", [0.01, 0.5, 1.0, 2.0, 100.0])
    @pytest.mark.parametrize("offset", [-1e-8, 1e-8])
    def test_continuous_in_q(self, x, offset):
        assert abs(q_log(1.0 + offset, x) - q_log(1.0, x)) <= 1e-6

    @pytest.mark.parametrize("q", [0.1, 0.5, 0.999, 1.001, 2.0, 7.5])
    @pytest.mark.parametrize("x", [1e-6, 0.3, 1.0 + 1e-9, 42.0])
    def test_against_mpmath(self, q, x):
        expected = (mpmath.mpf(x) ** (1 - mpmath.mpf(q)) - 1) / (1 - mpmath.mpf(q))
        assert q_log(q, x) == pytest.approx(float(expected), rel=1e-13)

    @pytest.mark.parametrize("x", [0.0, -1.0, math.inf, math.nan])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            q_log(0.5, x)


class TestQExp:
    @given(st.floats(min_value=0.0, max_value=1.5), st.floats(min_value=1e-3, max_value=1e6))
    @settings(max_examples=200, deadline=None)
    def test_inverts_q_log(self, q, x):
        assert float(q_exp(q, q_log(q, x))) == pytest.approx(x, rel=1e-9)

    @given(st.floats(min_value=1e-3, max_value=1e3))
    @settings(max_examples=100, deadline=None)
    def test_inverts_q_log_at_two(self, x):
        assert float(q_exp(2.0, q_log(2.0, x))) == pytest.approx(x, rel=1e-9)

    def test_range_edges(self):
        assert q_exp(0.5, -2.0) == 0.0
        assert q_exp(1, 0.0) == 1.0
        with pytest.raises(DomainError, match="below"):
            q_exp(0.5, -2.5)
        with pytest.raises(DomainError, match="not below"):
            q_exp(2.0, 1.0)
        with pytest.raises(DomainError, match="finite"):
            q_exp(2.0, math.nan)

    @pytest.mark.parametrize("q, u, expected", [(0.5, 2.0, 4.0), (2.0, 0.5, 2.0), (1.0, 0.0, 1.0)])
    def test_worked_values(self, q, u, expected):
        assert float(q_exp(q, u)) == pytest.approx(expected, rel=1e-14)


class TestCoder:
    @pytest.mark.parametrize("q", [0.0, 0.5, 1.0, 1.0 + 1e-12, 2.0, 10.0])
    def test_certainty_costs_nothing(self, q):
        value = coder(q, 1.0)
        assert value == 0.0
        assert math.copysign(1.0, value) == 1.0

    def test_classical_is_minus_log(self):
        assert coder(1, 0.5) == pytest.approx(math.log(2), rel=1e-15)

    @given(st.floats(min_value=0.0, max_value=1.0))
    def test_q_two_is_linear(self, y):
        assert coder(2, y) == pytest.approx(1.0 - y, abs=1e-15)

    @pytest.mark.parametrize(
        "q, expected",
        [(0.0, math.inf), (0.5, math.inf), (1.0, math.inf), (1.0 + 1e-10, math.inf), (2.0, 1.0), (3.0, 0.5)],
    )
    def test_value_at_zero(self, q, expected):
        assert coder(q, 0.0) == expected

    @given(
        st.floats(min_value=0.0, max_value=5.0),
        st.floats(min_value=1e-9, max_value=1.0),
        st.floats(min_value=1e-9, max_value=1.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_nonincreasing(self, q, a, b):
        lo, hi = min(a, b), max(a, b)
        assert coder(q, lo) >= coder(q, hi) - 1e-13 * max(1.0, abs(coder(q, hi)))

    @pytest.mark.parametrize("y", [-0.1, 1.1, math.nan])
    def test_domain(self, y):
        with pytest.raises(DomainError):
            coder(0.5, y)

    def test_array_matches_scalar(self):
        ys = np.array([0.0, 0.1, 0.5, 1.0])
        for q in (0.5, 1.0, 2.5):
            expected = [float(coder(q, y)) for y in ys]
            np.testing.assert_allclose(coder_array(q, ys), expected, rtol=1e-15)

    def test_derivative(self):
        assert coder_derivative(1, 0.5) == pytest.approx(-2.0)
        assert coder_derivative(2, 0.5) == -1.0
        assert coder_derivative(3, 0.5) == pytest.approx(-0.5)
        with pytest.raises(DomainError):
            coder_derivative(1, 0.0)

    @pytest.mark.parametrize("q", [0.0, 0.5, 1.0, 1.5, 2.0, 3.0])
    def test_strictly_decreasing(self, q):
        values = [float(coder(q, y)) for y in np.linspace(0.0, 1.0, 1001)]
        assert all(a > b for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("q", [0.0, 0.5, 1.0, 1.0 + 1e-12, 2.0, 3.0, 10.0])
    def test_derivative_at_certainty(self, q):
        assert coder_derivative(q, 1.0) == -1.0

    @pytest.mark.parametrize("q", [0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0])
    def test_derivative_matches_differences(self, q):
        h = 1e-6
        for y in np.linspace(0.05, 0.95, 19):
            numeric = (float(coder(q, y + h)) - float(coder(q, y - h))) / (2.0 * h)
            assert numeric == pytest.approx(coder_derivative(q, y), rel=1e-6)


class TestInteraction:
    @given(st.floats(min_value=0.0, max_value=10.0), st.floats(min_value=0.0, max_value=1.0))
    def test_sound(self, q, t):
        assert interaction(q, t, t) == t

    @given(st.floats(min_value=0.0, max_value=1.0), st.floats(min_value=0.0, max_value=1.0))
    def test_endpoints(self, x, y):
        assert interaction(1, x, y) == x
        assert interaction(0, x, y) == y

    def test_negative_for_large_q(self):
        assert interaction(2, 0.0, 0.5) == -0.5

    def test_domain(self):
        with pytest.raises(DomainError, match="truth x"):
            interaction(0.5, 1.5, 0.5)
        with pytest.raises(DomainError, match="belief y"):
            interaction(0.5, 0.5, -0.5)
