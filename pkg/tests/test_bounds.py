import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from budq.bounds import (
    FLOAT_MARGIN,
    bridge_lower_bound,
    classical_bridge_lower_bound,
    connected_sum_bridge_formula,
)
from budq.errors import HypothesisViolationError, InvalidParameterError


def exact_ceiling(count, q, chi):
    """Least integer m >= 3 log_q(count) - chi, by integer comparison."""
    e = 0
    while q**e < count**3:
        e += 1
    return e - chi


class TestBridgeBound:
    @pytest.mark.parametrize(
        "count,q,chi,want",
        [(9, 3, 2, 4), (27, 3, 2, 7), (3, 3, 2, 1), (1, 3, 0, 0), (25, 5, 1, 5), (4, 2, 0, 6)],
    )
    def test_exact_examples(self, count, q, chi, want):
        r = bridge_lower_bound(count, q, chi)
        assert r.exact and r.bound_exact == want and r.bound_integer == want
        assert isinstance(r.bound_exact, int)

    def test_non_exact(self):
        r = bridge_lower_bound(5, 3, 2)
        assert not r.exact
        assert math.isclose(r.bound_exact, 3 * math.log(5, 3) - 2)
        assert r.bound_integer == 3

    def test_json(self):
        assert bridge_lower_bound(9, 3, 2).to_json() == {
            "coloring_count": 9,
            "target_size": 3,
            "euler_characteristic": 2,
            "bound_exact": 4,
            "bound_integer": 4,
            "exact": True,
        }

    @pytest.mark.parametrize("args", [(0, 3, 2), (9, 1, 2), (9, 3, 2.5), (True, 3, 2), (9.0, 3, 2)])
    def test_rejects(self, args):
        with pytest.raises(InvalidParameterError):
            bridge_lower_bound(*args)

    @given(st.integers(1, 10**6), st.integers(2, 40), st.integers(-20, 2))
    def test_ceiling_is_exact(self, count, q, chi):
        r = bridge_lower_bound(count, q, chi)
        assert r.bound_integer == exact_ceiling(count, q, chi)
        assert r.bound_integer - 1 - FLOAT_MARGIN <= r.bound_exact <= r.bound_integer + FLOAT_MARGIN

    @given(st.integers(1, 10**5), st.integers(1, 10**5), st.integers(2, 30), st.integers(-10, 2))
    def test_monotone_in_count(self, a, b, q, chi):
        lo, hi = sorted((a, b))
        assert bridge_lower_bound(lo, q, chi).bound_integer <= bridge_lower_bound(hi, q, chi).bound_integer

    @given(st.integers(2, 12), st.integers(0, 12), st.integers(-10, 2))
    def test_powers_are_exact(self, q, k, chi):
        r = bridge_lower_bound(q**k, q, chi)
        assert r.exact and r.bound_exact == 3 * k - chi

    def test_cube_power_count(self):
        # 4^3 = 8^2: exact with j = 2 although 4 is not a power of 8
        r = bridge_lower_bound(4, 8, 0)
        assert r.exact and r.bound_exact == 2


class TestClassical:
    def test_examples(self):
        assert classical_bridge_lower_bound(9, 3) == 2
        assert classical_bridge_lower_bound(1, 5) == 0
        assert math.isclose(classical_bridge_lower_bound(5, 3), math.log(5, 3))

    @given(st.integers(2, 50), st.integers(0, 15))
    def test_power_is_int(self, q, k):
        got = classical_bridge_lower_bound(q**k, q)
        assert isinstance(got, int) and got == k


class TestConnectedSumFormula:
    def test_examples(self):
        assert connected_sum_bridge_formula(2, 2, 0) == 2
        assert connected_sum_bridge_formula(2, 4, 0) == 8
        assert connected_sum_bridge_formula(1, 4, 1) == 13

    @pytest.mark.parametrize("d", [1, 3, 5, 0, -2])
    def test_odd_or_small_degree(self, d):
        with pytest.raises(HypothesisViolationError):
            connected_sum_bridge_formula(2, d, 0)

    def test_negative_m(self):
        with pytest.raises(InvalidParameterError):
            connected_sum_bridge_formula(2, 4, -1)
