import math

import pytest

from treeaa.bounds import k_bound, k_bound_simple, lb_rounds, max_product_partition
from treeaa.errors import InvalidParams

import oracles


class TestMaxProductPartition:
    def test_exhaustive_match(self):
        for t in range(0, 13):
            for r in range(1, min(t, 12) + 1):
                assert max_product_partition(t, r) == oracles.enumerate_max_product(t, r)

    def test_infeasible_is_zero(self):
        assert max_product_partition(2, 3) == 0

    def test_bad_params(self):
        with pytest.raises(InvalidParams):
            max_product_partition(3, 0)


class TestKBound:
    def test_single_round_single_fault(self):
        assert k_bound(4, 1, 1, 100.0) == 20.0

    def test_two_rounds_two_faults(self):
        assert abs(k_bound(4, 2, 2, 100.0) - 100.0 / 36.0) < 1e-12

    def test_infeasible_partition_gives_zero(self):
        assert k_bound(4, 1, 2, 100.0) == 0.0

    def test_bad_params(self):
        with pytest.raises(InvalidParams):
            k_bound(4, 4, 1, 100.0)
        with pytest.raises(InvalidParams):
            k_bound(4, 1, 0, 100.0)
        with pytest.raises(InvalidParams):
            k_bound(4, 1, 1, -1.0)


class TestKBoundSimple:
    def test_single_round_single_fault(self):
        assert k_bound_simple(4, 1, 1, 100.0) == 20.0

    def test_zero_faults(self):
        assert k_bound_simple(4, 0, 3, 100.0) == 0.0

    def test_two_rounds_two_faults(self):
        assert abs(k_bound_simple(4, 2, 2, 100.0) - 100.0 / 36.0) < 1e-12

    def test_relation_to_partition_form(self):
        # The real-valued balanced partition dominates the integer one, so
        # the closed form is an upper bound on the partition form, with
        # equality exactly when r divides t.
        for n in (4, 7, 10, 13):
            for t in range(1, (n - 1) // 3 + 1):
                for r in range(1, t + 1):
                    simple = k_bound_simple(n, t, r, 1000.0)
                    exact = k_bound(n, t, r, 1000.0)
                    assert exact <= simple + 1e-9
                    if t % r == 0:
                        assert abs(exact - simple) < 1e-9

    def test_extreme_magnitudes_stay_finite(self):
        assert k_bound_simple(10, 3, 400, 1e300) == 0.0
        assert math.isfinite(k_bound(10, 3, 400, 1e300))


class TestLbRounds:
    def test_threshold_cases(self):
        assert lb_rounds(4, 1, 5.0) == 1  # 5/5 == 1
        assert lb_rounds(4, 1, 6.0) == 2  # 6/5 > 1, then 6/100 <= 1

    def test_million(self):
        r = lb_rounds(4, 1, 1e6)
        assert k_bound_simple(4, 1, r, 1e6) <= 1.0
        assert k_bound_simple(4, 1, r - 1, 1e6) > 1.0

    def test_minimality_sweep(self):
        for n, t in ((4, 1), (7, 2), (10, 3)):
            for d in (2.0, 10.0, 1e3, 1e6, 1e9):
                r = lb_rounds(n, t, d)
                assert r >= 1
                assert k_bound_simple(n, t, r, d) <= 1.0
                if r > 1:
                    assert k_bound_simple(n, t, r - 1, d) > 1.0

    def test_bad_params(self):
        with pytest.raises(InvalidParams):
            lb_rounds(4, 0, 10.0)
        with pytest.raises(InvalidParams):
            lb_rounds(4, 1, 1.0)
