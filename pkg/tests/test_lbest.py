from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from helpers import collinear_layout, oracle_sorted_remainders, sharp_pool, unit_pool
from tpred import (
    InvalidArgument,
    InvalidPrefix,
    Plan,
    Rationality,
    lbest_remainders,
    t_predictability_approx,
    t_predictability_exact,
)

BETA1 = Rationality(1.0)


def test_single_best_on_collinear():
    result = lbest_remainders(collinear_layout(), (0,), 1)
    assert result.remainders == ((1, 2),)
    assert result.costs == pytest.approx((2.0,), abs=1e-12)
    assert result.exhaustive_equivalent == 2


def test_exhaustive_l_matches_sorted_enumeration():
    layout = unit_pool(1, 51, targets_min=5, targets_max=5)[0]
    for prefix in [(), (2,), (4, 1)]:
        m = 5 - len(prefix)
        result = lbest_remainders(layout, prefix, math.factorial(m) + 3)
        oracle = oracle_sorted_remainders(layout, prefix)
        assert len(result.remainders) == math.factorial(m)
        assert list(result.costs) == pytest.approx([c for c, _ in oracle], abs=1e-9)
        assert set(result.remainders) == {rem for _, rem in oracle}


def test_full_prefix_yields_empty_remainder():
    result = lbest_remainders(collinear_layout(), (1, 0, 2), 5)
    assert result.remainders == ((),)
    assert result.costs == (0.0,)
    assert result.exhaustive_equivalent == 1


def test_rejects_bad_arguments():
    layout = collinear_layout()
    with pytest.raises(InvalidArgument):
        lbest_remainders(layout, (0,), 0)
    with pytest.raises(InvalidPrefix):
        lbest_remainders(layout, (0, 0), 1)


def test_costs_ascending_and_remainders_feasible():
    layout = unit_pool(1, 77, targets_min=6, targets_max=6)[0]
    result = lbest_remainders(layout, (3,), 10)
    assert list(result.costs) == sorted(result.costs)
    unvisited = set(range(6)) - {3}
    for rem in result.remainders:
        assert sorted(rem) == sorted(unvisited)


@pytest.mark.parametrize("l", [1, 2, 5])
def test_matches_l_smallest_of_exhaustive(l):
    for seed in range(6):
        layout = unit_pool(1, 100 + seed, targets_min=4, targets_max=7)[0]
        prefix = (0,) if seed % 2 else ()
        result = lbest_remainders(layout, prefix, l)
        oracle = oracle_sorted_remainders(layout, prefix)
        want = min(l, len(oracle))
        assert len(result.remainders) == want
        # cost-equal substitutions are fine; the cost multiset must agree
        assert list(result.costs) == pytest.approx([c for c, _ in oracle[:want]], abs=1e-9)


def test_tie_ordering_on_grid_geometry():
    # Integer grid coordinates create many exactly equal completion costs;
    # within each tie the output must stay lexicographic.
    from tpred import Layout

    grid = Layout.from_coords(
        "grid", (0.0, 0.0),
        [(0.0, 1.0), (1.0, 0.0), (1.0, 1.0), (0.0, 2.0), (2.0, 0.0)],
    )
    result = lbest_remainders(grid, (), 120)
    assert len(result.remainders) == 120
    assert list(result.costs) == sorted(result.costs)
    ties = 0
    for i in range(119):
        if result.costs[i] == result.costs[i + 1]:
            ties += 1
            assert result.remainders[i] < result.remainders[i + 1]
    assert ties > 0


def test_custom_bound_interface():
    # A weaker admissible bound must reach the same answer, just less pruned.
    layout = unit_pool(1, 88, targets_min=7, targets_max=7)[0]
    fast = lbest_remainders(layout, (0,), 3)
    zero = lbest_remainders(layout, (0,), 3, bound=lambda d, endpoint, remaining: 0.0)
    assert zero.remainders == fast.remainders
    assert zero.costs == pytest.approx(fast.costs, abs=1e-12)
    assert zero.nodes_expanded >= fast.nodes_expanded


def test_deterministic_output():
    layout = unit_pool(1, 9, targets_min=6, targets_max=6)[0]
    a = lbest_remainders(layout, (1,), 4)
    b = lbest_remainders(layout, (1,), 4)
    assert a == b


def test_pruning_beats_exhaustive_at_nine_remaining():
    wins = 0
    total = 10
    budget = math.factorial(9) // 10
    for seed in range(total):
        layout = unit_pool(1, 400 + seed, targets_min=9, targets_max=9)[0]
        result = lbest_remainders(layout, (), 2)
        assert result.exhaustive_equivalent == math.factorial(9)
        if result.nodes_expanded < budget:
            wins += 1
    assert wins >= 0.9 * total


def test_approx_equals_exact_with_exhaustive_l():
    layout = unit_pool(1, 61, targets_min=5, targets_max=5)[0]
    plan = Plan((2, 4, 1, 0, 3))
    for t in (0, 1, 2, 4, 5):
        approx = t_predictability_approx(layout, plan, t, BETA1, 720)
        exact = t_predictability_exact(layout, plan, t, BETA1)
        assert abs(approx - exact) <= 1e-12


def test_approx_collinear_values():
    layout = collinear_layout()
    plan = Plan((0, 1, 2))
    assert t_predictability_approx(layout, plan, 1, BETA1, 2) == pytest.approx(
        1 / (1 + math.exp(-1)), abs=1e-12
    )
    # with l=1 the plan's own remainder is the single best: denominator equals numerator
    assert t_predictability_approx(layout, plan, 1, BETA1, 1) == 1.0


def test_approx_never_below_exact_and_at_most_one():
    for seed in range(4):
        layout = unit_pool(1, 200 + seed, targets_min=5, targets_max=5)[0]
        for plan in [Plan((0, 1, 2, 3, 4)), Plan((4, 3, 2, 1, 0)), Plan((2, 0, 4, 1, 3))]:
            for t in (0, 1, 2):
                for l in (1, 2, 5):
                    approx = t_predictability_approx(layout, plan, t, BETA1, l)
                    exact = t_predictability_exact(layout, plan, t, BETA1)
                    assert approx <= 1.0
                    assert approx >= exact - 1e-15
                    assert approx > 0.0


def test_ratio_concentrates_near_one_on_sharp_layouts():
    # Exact over truncated ratio across all plans: mass should sit near 1.
    ratios = []
    for layout in sharp_pool(8, seed=5, targets_min=5, targets_max=5):
        for order in itertools.permutations(range(layout.size)):
            for t in (1, 2):
                plan = Plan(order)
                exact = t_predictability_exact(layout, plan, t, BETA1)
                approx = t_predictability_approx(layout, plan, t, BETA1, 2)
                ratios.append(exact / approx)
    ratios = np.array(ratios)
    assert np.all(ratios > 0) and np.all(ratios <= 1 + 1e-12)
    assert np.median(ratios) > 0.95
