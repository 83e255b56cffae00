from __future__ import annotations

import pytest

from helpers import collinear_layout, unit_pool
from tpred import (
    BBox,
    GenerationStalled,
    GeneratorConfig,
    InvalidArgument,
    Layout,
    PlannerSpec,
    Point2,
    Rationality,
    filter_distinguishable,
    filter_no_confounds,
    generate_layouts,
    plan_t_predictable,
    rank_by_info_gain,
    t_predictability_exact,
    validate_layout,
)

BETA1 = Rationality(1.0)

# Start sits to the right of two collinear targets: approaching the far one
# first sweeps straight over the near one.
GRAZING = Layout.from_coords("graze", (3.0, 0.0), [(1.0, 0.0), (2.0, 0.0), (3.0, 1.0)])


def test_config_validation():
    with pytest.raises(InvalidArgument):
        GeneratorConfig(count=-1)
    with pytest.raises(InvalidArgument):
        GeneratorConfig(count=1, targets_min=1)
    with pytest.raises(InvalidArgument):
        GeneratorConfig(count=1, targets_min=5, targets_max=4)
    with pytest.raises(InvalidArgument):
        GeneratorConfig(count=1, min_separation=0.0)


def test_generate_counts_and_validity():
    layouts = generate_layouts(GeneratorConfig(count=25, targets_min=5, targets_max=6, seed=7))
    assert len(layouts) == 25
    assert len({l.id for l in layouts}) == 25
    for layout in layouts:
        assert 5 <= layout.size <= 6
        validate_layout(layout, bbox=BBox(0, 0, 1, 1), min_separation=0.05)


def test_generate_empty():
    assert generate_layouts(GeneratorConfig(count=0)) == []


def test_generate_deterministic():
    config = GeneratorConfig(count=10, targets_min=5, targets_max=6, seed=99)
    first = generate_layouts(config)
    second = generate_layouts(config)
    assert first == second


def test_generate_with_fixed_start():
    config = GeneratorConfig(count=5, seed=1, start=Point2(0.5, 0.5))
    for layout in generate_layouts(config):
        assert (layout.start.x, layout.start.y) == (0.5, 0.5)


def test_generate_stalls_on_impossible_separation():
    with pytest.raises(GenerationStalled):
        generate_layouts(GeneratorConfig(count=1, targets_min=8, targets_max=8, min_separation=0.9))


def test_distinguishable_drops_unanimous_layout():
    # Every planner picks the same order on the collinear layout.
    layout = collinear_layout()
    plans = {
        t: plan_t_predictable(layout, PlannerSpec(t=t, rationality=BETA1)).order
        for t in (0, 1, 2)
    }
    assert len(set(plans.values())) == 1
    assert filter_distinguishable([layout], (0, 1, 2), BETA1) == []


def test_distinguishable_requires_two_planners():
    with pytest.raises(InvalidArgument):
        filter_distinguishable([collinear_layout()], (1,), BETA1)


def test_distinguishable_retention_strictly_between_bounds():
    pool = unit_pool(40, seed=12)
    kept = filter_distinguishable(pool, (0, 1, 2), BETA1)
    assert 0 < len(kept) < len(pool)
    # order-preserving subset
    it = iter(pool)
    assert all(any(k is x for x in it) for k in kept)


def test_no_confounds_drops_grazing_layout():
    chosen = plan_t_predictable(GRAZING, PlannerSpec(t=1, rationality=BETA1))
    assert chosen.order == (0, 1, 2)  # passes directly over target 1
    for radius in (1e-6, 0.05, 0.3):
        assert filter_no_confounds([GRAZING], radius, (0, 1), BETA1) == []


def test_no_confounds_keeps_clean_layout():
    layout = Layout.from_coords("clean", (0, 0), [(1, 0), (0, 1), (1, 1)])
    assert filter_no_confounds([layout], 0.05, (0, 1, 2), BETA1) == [layout]


def test_no_confounds_rejects_zero_radius():
    with pytest.raises(InvalidArgument):
        filter_no_confounds([collinear_layout()], 0.0, (0,), BETA1)


def test_info_gain_zero_for_unanimous_layout_sorted_last():
    pool = unit_pool(12, seed=31)
    mixed = pool + [collinear_layout()]
    ranked = rank_by_info_gain(mixed, BETA1)
    assert len(ranked) == len(mixed)
    gains = []
    for layout in ranked:
        plans = {
            t: plan_t_predictable(layout, PlannerSpec(t=t, rationality=BETA1)) for t in (0, 1, 2)
        }
        gain = (
            t_predictability_exact(layout, plans[1], 1, BETA1)
            - t_predictability_exact(layout, plans[0], 1, BETA1)
        ) + (
            t_predictability_exact(layout, plans[2], 2, BETA1)
            - t_predictability_exact(layout, plans[0], 2, BETA1)
        )
        gains.append(gain)
    assert gains == sorted(gains, reverse=True)
    assert all(g >= -1e-12 for g in gains)  # argmax dominance keeps gains nonnegative
    assert ranked[-1].id == "collinear" or gains[-1] <= 1e-12


def test_info_gain_top_slice():
    pool = unit_pool(30, seed=77)
    kept = filter_distinguishable(pool, (0, 1, 2), BETA1)
    ranked = rank_by_info_gain(kept, BETA1)
    top = ranked[:15]
    assert len(top) == min(15, len(kept))


def test_info_gain_alternative_mode():
    pool = unit_pool(8, seed=2)
    default = rank_by_info_gain(pool, BETA1)
    alt = rank_by_info_gain(pool, BETA1, gain_mode="difference")
    assert {l.id for l in default} == {l.id for l in alt}
    with pytest.raises(InvalidArgument):
        rank_by_info_gain(pool, BETA1, gain_mode="other")


def test_filters_preserve_input_order():
    pool = unit_pool(25, seed=5)
    kept = filter_distinguishable(pool, (0, 1, 2), BETA1)
    kept2 = filter_no_confounds(kept, 0.05, (0, 1, 2), BETA1)
    ids = [l.id for l in pool]
    assert [l.id for l in kept] == [i for i in ids if i in {l.id for l in kept}]
    assert [l.id for l in kept2] == [i for i in ids if i in {l.id for l in kept2}]
