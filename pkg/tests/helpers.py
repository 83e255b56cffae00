"""Shared fixtures and independent brute-force oracles for the test suite.

Oracles here deliberately avoid the library's vectorized code paths: costs
are accumulated with plain ``math`` calls so that agreement between oracle
and implementation actually checks something.
"""

from __future__ import annotations

import itertools
import math

from tpred import BBox, GeneratorConfig, Layout, generate_layouts

# Regime used for approximation-quality experiments: domain scale chosen so
# that beta = 1 yields moderately sharp posteriors (well-separated targets,
# cost gaps of a few units), comparable to concentrated-but-not-degenerate
# inference.  On a unit square with beta = 1 every completion looks almost
# equally plausible and approximation statistics lose their meaning.
SHARP_BBOX = BBox(0.0, 0.0, 96.0, 96.0)
SHARP_SEPARATION = 24.0


def sharp_pool(count: int, seed: int, targets_min: int = 5, targets_max: int = 6) -> list[Layout]:
    return generate_layouts(
        GeneratorConfig(
            count=count,
            targets_min=targets_min,
            targets_max=targets_max,
            seed=seed,
            bbox=SHARP_BBOX,
            min_separation=SHARP_SEPARATION,
        )
    )


def unit_pool(count: int, seed: int, targets_min: int = 5, targets_max: int = 6) -> list[Layout]:
    return generate_layouts(
        GeneratorConfig(count=count, targets_min=targets_min, targets_max=targets_max, seed=seed)
    )


def collinear_layout() -> Layout:
    return Layout.from_coords("collinear", (0.0, 0.0), [(1.0, 0.0), (2.0, 0.0), (3.0, 0.0)])


# A 5-target layout on which maximizing one-step-ahead predictability departs
# from pure cost minimization (verified exhaustively in the planner tests).
FIG_STYLE_START = (0.3532748550604481, 0.5915953039490435)
FIG_STYLE_TARGETS = [
    (0.23530123166758055, 0.8022026837784835),
    (0.8673335518424147, 0.12875967122785104),
    (0.46707320673827113, 0.27714489253370433),
    (0.08311699773524239, 0.8959443082503675),
    (0.42994869204783537, 0.14769129996209407),
]


def fig_style_layout() -> Layout:
    return Layout.from_coords("ambiguous5", FIG_STYLE_START, FIG_STYLE_TARGETS)


def oracle_path_cost(layout: Layout, order: tuple[int, ...]) -> float:
    points = [(layout.start.x, layout.start.y)] + [
        (layout.targets[i].x, layout.targets[i].y) for i in order
    ]
    return sum(math.dist(a, b) for a, b in zip(points, points[1:]))


def oracle_full_conditional(layout: Layout, order: tuple[int, ...], t: int, beta: float) -> float:
    """Conditional probability of a full plan given its first t targets.

    Straight product-rule evaluation: Boltzmann weight of the whole sequence,
    normalized over all sequences sharing the observed prefix.
    """
    T = layout.size
    weights: dict[tuple[int, ...], float] = {}
    costs = {perm: oracle_path_cost(layout, perm) for perm in itertools.permutations(range(T))}
    cmin = min(costs.values())
    for perm, c in costs.items():
        weights[perm] = math.exp(-beta * (c - cmin))
    prefix = order[:t]
    denom = sum(w for perm, w in weights.items() if perm[:t] == prefix)
    return weights[tuple(order)] / denom


def oracle_min_cost_order(layout: Layout) -> tuple[int, ...]:
    best = None
    for perm in itertools.permutations(range(layout.size)):
        key = (oracle_path_cost(layout, perm), perm)
        if best is None or key < best:
            best = key
    assert best is not None
    return best[1]


def oracle_remainder_cost(layout: Layout, prefix: tuple[int, ...], rem: tuple[int, ...]) -> float:
    if prefix:
        p = layout.targets[prefix[-1]]
        origin = (p.x, p.y)
    else:
        origin = (layout.start.x, layout.start.y)
    points = [origin] + [(layout.targets[i].x, layout.targets[i].y) for i in rem]
    return sum(math.dist(a, b) for a, b in zip(points, points[1:]))


def oracle_sorted_remainders(
    layout: Layout, prefix: tuple[int, ...]
) -> list[tuple[float, tuple[int, ...]]]:
    unvisited = sorted(set(range(layout.size)) - set(prefix))
    out = [
        (oracle_remainder_cost(layout, prefix, rem), rem)
        for rem in itertools.permutations(unvisited)
    ]
    out.sort()
    return out
