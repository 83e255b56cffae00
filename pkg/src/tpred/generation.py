"""Random layout generation and the stimulus-selection pipeline.

The pipeline mirrors how study scenes get curated: generate a pool, keep only
layouts where the candidate planners actually disagree, drop layouts whose
chosen paths graze targets they are not about to capture, and rank what is
left by how much the predictability planners improve on the cost-optimal one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import GenerationStalled, InvalidArgument
from .geometry import (
    BBox,
    Layout,
    Plan,
    Point2,
    UNIT_SQUARE,
    point_segment_distance,
    validate_layout,
)
from .observer import Rationality, t_predictability_exact
from .planner import PlannerSpec, plan_t_predictable

_RETRIES_PER_POINT = 10_000


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters of the rejection-sampling layout generator."""

    count: int
    targets_min: int = 5
    targets_max: int = 6
    bbox: BBox = UNIT_SQUARE
    min_separation: float = 0.05
    seed: int = 0
    start: Point2 | None = None  # None: drawn uniformly, like the targets

    def __post_init__(self) -> None:
        if self.count < 0:
            raise InvalidArgument(f"count must be >= 0, got {self.count}")
        if self.targets_min < 2:
            raise InvalidArgument(f"targets_min must be >= 2, got {self.targets_min}")
        if self.targets_max < self.targets_min:
            raise InvalidArgument(
                f"targets_max {self.targets_max} below targets_min {self.targets_min}"
            )
        if self.min_separation <= 0:
            raise InvalidArgument(f"min_separation must be > 0, got {self.min_separation}")
        if self.seed < 0:
            raise InvalidArgument(f"seed must be a nonnegative integer, got {self.seed}")


def generate_layouts(config: GeneratorConfig) -> list[Layout]:
    """Draw ``config.count`` layouts, reproducibly from ``config.seed``.

    Points are uniform in the box; a candidate closer than ``min_separation``
    to an already-placed point is redrawn.  Raises :class:`GenerationStalled`
    when the retry budget runs out (separation too large for the box).
    """
    rng = np.random.default_rng(config.seed)
    bb = config.bbox
    layouts: list[Layout] = []
    for i in range(config.count):
        n_targets = int(rng.integers(config.targets_min, config.targets_max + 1))
        placed: list[tuple[float, float]] = []
        if config.start is not None:
            placed.append((config.start.x, config.start.y))
        while len(placed) < n_targets + 1:
            for attempt in range(_RETRIES_PER_POINT + 1):
                if attempt == _RETRIES_PER_POINT:
                    raise GenerationStalled(
                        f"could not place point {len(placed)} of layout {i + 1} "
                        f"with separation {config.min_separation} in {bb}"
                    )
                x = float(rng.uniform(bb.xmin, bb.xmax))
                y = float(rng.uniform(bb.ymin, bb.ymax))
                if all(
                    np.hypot(x - px, y - py) >= config.min_separation for px, py in placed
                ):
                    placed.append((x, y))
                    break
        layout = Layout.from_coords(f"L{i + 1:04d}", placed[0], placed[1:])
        layouts.append(
            validate_layout(layout, bbox=bb, min_separation=config.min_separation)
        )
    return layouts


def _chosen_plans(
    layout: Layout, planner_ts: Sequence[int], rationality: Rationality
) -> dict[int, Plan]:
    return {
        t: plan_t_predictable(layout, PlannerSpec(t=t, rationality=rationality))
        for t in planner_ts
    }


def filter_distinguishable(
    layouts: Sequence[Layout],
    planner_ts: Sequence[int],
    rationality: Rationality,
) -> list[Layout]:
    """Keep layouts on which the given planners all choose different plans."""
    if len(planner_ts) < 2:
        raise InvalidArgument("need at least 2 planner t values to compare")
    kept = []
    for layout in layouts:
        plans = list(_chosen_plans(layout, planner_ts, rationality).values())
        if len({p.order for p in plans}) == len(plans):
            kept.append(layout)
    return kept


def filter_no_confounds(
    layouts: Sequence[Layout],
    capture_radius: float,
    planner_ts: Sequence[int],
    rationality: Rationality,
) -> list[Layout]:
    """Drop layouts where a chosen path grazes a target it is not yet capturing.

    A segment "grazes" when it passes within ``capture_radius`` of a target
    that is neither its endpoint nor already visited.
    """
    if capture_radius <= 0:
        raise InvalidArgument(f"capture_radius must be > 0, got {capture_radius}")
    kept = []
    for layout in layouts:
        if all(
            not _plan_grazes(layout, plan, capture_radius)
            for plan in _chosen_plans(layout, planner_ts, rationality).values()
        ):
            kept.append(layout)
    return kept


def _plan_grazes(layout: Layout, plan: Plan, capture_radius: float) -> bool:
    prev = layout.start
    order = plan.order
    for i, target in enumerate(order):
        end = layout.targets[target]
        for later in order[i + 1 :]:
            if point_segment_distance(layout.targets[later], prev, end) < capture_radius:
                return True
        prev = end
    return False


def rank_by_info_gain(
    layouts: Sequence[Layout],
    rationality: Rationality,
    *,
    gain_mode: str = "sum",
) -> list[Layout]:
    """Sort descending by how much the 1- and 2-step planners beat the optimal one.

    Default gain: [P1(1-planner) - P1(0-planner)] + [P2(2-planner) - P2(0-planner)].
    ``gain_mode="difference"`` uses the 2-step gain minus the 1-step gain
    instead.  Stable sort; zero-gain layouts end up last.
    """
    if gain_mode not in ("sum", "difference"):
        raise InvalidArgument(f"gain_mode must be 'sum' or 'difference', got {gain_mode!r}")
    gains = []
    for layout in layouts:
        plans = _chosen_plans(layout, (0, 1, 2), rationality)
        gain1 = t_predictability_exact(
            layout, plans[1], 1, rationality
        ) - t_predictability_exact(layout, plans[0], 1, rationality)
        gain2 = t_predictability_exact(
            layout, plans[2], 2, rationality
        ) - t_predictability_exact(layout, plans[0], 2, rationality)
        gains.append(gain1 + gain2 if gain_mode == "sum" else gain2 - gain1)
    indexed = sorted(range(len(layouts)), key=lambda i: -gains[i])
    return [layouts[i] for i in indexed]
