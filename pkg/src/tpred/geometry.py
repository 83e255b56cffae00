"""Domain types for target layouts and visit plans, plus the path-length cost model.

A layout is a start point and a set of targets; a plan visits every target
exactly once, starting from the start point, with no return leg (open path).
All types are immutable and safe to share across threads.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DegenerateLayout, InvalidArgument, InvalidPlan

#: Minimum pairwise point separation accepted by :func:`validate_layout`.
MIN_SEPARATION = 1e-6

#: Largest set size for which exhaustive permutation enumeration is supported.
MAX_ENUMERATION = 10


@dataclass(frozen=True)
class Point2:
    """A point in the plane; coordinates must be finite."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DegenerateLayout(f"non-finite coordinate ({self.x}, {self.y})")


@dataclass(frozen=True)
class BBox:
    """Axis-aligned bounding rectangle."""

    xmin: float
    ymin: float
    xmax: float
    ymax: float

    def __post_init__(self) -> None:
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise InvalidArgument(f"empty bounding box {self}")

    def contains(self, p: Point2) -> bool:
        return self.xmin <= p.x <= self.xmax and self.ymin <= p.y <= self.ymax


#: Default domain: the unit square.
UNIT_SQUARE = BBox(0.0, 0.0, 1.0, 1.0)


@dataclass(frozen=True)
class Layout:
    """A start point and an ordered tuple of targets, indexed 0..T-1."""

    id: str
    start: Point2
    targets: tuple[Point2, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "targets", tuple(self.targets))

    @property
    def size(self) -> int:
        """Number of targets T (the plan horizon)."""
        return len(self.targets)

    @classmethod
    def from_coords(
        cls,
        id: str,
        start: tuple[float, float],
        targets: Iterable[tuple[float, float]],
    ) -> "Layout":
        return cls(id, Point2(*start), tuple(Point2(*t) for t in targets))


@dataclass(frozen=True)
class Plan:
    """A visit order: a permutation of the layout's target indices."""

    order: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", tuple(int(i) for i in self.order))


@dataclass(frozen=True)
class PrefixSplit:
    """A plan cut at index t: observed prefix ``order[:t]``, hidden remainder ``order[t:]``."""

    plan: Plan
    t: int

    def __post_init__(self) -> None:
        if not 0 <= self.t <= len(self.plan.order):
            raise InvalidArgument(
                f"split index {self.t} outside [0, {len(self.plan.order)}]"
            )

    @property
    def prefix(self) -> tuple[int, ...]:
        return self.plan.order[: self.t]

    @property
    def remainder(self) -> tuple[int, ...]:
        return self.plan.order[self.t :]


def validate_layout(
    layout: Layout,
    *,
    bbox: BBox | None = None,
    min_separation: float = MIN_SEPARATION,
) -> Layout:
    """Return ``layout`` if structurally sound, else raise :class:`DegenerateLayout`.

    Checks target count (T >= 2), pairwise separation of all points including
    the start, and containment in ``bbox`` when one is given.
    """
    T = layout.size
    if T < 2:
        raise DegenerateLayout(f"layout {layout.id!r}: needs at least 2 targets, got {T}")
    points = [("start", layout.start)] + [
        (f"target {i}", p) for i, p in enumerate(layout.targets)
    ]
    for (name_a, a), (name_b, b) in itertools.combinations(points, 2):
        if math.dist((a.x, a.y), (b.x, b.y)) < min_separation:
            raise DegenerateLayout(
                f"layout {layout.id!r}: {name_a} and {name_b} closer than {min_separation}"
            )
    if bbox is not None:
        for name, p in points:
            if not bbox.contains(p):
                raise DegenerateLayout(
                    f"layout {layout.id!r}: {name} at ({p.x}, {p.y}) outside {bbox}"
                )
    return layout


@lru_cache(maxsize=512)
def distance_matrix(layout: Layout) -> np.ndarray:
    """Pairwise Euclidean distances; row/column T is the start point."""
    pts = np.array([(p.x, p.y) for p in layout.targets] + [(layout.start.x, layout.start.y)])
    diff = pts[:, None, :] - pts[None, :, :]
    d = np.hypot(diff[..., 0], diff[..., 1])
    d.setflags(write=False)
    return d


def check_plan(layout: Layout, plan: Plan) -> None:
    """Raise :class:`InvalidPlan` unless ``plan`` is a permutation of 0..T-1."""
    if sorted(plan.order) != list(range(layout.size)):
        raise InvalidPlan(
            f"order {plan.order} is not a permutation of 0..{layout.size - 1}"
        )


def sequence_costs(layout: Layout, origin: int | None, seqs: np.ndarray) -> np.ndarray:
    """Path lengths of many index sequences walked from a common origin.

    ``seqs`` is an (N, m) integer array of target indices; ``origin`` is a
    target index, or None for the start point.  Segments are accumulated left
    to right so that scalar and batched calls round identically.
    """
    d = distance_matrix(layout)
    o = layout.size if origin is None else origin
    seqs = np.asarray(seqs)
    n, m = seqs.shape
    if m == 0:
        return np.zeros(n)
    costs = d[o, seqs[:, 0]].copy()
    for i in range(m - 1):
        costs += d[seqs[:, i], seqs[:, i + 1]]
    return costs


def path_cost(layout: Layout, plan: Plan) -> float:
    """Total open-path length start -> order[0] -> ... -> order[T-1]."""
    check_plan(layout, plan)
    return float(sequence_costs(layout, None, np.array([plan.order]))[0])


def prefix_cost(layout: Layout, split: PrefixSplit) -> float:
    """Path length of the observed prefix, walked from the start point."""
    check_plan(layout, split.plan)
    return float(sequence_costs(layout, None, np.array([split.prefix], dtype=int).reshape(1, -1))[0])


def remainder_cost(layout: Layout, split: PrefixSplit) -> float:
    """Path length of the hidden remainder, walked from the state after the prefix.

    Additive with :func:`prefix_cost`: prefix_cost + remainder_cost == path_cost.
    """
    check_plan(layout, split.plan)
    origin = split.prefix[-1] if split.t > 0 else None
    seq = np.array([split.remainder], dtype=int).reshape(1, -1)
    return float(sequence_costs(layout, origin, seq)[0])


def enumerate_plans(layout: Layout) -> Iterator[Plan]:
    """All T! plans of a layout, in lexicographic order."""
    for order in itertools.permutations(range(layout.size)):
        yield Plan(order)


@lru_cache(maxsize=16)
def all_permutations(m: int) -> np.ndarray:
    """All permutations of range(m) as an (m!, m) int8 array, lexicographic.

    Capped at m = MAX_ENUMERATION; larger remainders are the l-best solver's
    territory.
    """
    if m > MAX_ENUMERATION:
        raise InvalidArgument(
            f"exhaustive enumeration of {m}! permutations not supported (cap {MAX_ENUMERATION})"
        )
    if m == 0:
        return np.zeros((1, 0), dtype=np.int8)
    prev = all_permutations(m - 1)
    values = np.arange(m, dtype=np.int8)
    blocks = []
    for first in range(m):
        rest = np.delete(values, first)
        block = np.empty((prev.shape[0], m), dtype=np.int8)
        block[:, 0] = first
        block[:, 1:] = rest[prev]
        blocks.append(block)
    out = np.vstack(blocks)
    out.setflags(write=False)
    return out


def point_segment_distance(p: Point2, a: Point2, b: Point2) -> float:
    """Distance from point ``p`` to the closed segment from ``a`` to ``b``."""
    ax, ay = a.x, a.y
    vx, vy = b.x - ax, b.y - ay
    wx, wy = p.x - ax, p.y - ay
    vv = vx * vx + vy * vy
    if vv == 0.0:
        return math.hypot(wx, wy)
    s = min(1.0, max(0.0, (wx * vx + wy * vy) / vv))
    return math.hypot(wx - s * vx, wy - s * vy)


def permutation_rank(seq: Sequence[int], pool: Sequence[int]) -> int:
    """Lexicographic rank of ``seq`` among permutations of the sorted ``pool``."""
    remaining = sorted(pool)
    if sorted(seq) != remaining:
        raise InvalidArgument(f"{seq} is not a permutation of {pool}")
    rank = 0
    fact = math.factorial(len(remaining))
    for v in seq:
        fact //= len(remaining)
        rank += remaining.index(v) * fact
        remaining.remove(v)
    return rank
