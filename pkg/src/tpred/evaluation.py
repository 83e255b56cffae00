"""Simulated-observer evaluation: sampling, accuracy metrics, and correlation.

Replays the prediction task with Boltzmann observers in place of people: for
each (layout, planner, observed-count) cell, sample predictions from the
posterior over completions and score them against the plan actually chosen.
Every cell owns an RNG stream keyed by (seed, layout id, t, k), so results are
identical no matter how cells are scheduled across threads.
"""

from __future__ import annotations

import os
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateVariance, HorizonExceeded, InvalidArgument
from .geometry import Layout, Plan, permutation_rank
from .observer import (
    Rationality,
    competitor_mass,
    posterior_over_remainders,
    prefix_posterior,
)
from .planner import PlannerSpec, plan_t_predictable


@dataclass(frozen=True)
class EvalRecord:
    """Per-(layout, planner t, observed k) theoretical and simulated accuracy."""

    layout_id: str
    planner_t: int
    k_observed: int
    theoretical_k_pred: float
    n_samples: int
    exact_match_rate: float
    mean_lev_similarity: float


def sample_observer(
    layout: Layout,
    prefix: Sequence[int],
    rationality: Rationality,
    rng: np.random.Generator,
) -> tuple[int, ...]:
    """Draw one predicted completion from the observer's posterior."""
    dist = posterior_over_remainders(layout, prefix, rationality)
    idx = int(rng.choice(len(dist.remainders), p=dist.probabilities))
    return dist.remainders[idx]


def levenshtein(a: Sequence[int], b: Sequence[int]) -> int:
    """Edit distance with unit-cost insertions, deletions, and substitutions."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, x in enumerate(a, start=1):
        current = [i]
        for j, y in enumerate(b, start=1):
            current.append(
                min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (x != y))
            )
        previous = current
    return previous[-1]


def _cell_rng(seed: int, layout_id: str, t: int, k: int) -> np.random.Generator:
    key = zlib.crc32(layout_id.encode("utf-8"))
    return np.random.default_rng(np.random.SeedSequence([seed, key, t, k]))


def _evaluate_cell(
    layout: Layout,
    plan: Plan,
    t: int,
    k: int,
    rationality: Rationality,
    n_samples: int,
    seed: int,
) -> EvalRecord:
    T = layout.size
    prefix = plan.order[:k]
    actual = plan.order[k:]
    rems, costs, probs = prefix_posterior(layout, prefix, rationality)
    unvisited = sorted(set(range(T)) - set(prefix))
    actual_idx = permutation_rank(actual, unvisited)
    theoretical = 1.0 / (1.0 + competitor_mass(costs, actual_idx, rationality.beta))

    rng = _cell_rng(seed, layout.id, t, k)
    draws = rng.choice(len(probs), size=n_samples, p=probs)
    match_rate = float(np.mean(draws == actual_idx))

    denom = max(T - k, 1)
    uniq, counts = np.unique(draws, return_counts=True)
    sim = sum(
        c * (1.0 - levenshtein(tuple(int(v) for v in rems[u]), actual) / denom)
        for u, c in zip(uniq, counts)
    ) / n_samples
    return EvalRecord(
        layout_id=layout.id,
        planner_t=t,
        k_observed=k,
        theoretical_k_pred=theoretical,
        n_samples=n_samples,
        exact_match_rate=match_rate,
        mean_lev_similarity=float(sim),
    )


def default_threads() -> int:
    """Worker count: the TPRED_THREADS environment variable, else 1."""
    raw = os.environ.get("TPRED_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def evaluate(
    pool: Sequence[Layout],
    planner_ts: Sequence[int],
    ks: Sequence[int],
    rationality: Rationality,
    n_samples: int,
    seed: int,
    *,
    threads: int | None = None,
) -> list[EvalRecord]:
    """Score every (layout, t, k) cell with ``n_samples`` simulated predictions.

    Plans come from the exact planner.  Output order and values are fully
    determined by the inputs and ``seed``, independent of ``threads``.
    """
    if n_samples < 1:
        raise InvalidArgument(f"n_samples must be >= 1, got {n_samples}")
    if threads is None:
        threads = default_threads()
    cells = []
    for layout in pool:
        for k in ks:
            if not 0 <= k <= layout.size:
                raise HorizonExceeded(
                    f"k={k} outside [0, {layout.size}] for layout {layout.id}"
                )
        for t in planner_ts:
            plan = plan_t_predictable(layout, PlannerSpec(t=t, rationality=rationality))
            for k in ks:
                cells.append((layout, plan, t, k))

    def run(cell: tuple[Layout, Plan, int, int]) -> EvalRecord:
        layout, plan, t, k = cell
        return _evaluate_cell(layout, plan, t, k, rationality, n_samples, seed)

    if threads <= 1:
        return [run(c) for c in cells]
    with ThreadPoolExecutor(max_workers=threads) as pool_exec:
        return list(pool_exec.map(run, cells))


def pearson_correlation(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Sample Pearson correlation coefficient of two equal-length series."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise InvalidArgument("series must be one-dimensional and equal length")
    if x.size < 2:
        raise DegenerateVariance("need at least 2 points")
    dx = x - x.mean()
    dy = y - y.mean()
    vx = float(np.dot(dx, dx))
    vy = float(np.dot(dy, dy))
    if vx == 0.0 or vy == 0.0:
        raise DegenerateVariance("an input series has zero variance")
    return float(np.dot(dx, dy) / np.sqrt(vx * vy))
