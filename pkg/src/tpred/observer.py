"""Boltzmann noisy-rational observer: distributions over plan remainders.

The observer models the acting agent as noisily optimal: a completion with
path cost c is assigned probability proportional to exp(-beta * c).  Weights
are always exponentiated relative to a reference cost (max-subtraction for
distributions, the evaluated completion for scalar probabilities), so large
costs or large beta saturate gracefully instead of overflowing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyCostList, HorizonExceeded, InvalidArgument, InvalidPrefix, NonFiniteCost
from .geometry import (
    Layout,
    Plan,
    all_permutations,
    check_plan,
    permutation_rank,
    sequence_costs,
)

DEFAULT_BETA = 1.0


@dataclass(frozen=True)
class Rationality:
    """Rationality coefficient beta > 0 of the Boltzmann observer.

    beta -> infinity models a perfectly rational agent, beta -> 0 an
    indifferent one.  The beta = 0 limit is only reachable through
    :meth:`uniform`, never by passing 0 directly.
    """

    beta: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise InvalidArgument(
                f"beta must be finite and > 0, got {self.beta}; "
                "use Rationality.uniform() for the indifferent limit"
            )

    @classmethod
    def uniform(cls) -> "Rationality":
        """The beta = 0 limit: every feasible completion equally likely."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "beta", 0.0)
        return obj


@dataclass(frozen=True)
class RemainderDistribution:
    """Posterior over feasible completions from the state after a prefix."""

    remainders: tuple[tuple[int, ...], ...]
    log_weights: np.ndarray
    probabilities: np.ndarray


def boltzmann_distribution(
    costs: Sequence[float] | np.ndarray, rationality: Rationality
) -> np.ndarray:
    """Probabilities proportional to exp(-beta * cost), summing to 1."""
    c = np.asarray(costs, dtype=float)
    if c.size == 0:
        raise EmptyCostList("at least one cost is required")
    if not np.all(np.isfinite(c)):
        raise NonFiniteCost(f"costs contain non-finite entries: {c[~np.isfinite(c)][:3]}")
    w = -rationality.beta * c
    e = np.exp(w - w.max())
    return e / e.sum()


def check_prefix(layout: Layout, prefix: Sequence[int]) -> tuple[int, ...]:
    prefix = tuple(int(i) for i in prefix)
    if len(set(prefix)) != len(prefix):
        raise InvalidPrefix(f"duplicate index in prefix {prefix}")
    for i in prefix:
        if not 0 <= i < layout.size:
            raise InvalidPrefix(f"index {i} out of range 0..{layout.size - 1}")
    return prefix


def remainder_matrix(layout: Layout, prefix: Sequence[int]) -> np.ndarray:
    """All feasible completions as an ((T-t)!, T-t) index array, lexicographic."""
    prefix = check_prefix(layout, prefix)
    unvisited = np.array(sorted(set(range(layout.size)) - set(prefix)), dtype=np.int8)
    if unvisited.size == 0:
        return np.zeros((1, 0), dtype=np.int8)
    return unvisited[all_permutations(len(unvisited))]


def enumerate_remainders(layout: Layout, prefix: Sequence[int]) -> list[tuple[int, ...]]:
    """All (T-t)! permutations of the unvisited indices, lexicographic order."""
    return [tuple(int(i) for i in row) for row in remainder_matrix(layout, prefix)]


def prefix_posterior(
    layout: Layout, prefix: Sequence[int], rationality: Rationality
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Completions, their costs from the post-prefix state, and their probabilities.

    Single arithmetic path shared by the exact predictability computation and
    the exact planner, so that both always agree bit for bit.
    """
    prefix = check_prefix(layout, prefix)
    rems = remainder_matrix(layout, prefix)
    origin = prefix[-1] if prefix else None
    costs = sequence_costs(layout, origin, rems)
    probs = boltzmann_distribution(costs, rationality)
    return rems, costs, probs


def posterior_over_remainders(
    layout: Layout, prefix: Sequence[int], rationality: Rationality
) -> RemainderDistribution:
    """Full conditional distribution over completions given an observed prefix.

    The prefix need not be one any rational agent would choose; the posterior
    is well defined for every feasible prefix.
    """
    rems, costs, probs = prefix_posterior(layout, prefix, rationality)
    return RemainderDistribution(
        remainders=tuple(tuple(int(i) for i in row) for row in rems),
        log_weights=-rationality.beta * costs,
        probabilities=probs,
    )


def competitor_mass(costs: np.ndarray, own: int, beta: float) -> float:
    """Total Boltzmann weight of the other completions, relative to ``own``.

    The conditional probability of completion ``own`` is 1 / (1 + mass).
    Working with the mass instead of the normalized probability preserves
    resolution long after the probability itself saturates at 1.0, which is
    what lets planner comparisons stay meaningful at large beta or large
    domain scales.  Overflow saturates to inf (probability 0), underflow to 0
    (probability 1), both silently by design.
    """
    rel = costs - costs[own]
    with np.errstate(over="ignore"):
        weights = np.exp(-beta * rel)
    weights[own] = 0.0
    return float(weights.sum())


def t_predictability_exact(
    layout: Layout, plan: Plan, t: int, rationality: Rationality
) -> float:
    """Probability that the observer, having seen the first t targets, infers the rest.

    Computed from remainder costs only: the prefix cost is common to every
    completion sharing the prefix and cancels from the conditional.
    """
    check_plan(layout, plan)
    if t < 0:
        raise InvalidArgument(f"negative split index {t}")
    if t > layout.size:
        raise HorizonExceeded(f"t={t} exceeds horizon T={layout.size}")
    prefix = plan.order[:t]
    rems = remainder_matrix(layout, prefix)
    origin = prefix[-1] if prefix else None
    costs = sequence_costs(layout, origin, rems)
    unvisited = sorted(set(range(layout.size)) - set(prefix))
    idx = permutation_rank(plan.order[t:], unvisited)
    return 1.0 / (1.0 + competitor_mass(costs, idx, rationality.beta))
