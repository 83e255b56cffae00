"""Planners that choose which full plan to execute.

The baseline planner minimizes path cost.  The predictability planner picks
the plan whose hidden remainder is easiest for the observer to infer after
seeing the first t targets; its exact mode scores candidates with the same
arithmetic as the single-plan predictability computation, so planner argmax
and after-the-fact scoring can never disagree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import HorizonExceeded, InvalidArgument
from .geometry import Layout, Plan, all_permutations, sequence_costs, validate_layout
from .lbest import lbest_remainders
from .observer import (
    Rationality,
    competitor_mass,
    remainder_matrix,
    t_predictability_exact,
)


@dataclass(frozen=True)
class PlannerSpec:
    """Configuration of the predictability planner.

    ``t`` is the number of targets the observer is assumed to see; ``mode``
    selects the exact conditional or its l-best truncation.
    """

    t: int
    rationality: Rationality
    mode: str = "exact"
    l: int = 2

    def __post_init__(self) -> None:
        if self.t < 0:
            raise InvalidArgument(f"t must be >= 0, got {self.t}")
        if self.mode not in ("exact", "approx"):
            raise InvalidArgument(f"mode must be 'exact' or 'approx', got {self.mode!r}")
        if self.l < 1:
            raise InvalidArgument(f"l must be >= 1, got {self.l}")


@dataclass(frozen=True)
class PredictabilityMatrix:
    """Exact k-predictability of each t-planner's chosen plan, rows t, cols k."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    entries: np.ndarray


def plan_optimal(layout: Layout) -> Plan:
    """Minimum-cost plan; ties resolved to the lexicographically smallest order."""
    validate_layout(layout)
    perms = all_permutations(layout.size)
    costs = sequence_costs(layout, None, perms)
    idx = int(np.flatnonzero(costs == costs.min())[0])
    return Plan(tuple(int(i) for i in perms[idx]))


def plan_t_predictable(layout: Layout, spec: PlannerSpec) -> Plan:
    """The feasible plan maximizing (exact or truncated) t-step predictability.

    Searches prefix by prefix.  Within a prefix the best completion is the
    cheapest one (the posterior is monotone in cost); prefixes then compete on
    the remaining completions' Boltzmann mass relative to that best completion,
    which stays resolvable long after the probability 1/(1 + mass) rounds to 1.
    Score ties prefer the cheaper total path, then the lexicographically
    smaller order.
    """
    validate_layout(layout)
    T = layout.size
    if spec.t > T:
        raise HorizonExceeded(f"t={spec.t} exceeds horizon T={T}")
    beta = spec.rationality.beta
    best_key: tuple[float, float, tuple[int, ...]] | None = None
    for prefix in itertools.permutations(range(T), spec.t):
        if spec.mode == "exact":
            rems = remainder_matrix(layout, prefix)
            origin = prefix[-1] if prefix else None
            costs = sequence_costs(layout, origin, rems)
            j = int(np.flatnonzero(costs == costs.min())[0])
            rem = tuple(int(i) for i in rems[j])
        else:
            result = lbest_remainders(layout, prefix, spec.l)
            costs = np.array(result.costs)
            j = 0
            rem = result.remainders[j]
        mass = competitor_mass(costs, j, beta)
        pre_cost = float(
            sequence_costs(layout, None, np.array([prefix], dtype=int).reshape(1, -1))[0]
        )
        order = prefix + rem
        key = (mass, pre_cost + float(costs[j]), order)
        if best_key is None or key < best_key:
            best_key = key
    assert best_key is not None
    return Plan(best_key[2])


def k_predictability_matrix(
    layout: Layout,
    planner_ts: list[int],
    ks: list[int],
    rationality: Rationality,
) -> PredictabilityMatrix:
    """Exact k-predictability of each exact t-planner's plan, for every (t, k).

    The diagonal dominates each column: the k-planner maximizes exactly the
    quantity the column reports.
    """
    T = layout.size
    for v in list(planner_ts) + list(ks):
        if v > T:
            raise HorizonExceeded(f"index {v} exceeds horizon T={T}")
    plans = {
        t: plan_t_predictable(layout, PlannerSpec(t=t, rationality=rationality))
        for t in planner_ts
    }
    entries = np.array(
        [
            [t_predictability_exact(layout, plans[t], k, rationality) for k in ks]
            for t in planner_ts
        ]
    )
    return PredictabilityMatrix(rows=tuple(planner_ts), cols=tuple(ks), entries=entries)
