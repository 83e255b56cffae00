"""Branch-and-bound enumeration of the l lowest-cost plan completions.

The exact conditional over completions needs a sum over (T-t)! remainders;
truncating that sum to the l cheapest completions keeps it tractable.  The
search here is a best-first expansion of partial completions ordered by an
admissible lower bound, so the first l complete paths dequeued are guaranteed
to be the l cheapest overall.

Bound: accumulated path cost plus, for every still-unvisited target, the
shortest edge that could enter it (from the current endpoint or another
unvisited target).  Every unvisited target must be entered by exactly one
such edge, so the bound never overestimates.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import HorizonExceeded, InvalidArgument
from .geometry import Layout, Plan, check_plan, distance_matrix, sequence_costs
from .observer import Rationality, check_prefix, competitor_mass

#: A remaining-cost lower bound: f(distances, endpoint, remaining) -> float.
#: Must never overestimate the cheapest path from ``endpoint`` through all of
#: ``remaining``, or the search loses its optimality guarantee.
BoundFn = Callable[[np.ndarray, int, tuple[int, ...]], float]


@dataclass(frozen=True)
class LBestResult:
    """The l cheapest completions, ascending by cost (lexicographic within ties)."""

    remainders: tuple[tuple[int, ...], ...]
    costs: tuple[float, ...]
    nodes_expanded: int
    exhaustive_equivalent: int


def entering_edge_bound(d: np.ndarray, endpoint: int, remaining: tuple[int, ...]) -> float:
    """Sum over remaining targets of the shortest edge that could enter each.

    Candidate predecessors of a target are the current endpoint and the other
    remaining targets; every remaining target must be entered by exactly one
    such edge, so this never overestimates the true remaining cost.
    """
    return float(
        sum(
            min(d[v, u] for v in (endpoint,) + tuple(x for x in remaining if x != u))
            for u in remaining
        )
    )


def lbest_remainders(
    layout: Layout,
    prefix: Sequence[int],
    l: int,
    *,
    bound: BoundFn | None = None,
) -> LBestResult:
    """Return the min(l, (T-t)!) globally cheapest completions of ``prefix``.

    Best-first search on an admissible lower bound, so the first l complete
    paths dequeued are exactly the l cheapest.  Deterministic: output is
    sorted by (cost, lexicographic order), and the search itself breaks
    frontier ties lexicographically.  ``nodes_expanded`` counts search states
    dequeued from the frontier.

    ``bound`` swaps in a different admissible heuristic; the default is
    :func:`entering_edge_bound`, evaluated incrementally.
    """
    if l < 1:
        raise InvalidArgument(f"l must be >= 1, got {l}")
    prefix = check_prefix(layout, prefix)
    d = distance_matrix(layout)
    unvisited = tuple(sorted(set(range(layout.size)) - set(prefix)))
    m = len(unvisited)
    total = math.factorial(m)
    want = min(l, total)
    if m == 0:
        return LBestResult(((),), (0.0,), 0, 1)

    origin = prefix[-1] if prefix else layout.size
    root_bound = entering_edge_bound(d, origin, unvisited)

    # frontier entries: (bound, seq, cost, endpoint, remaining)
    frontier: list[tuple[float, tuple[int, ...], float, int, tuple[int, ...]]] = [
        (root_bound, (), 0.0, origin, unvisited)
    ]
    done: list[tuple[tuple[int, ...], float]] = []
    expanded = 0
    while frontier and len(done) < want:
        _, seq, cost, endpoint, remaining = heapq.heappop(frontier)
        expanded += 1
        if not remaining:
            done.append((seq, cost))
            continue
        if bound is None:
            # Incremental form of the default bound: one step in, the endpoint
            # leaves the candidate-predecessor set, so each child's per-target
            # entering edges are min over the parent's remaining set minus the
            # target itself -- one (k x k) reduction covers all children.
            r = np.array(remaining)
            sub = d[np.ix_(r, r)].copy()
            np.fill_diagonal(sub, np.inf)
            mins = np.zeros(1) if len(remaining) == 1 else sub.min(axis=0)
            mins_total = mins.sum()
            tails = [float(mins_total - mins[i]) for i in range(len(remaining))]
        else:
            tails = [
                bound(d, c, remaining[:i] + remaining[i + 1 :])
                for i, c in enumerate(remaining)
            ]
        for i, c in enumerate(remaining):
            child_cost = cost + float(d[endpoint, c])
            heapq.heappush(
                frontier,
                (
                    child_cost + tails[i],
                    seq + (c,),
                    child_cost,
                    c,
                    remaining[:i] + remaining[i + 1 :],
                ),
            )
    return LBestResult(
        remainders=tuple(s for s, _ in done),
        costs=tuple(c for _, c in done),
        nodes_expanded=expanded,
        exhaustive_equivalent=total,
    )


def t_predictability_approx(
    layout: Layout, plan: Plan, t: int, rationality: Rationality, l: int
) -> float:
    """Predictability with the conditional's denominator truncated to the l-best set.

    The evaluated plan's own completion is always kept in the denominator even
    when it is not among the l best; dropping it would yield values above 1.
    Never below the exact value, and equal to it once l covers all completions.
    """
    check_plan(layout, plan)
    if t < 0:
        raise InvalidArgument(f"negative split index {t}")
    if t > layout.size:
        raise HorizonExceeded(f"t={t} exceeds horizon T={layout.size}")
    prefix = plan.order[:t]
    own = plan.order[t:]
    result = lbest_remainders(layout, prefix, l)
    entries = dict(zip(result.remainders, result.costs))
    if own not in entries:
        origin = prefix[-1] if prefix else None
        entries[own] = float(
            sequence_costs(layout, origin, np.array([own], dtype=int).reshape(1, -1))[0]
        )
    # Sum competitors in lexicographic order, mirroring the exact computation,
    # so an exhaustive l reproduces the exact value bit for bit.
    ordered = sorted(entries)
    costs = np.array([entries[r] for r in ordered])
    mass = competitor_mass(costs, ordered.index(own), rationality.beta)
    return 1.0 / (1.0 + mass)
