"""Optimal reachability ranking on the product arena.

The ranking operator improves a rank vector r by one Jacobi sweep: goal
vertices get 0, Player-0 vertices min over successors of weight + rank,
Player-1 vertices max, never above the old value.  Iterating from the
all-INFINITY vector reaches the least fixed point r* within |V|*|Q| + 1
sweeps; r*(v) is the optimal weight within which Player 0 can force a
visit to the goal from v (INFINITY when she cannot).

A vertex's settling time is the first sweep after which its rank never
changes again.  Settling times refine optimal moves for Player 0: moving
to a successor that settled one sweep earlier guarantees progress toward
the goal instead of circling among equal ranks.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from . import _kernels
from .core import (
    INFINITY,
    FiniteStateStrategy,
    InternalInvariantError,
    MemoryStructure,
    rank_add,
)
from .product import ProductArena

log = logging.getLogger(__name__)


def _positional_memory(n_vertices: int) -> MemoryStructure:
    return MemoryStructure(
        labels=("-",), init=(0,) * n_vertices, upd=((0,) * n_vertices,)
    )


@dataclass(frozen=True)
class ReachSolution:
    """Least fixed point of the reachability ranking for one goal set."""

    goal: frozenset[int]
    ranks: tuple[int, ...]
    settling: tuple[int, ...]
    iterations: int


def reach_step(p: ProductArena, goal: frozenset[int] | set[int], ranks) -> list[int]:
    """One application of the ranking operator (full sweep, reads ranks only)."""
    new = []
    for v in range(p.n):
        if v in goal:
            new.append(0)
            continue
        succ = p.successors[v]
        if p.owners[v] == 0:
            best = min(rank_add(ranks[t], w) for t, w in succ)
        else:
            best = max(rank_add(ranks[t], w) for t, w in succ)
        new.append(min(ranks[v], best))
    return new


def reach_fixpoint(p: ProductArena, goal: frozenset[int] | set[int]) -> ReachSolution:
    """Iterate reach_step from all-INFINITY until stable (kernel-backed)."""
    owners, indptr, targets, weights = p.csr
    ranks, settling, iterations = _kernels.active().reach_fixpoint_csr(
        p.n, owners, indptr, targets, weights, p.goal_mask(goal)
    )
    if iterations > p.n + 1:
        raise InternalInvariantError(
            f"reachability ranking took {iterations} sweeps on {p.n} vertices"
        )
    return ReachSolution(
        goal=frozenset(goal),
        ranks=tuple(int(r) for r in ranks),
        settling=tuple(int(t) for t in settling),
        iterations=int(iterations),
    )


def complete_ranking(p: ProductArena, goal: frozenset[int] | set[int], ranks) -> list[int]:
    """Replace each goal vertex's rank by its best successor continuation.

    Off the goal the ranking is returned unchanged.  On the goal, Player-0
    vertices take the min over successors of weight + rank, Player-1
    vertices the max: the cost of going around again rather than stopping.
    """
    out = list(ranks)
    for v in goal:
        succ = p.successors[v]
        if p.owners[v] == 0:
            out[v] = min(rank_add(ranks[t], w) for t, w in succ)
        else:
            out[v] = max(rank_add(ranks[t], w) for t, w in succ)
    return out


def optimal_successor(
    p: ProductArena,
    v: int,
    target_ranks,
    expected: int,
    maximize: bool,
    settling=None,
) -> int:
    """The lowest-index successor t of v with expected = weight + rank(t).

    ``expected`` is the value the move must realize against
    ``target_ranks``; a fixed point (Player 0 minimizes, Player 1
    maximizes) or a completed ranking at goal vertices always admits a
    witness, so failure to find one is an internal error.

    When ``settling`` is supplied (Player-0 moves at non-goal vertices with
    finite rank), successors that settled exactly one sweep before v are
    preferred; such a successor exists at every fixed point, so a fallback
    to the plain rank witness is logged as a diagnostic.
    """
    refine = settling is not None and not maximize and expected != INFINITY
    witness = -1
    for t, w in p.successors[v]:
        if rank_add(target_ranks[t], w) != expected:
            continue
        if witness < 0:
            witness = t
        if refine:
            if settling[v] == settling[t] + 1:
                return t
        else:
            return t
    if witness < 0:
        raise InternalInvariantError(
            f"no successor of {p.vertex_name(v)} realizes rank {expected}"
        )
    if refine:
        log.warning(
            "no settling-time witness at %s (rank %d); falling back to rank-only",
            p.vertex_name(v),
            expected,
        )
    return witness


def extract_reach_strategies(
    p: ProductArena, sol: ReachSolution
) -> tuple[FiniteStateStrategy, FiniteStateStrategy]:
    """Positional optimal strategies for both players from the fixed point.

    Player 0 moves to an optimal successor (settling-time refined) at
    non-goal vertices of finite rank, and to the lowest-index successor at
    goal or INFINITY-rank vertices.  Player 1 is dual: optimal successors
    at non-goal vertices, lowest index on the goal.
    """
    memory = _positional_memory(p.n)
    nxt0: dict[tuple[int, int], int] = {}
    nxt1: dict[tuple[int, int], int] = {}
    for v in range(p.n):
        if p.owners[v] == 0:
            if v in sol.goal or sol.ranks[v] == INFINITY:
                nxt0[(v, 0)] = p.successors[v][0][0]
            else:
                nxt0[(v, 0)] = optimal_successor(
                    p, v, sol.ranks, sol.ranks[v], maximize=False,
                    settling=sol.settling,
                )
        else:
            if v in sol.goal:
                nxt1[(v, 0)] = p.successors[v][0][0]
            else:
                nxt1[(v, 0)] = optimal_successor(
                    p, v, sol.ranks, sol.ranks[v], maximize=True
                )
    return (
        FiniteStateStrategy(player=0, memory=memory, nxt=nxt0),
        FiniteStateStrategy(player=1, memory=memory, nxt=nxt1),
    )
