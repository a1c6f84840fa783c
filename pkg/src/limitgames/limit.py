"""Optimal limit values and strategies on the product arena.

The limit operator improves a rank vector r in one step through a rank
hierarchy: the distinct ranks of goal vertices under r give thresholds
t_1 < ... < t_k; level h collects the goal vertices at rank <= t_h, gets
its own reachability fixed point r'_h, and the completion r''_h of that
fixed point (goal vertices priced at their best continuation).  The new
rank of v is min over levels of max(r(v), r''_h(v), t_h) - INFINITY when
the goal set is empty.  Iterating from the all-zero vector climbs to the
greatest relevant fixed point r* within |F| + 1 steps; r*(entry(v)) is
the optimal limit value from base vertex v.

Optimal strategies come out of the iteration's history.  Player 0 plays
reach-optimally toward her current level's goal set and re-aims on every
goal visit (memory: one of the k levels).  Player 1 remembers the last
goal visit (memory: a product vertex) and answers with a maximizing move
read off the hierarchy at that vertex's settling step.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    INFINITY,
    Arena,
    Dfa,
    EdgeSpec,
    FiniteStateStrategy,
    InputError,
    InternalInvariantError,
    MemoryStructure,
    VertexSpec,
)
from .product import ProductArena, build_product
from .reach import (
    ReachSolution,
    complete_ranking,
    optimal_successor,
    reach_fixpoint,
)


@dataclass(frozen=True)
class RankHierarchy:
    """Leveled reachability data for one rank vector.

    thresholds are strictly increasing (INFINITY may close the list);
    levels are nested goal subsets; inner[h] / completed[h] are the
    reachability fixed point and its completion for levels[h].
    """

    thresholds: tuple[int, ...]
    levels: tuple[frozenset[int], ...]
    inner: tuple[ReachSolution, ...]
    completed: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.thresholds)


@dataclass(frozen=True)
class LimitSolution:
    """Greatest relevant fixed point of the limit operator, with history.

    history[j] pairs the ranking before step j with the hierarchy built
    from it; the last entry holds the fixed point itself.  settling[j] is
    the first step after which a vertex's rank is final; h_of[v] is the
    lowest level whose threshold test keeps r*(v) (used as Player 0's
    initial memory).
    """

    ranks: tuple[int, ...]
    settling: tuple[int, ...]
    iterations: int
    history: tuple[tuple[tuple[int, ...], RankHierarchy], ...]
    h_of: tuple[int, ...]

    @property
    def fixpoint_hierarchy(self) -> RankHierarchy:
        return self.history[-1][1]


def build_hierarchy(p: ProductArena, ranks) -> RankHierarchy:
    """Solve one reachability game per distinct goal rank under ``ranks``."""
    thresholds = sorted({ranks[v] for v in p.goal})
    levels = []
    inner = []
    completed = []
    for bound in thresholds:
        level = frozenset(v for v in p.goal if ranks[v] <= bound)
        sol = reach_fixpoint(p, level)
        levels.append(level)
        inner.append(sol)
        completed.append(tuple(complete_ranking(p, level, sol.ranks)))
    return RankHierarchy(
        thresholds=tuple(thresholds),
        levels=tuple(levels),
        inner=tuple(inner),
        completed=tuple(completed),
    )


def limit_step(p: ProductArena, ranks) -> tuple[list[int], RankHierarchy]:
    """One application of the limit operator; returns (new ranks, hierarchy)."""
    hierarchy = build_hierarchy(p, ranks)
    if hierarchy.k == 0:
        return [INFINITY] * p.n, hierarchy
    new = []
    for v in range(p.n):
        rv = ranks[v]
        best = INFINITY
        for h in range(hierarchy.k):
            cand = max(rv, hierarchy.completed[h][v], hierarchy.thresholds[h])
            if cand < best:
                best = cand
        new.append(best)
    return new, hierarchy


def limit_fixpoint(p: ProductArena) -> LimitSolution:
    """Iterate limit_step from all-zero until stable.

    Keeps every step's (ranking, hierarchy) pair: Player 1's strategy
    reads levels from the step before each vertex settled.
    """
    ranks = [0] * p.n
    settling = [0] * p.n
    history: list[tuple[tuple[int, ...], RankHierarchy]] = []
    step = 0
    while True:
        if step > len(p.goal) + 1:
            raise InternalInvariantError("limit iteration failed to converge")
        new, hierarchy = limit_step(p, ranks)
        history.append((tuple(ranks), hierarchy))
        if new == ranks:
            break
        step += 1
        for v in range(p.n):
            if new[v] != ranks[v]:
                settling[v] = step
        ranks = new
    return LimitSolution(
        ranks=tuple(ranks),
        settling=tuple(settling),
        iterations=step,
        history=tuple(history),
        h_of=_levels_at_fixpoint(p, tuple(ranks), history[-1][1]),
    )


def _levels_at_fixpoint(
    p: ProductArena, ranks: tuple[int, ...], hierarchy: RankHierarchy
) -> tuple[int, ...]:
    """Per vertex, the smallest 1-based level whose max test equals r*."""
    if hierarchy.k == 0:
        return (1,) * p.n
    out = []
    for v in range(p.n):
        for h in range(hierarchy.k):
            if (
                max(ranks[v], hierarchy.completed[h][v], hierarchy.thresholds[h])
                == ranks[v]
            ):
                out.append(h + 1)
                break
        else:
            raise InternalInvariantError(
                f"no level witnesses the fixed point at {p.vertex_name(v)}"
            )
    return tuple(out)


def extract_limit_strategy_p0(p: ProductArena, sol: LimitSolution) -> FiniteStateStrategy:
    """Player 0's optimal strategy from the fixed-point hierarchy.

    Memory is the current level h (a single dummy state when there are no
    levels): start at h_of(v), keep h until a visit to level-h goal
    re-aims at the visited vertex's own level.  Moves follow the level's
    reachability fixed point (settling-refined) off its goal set and the
    completed ranking on it; INFINITY-rank vertices move to their
    lowest-index successor.
    """
    hierarchy = sol.fixpoint_hierarchy
    k = max(hierarchy.k, 1)
    labels = tuple(str(h) for h in range(1, k + 1))
    init = tuple(h - 1 for h in sol.h_of)
    upd = []
    for m in range(k):
        if hierarchy.k == 0:
            upd.append((0,) * p.n)
            continue
        level = hierarchy.levels[m]
        upd.append(
            tuple(sol.h_of[v] - 1 if v in level else m for v in range(p.n))
        )
    memory = MemoryStructure(labels=labels, init=init, upd=tuple(upd))

    nxt: dict[tuple[int, int], int] = {}
    for v in range(p.n):
        if p.owners[v] != 0:
            continue
        for m in range(k):
            if hierarchy.k == 0 or sol.ranks[v] == INFINITY:
                nxt[(v, m)] = p.successors[v][0][0]
            elif v in hierarchy.levels[m]:
                nxt[(v, m)] = optimal_successor(
                    p,
                    v,
                    hierarchy.inner[m].ranks,
                    hierarchy.completed[m][v],
                    maximize=False,
                )
            else:
                nxt[(v, m)] = optimal_successor(
                    p,
                    v,
                    hierarchy.inner[m].ranks,
                    hierarchy.inner[m].ranks[v],
                    maximize=False,
                    settling=hierarchy.inner[m].settling,
                )
    return FiniteStateStrategy(player=0, memory=memory, nxt=nxt)


def classify_p1(sol: LimitSolution, v: int) -> tuple[str, int | None]:
    """Classify a vertex for Player 1's move selection.

    Type "zero": r*(v) = 0.  Otherwise consult the hierarchy from the step
    before v settled: type "one" with the largest level h whose completed
    rank equals r*(v), else type "two" with the unique level whose
    threshold equals r*(v).  The fixed-point equation guarantees one of
    the two exists whenever the goal set is nonempty.
    """
    rv = sol.ranks[v]
    if rv == 0:
        return ("zero", None)
    hierarchy = sol.history[sol.settling[v] - 1][1]
    level = None
    for h in range(hierarchy.k):
        if hierarchy.completed[h][v] == rv:
            level = h + 1
    if level is not None:
        return ("one", level)
    for h in range(hierarchy.k):
        if hierarchy.thresholds[h] == rv:
            return ("two", h + 1)
    raise InternalInvariantError(
        f"vertex {v} with rank {rv} matches no completed rank or threshold"
    )


def extract_limit_strategy_p1(p: ProductArena, sol: LimitSolution) -> FiniteStateStrategy:
    """Player 1's optimal strategy.

    Memory is the play's start vertex, replaced by every goal visit.  The
    move at vertex v with memory u maximizes against the hierarchy from
    the step before u settled: type-"one" memories play against their
    level's completed ranking, type-"two" against the next level down
    (arbitrary at the bottom level), type-"zero" arbitrarily.
    """
    labels = tuple(str(v) for v in range(p.n))
    init = tuple(range(p.n))
    upd = tuple(
        tuple(t if t in p.goal else m for t in range(p.n)) for m in range(p.n)
    )
    memory = MemoryStructure(labels=labels, init=init, upd=upd)

    # Per memory state, the (reach ranks, completed ranks) pair the move
    # maximizes against; None means any successor does (rank 0, or a
    # bottom-level threshold with no level below to spoil).
    aims: list[tuple[tuple[int, ...], tuple[int, ...]] | None] = []
    for m in range(p.n):
        if len(p.goal) == 0:
            aims.append(None)
            continue
        kind, level = classify_p1(sol, m)
        if kind == "zero" or (kind == "two" and level == 1):
            aims.append(None)
            continue
        hierarchy = sol.history[sol.settling[m] - 1][1]
        h = level - 1 if kind == "one" else level - 2
        aims.append((hierarchy.inner[h].ranks, hierarchy.completed[h]))

    nxt: dict[tuple[int, int], int] = {}
    for v in range(p.n):
        if p.owners[v] != 1:
            continue
        for m in range(p.n):
            aim = aims[m]
            if aim is None:
                nxt[(v, m)] = p.successors[v][0][0]
            else:
                ranks, completed = aim
                nxt[(v, m)] = optimal_successor(
                    p, v, ranks, completed[v], maximize=True
                )
    return FiniteStateStrategy(player=1, memory=memory, nxt=nxt)


def winning_regions(p: ProductArena, sol: LimitSolution) -> tuple[set[int], set[int]]:
    """Base vertices split by whether Player 0 wins qualitatively.

    Player 0 wins from v exactly when the limit value at entry(v) is
    finite; on finite arenas the regions partition the vertex set.
    """
    w0 = {v for v in range(p.base.n) if sol.ranks[p.entry(v)] != INFINITY}
    w1 = set(range(p.base.n)) - w0
    return w0, w1


def strategy_value(arena: Arena, dfa: Dfa, strategy: FiniteStateStrategy) -> list[int]:
    """The limit value each base vertex guarantees under a Player-0 strategy.

    Builds the arena restricted to the strategy (vertices are base-vertex /
    memory-state pairs; Player-0 choices collapse to the prescribed move)
    and solves it against the same DFA.  Entry values are exact: the
    strategy achieves them and Player 1 can enforce them.
    """
    if strategy.player != 0:
        raise InputError("strategy_value expects a Player-0 strategy")
    mem = strategy.memory
    base_weights = arena.edge_weight

    def pack(v: int, m: int) -> int:
        return v * mem.n + m

    vertices = []
    for v in range(arena.n):
        for m in range(mem.n):
            vertices.append(
                VertexSpec(
                    name=f"{arena.name(v)}&{mem.labels[m]}",
                    owner=arena.owner(v),
                    color=arena.color(v),
                )
            )
    edges = []
    for v in range(arena.n):
        for m in range(mem.n):
            if arena.owner(v) == 0:
                if (v, m) not in strategy.nxt:
                    raise InputError(f"strategy has no move at vertex {v}, memory {m}")
                moves = [strategy.nxt[(v, m)]]
                if (v, moves[0]) not in base_weights:
                    raise InputError(
                        f"strategy move {arena.name(v)} -> {arena.name(moves[0])} is not an edge"
                    )
            else:
                moves = [t for t, _ in arena.successors[v]]
            for t in moves:
                edges.append(
                    EdgeSpec(
                        src=pack(v, m),
                        dst=pack(t, mem.upd[m][t]),
                        weight=base_weights[(v, t)],
                    )
                )
    restricted = Arena(vertices=tuple(vertices), edges=tuple(edges))
    prod = build_product(restricted, dfa)
    sol = limit_fixpoint(prod)
    return [sol.ranks[prod.entry(pack(v, mem.init[v]))] for v in range(arena.n)]
