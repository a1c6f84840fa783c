"""Lasso evaluation, strategy duels, threshold-search oracles, and a
seeded instance generator.

The oracles here answer value queries without touching the ranking
machinery: a play's limit value is at most k exactly when Player 0 wins a
qualitative Buechi game on the gap-counter graph (product vertex plus
weight accumulated since the last goal visit, overshooting into a losing
sink), so the optimal value is the least such k, found by bisection.
Reachability values reduce the same way with a reachability objective.
Agreement between these searches and the fixed-point solvers is the
package's main correctness check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, fields

from .core import (
    INFINITY,
    Arena,
    Dfa,
    EdgeSpec,
    FiniteStateStrategy,
    InputError,
    InternalInvariantError,
    Lasso,
    VertexSpec,
    lasso_violations,
    validate_arena,
    validate_dfa,
)
from .product import ProductArena


def simulate_duel(
    p: ProductArena,
    s0: FiniteStateStrategy,
    s1: FiniteStateStrategy,
    start: int,
) -> Lasso:
    """Step both strategies from a product vertex until the play loops.

    The walked state is (vertex, s0 memory, s1 memory); the owner of the
    current vertex moves, both memories observe the move.  Returns the
    vertex projection split at the first repeated state.
    """
    bound = p.n * s0.memory.n * s1.memory.n + 1
    seen: dict[tuple[int, int, int], int] = {}
    trace: list[int] = []
    v = start
    m0 = s0.memory.init[start]
    m1 = s1.memory.init[start]
    while (v, m0, m1) not in seen:
        if len(trace) >= bound:
            raise InternalInvariantError("duel exceeded the state-space bound")
        seen[(v, m0, m1)] = len(trace)
        trace.append(v)
        v2 = s0.move(v, m0) if p.owners[v] == 0 else s1.move(v, m1)
        m0 = s0.memory.upd[m0][v2]
        m1 = s1.memory.upd[m1][v2]
        v = v2
    cut = seen[(v, m0, m1)]
    return Lasso(stem=tuple(trace[:cut]), cycle=tuple(trace[cut:]))


def eval_limit_value(p: ProductArena, lasso: Lasso) -> int:
    """Exact limit value of an ultimately periodic play.

    The play's value is sup over positions j of the weight from j to the
    next goal visit strictly after j.  That weight only grows when j moves
    back to the previous goal visit (or to position 0), so the sup is the
    maximum over gap starts: position 0 and every goal position within
    stem plus one period.  INFINITY when the cycle avoids the goal set.
    """
    issues = lasso_violations(lasso, p.edge_weight)
    if issues:
        raise InputError(issues)
    if not any(v in p.goal for v in lasso.cycle):
        return INFINITY
    period = len(lasso.stem) + len(lasso.cycle)
    seq = lasso.unroll(period + 2 * len(lasso.cycle))
    cum = [0]
    for a, b in zip(seq, seq[1:]):
        cum.append(cum[-1] + p.edge_weight[(a, b)])
    accepted = [i for i, v in enumerate(seq) if v in p.goal]
    starts = {0} | {i for i in accepted if i < period}
    best = 0
    for g in starts:
        after = next(i for i in accepted if i > g)
        best = max(best, cum[after] - cum[g])
    return best


def eval_reach_value(p: ProductArena, lasso: Lasso) -> int:
    """Weight from position 0 to the first goal position (0 qualifies).

    INFINITY when no position within stem plus one period is in the goal
    set (later positions repeat the period, so none ever is).
    """
    issues = lasso_violations(lasso, p.edge_weight)
    if issues:
        raise InputError(issues)
    seq = lasso.unroll(len(lasso.stem) + len(lasso.cycle))
    total = 0
    for i, v in enumerate(seq):
        if v in p.goal:
            return total
        if i + 1 < len(seq):
            total += p.edge_weight[(v, seq[i + 1])]
    return INFINITY


def _predecessors(succs: list[list[int]]) -> list[list[int]]:
    preds: list[list[int]] = [[] for _ in succs]
    for v, out in enumerate(succs):
        for t in out:
            preds[t].append(v)
    return preds


def _attractor(
    owners,
    succs: list[list[int]],
    preds: list[list[int]],
    within: set[int],
    targets: set[int],
    player: int,
) -> set[int]:
    """Vertices in ``within`` from which ``player`` forces reaching targets.

    Standard backward worklist with successor counters; only edges inside
    ``within`` count (the caller keeps ``within`` successor-closed enough
    that every vertex retains a move).
    """
    attr = {v for v in targets if v in within}
    queue = list(attr)
    pending: dict[int, int] = {}
    while queue:
        u = queue.pop()
        for w in preds[u]:
            if w not in within or w in attr:
                continue
            if owners[w] == player:
                attr.add(w)
                queue.append(w)
            else:
                left = pending.get(w)
                if left is None:
                    left = sum(1 for t in succs[w] if t in within)
                left -= 1
                pending[w] = left
                if left == 0:
                    attr.add(w)
                    queue.append(w)
    return attr


def _buchi_region(owners, succs: list[list[int]], targets: set[int]) -> set[int]:
    """Player 0's winning region for "visit targets infinitely often".

    Classical recurrence iteration: vertices that cannot even reach the
    targets once are winning for Player 1, and so is their Player-1
    attractor; remove and repeat until every survivor can re-reach.
    """
    preds = _predecessors(succs)
    alive = set(range(len(owners)))
    while True:
        can_reach = _attractor(owners, succs, preds, alive, targets & alive, 0)
        stuck = alive - can_reach
        if not stuck:
            return alive
        alive -= _attractor(owners, succs, preds, alive, stuck, 1)


def buchi_solve(p: ProductArena, targets) -> set[int]:
    """Qualitative Buechi solving on the product arena, weights ignored."""
    succs = [[t for t, _ in row] for row in p.successors]
    return _buchi_region(p.owners, succs, set(targets))


def _counter_graph(p: ProductArena, k: int, reset: frozenset[int]):
    """Gap-counter expansion of the product, bounded by k.

    States are (vertex, accumulated weight since the last reset) plus a
    single absorbing Player-0 sink (id 0) entered when the accumulation
    would pass k.  Arrival at a reset vertex re-enters it at counter 0.
    Only states reachable from the (vertex, 0) starts are built.

    Returns (owners, successor lists, start id per product vertex, target
    ids = reachable reset states at counter 0).
    """
    owners: list[int] = [0]
    succs: list[list[int]] = [[0]]
    index: dict[tuple[int, int], int] = {}
    pending: list[tuple[int, int]] = []

    def state_id(v: int, g: int) -> int:
        sid = index.get((v, g))
        if sid is None:
            sid = len(owners)
            index[(v, g)] = sid
            owners.append(p.owners[v])
            succs.append([])
            pending.append((v, g))
        return sid

    starts = [state_id(u, 0) for u in range(p.n)]
    while pending:
        v, g = pending.pop()
        out = set()
        for t, w in p.successors[v]:
            total = g + w
            if total > k:
                out.add(0)
            elif t in reset:
                out.add(state_id(t, 0))
            else:
                out.add(state_id(t, total))
        succs[index[(v, g)]] = sorted(out)
    targets = {sid for (v, g), sid in index.items() if g == 0 and v in reset}
    return owners, succs, starts, targets


def threshold_buchi_wins(p: ProductArena, k: int) -> set[int]:
    """Product vertices whose limit value is at most k.

    A play has value <= k exactly when its gaps between consecutive goal
    visits (and from the start to the first) all weigh <= k and goal
    visits recur, i.e. when Player 0 wins the Buechi game over the counter
    graph from (vertex, 0).
    """
    owners, succs, starts, targets = _counter_graph(p, k, p.goal)
    region = _buchi_region(owners, succs, targets)
    return {u for u in range(p.n) if starts[u] in region}


def _least_thresholds(n: int, kmax: int, wins) -> list[int]:
    """Per vertex, the least k in [0, kmax] with v in wins(k); else INFINITY.

    Simultaneous bisection: one wins() evaluation splits every still-open
    vertex group, so the memoized searches coincide with per-vertex binary
    search (wins is monotone in k).
    """
    out = [INFINITY] * n

    def resolve(lo: int, hi: int, group: list[int]) -> None:
        if not group:
            return
        if lo == hi:
            for v in group:
                out[v] = lo
            return
        mid = (lo + hi) // 2
        won = wins(mid)
        resolve(lo, mid, [v for v in group if v in won])
        resolve(mid + 1, hi, [v for v in group if v not in won])

    top = wins(kmax)
    resolve(0, kmax, [v for v in range(n) if v in top])
    return out


def oracle_limit_value(p: ProductArena) -> list[int]:
    """Independent limit values by bisection over threshold_buchi_wins.

    Finite values are bounded by (|V|*|Q| + 1) * W, so a vertex outside
    wins(kmax) has value INFINITY.
    """
    kmax = (p.n + 1) * p.base.max_weight
    cache: dict[int, set[int]] = {}

    def wins(k: int) -> set[int]:
        if k not in cache:
            cache[k] = threshold_buchi_wins(p, k)
        return cache[k]

    return _least_thresholds(p.n, kmax, wins)


def oracle_reach_value(p: ProductArena, goal) -> list[int]:
    """Independent reachability values by bisection.

    Player 0 can reach the goal from v within weight k exactly when her
    attractor of the goal-at-counter-0 states contains (v, 0) in the
    counter graph bounded by k; finite values are bounded by |V|*|Q|*W.
    """
    goal = frozenset(goal)
    kmax = p.n * p.base.max_weight
    cache: dict[int, set[int]] = {}

    def wins(k: int) -> set[int]:
        if k not in cache:
            owners, succs, starts, targets = _counter_graph(p, k, goal)
            preds = _predecessors(succs)
            attr = _attractor(
                owners, succs, preds, set(range(len(owners))), targets, 0
            )
            cache[k] = {u for u in range(p.n) if starts[u] in attr}
        return cache[k]

    return _least_thresholds(p.n, kmax, wins)


@dataclass(frozen=True)
class GenParams:
    """Bounds for random instance generation; sizes draw uniformly from
    [1, bound].  The defaults match the small-instance verification corpus.
    """

    max_vertices: int = 6
    max_dfa_states: int = 4
    max_out_degree: int = 3
    max_weight: int = 5
    accepting_fraction: float = 0.5
    seed: int = 0


def _check_params(params: GenParams) -> None:
    issues = []
    for f in fields(params):
        if f.name in ("accepting_fraction", "seed"):
            continue
        if getattr(params, f.name) < 1:
            issues.append(f"{f.name} must be >= 1")
    if not (0 < params.accepting_fraction <= 1):
        issues.append("accepting_fraction must be in (0, 1]")
    if not (0 <= params.seed < 1 << 64):
        issues.append("seed must be an unsigned 64-bit integer")
    if issues:
        raise InputError(issues)


_COLOR_POOL = ("a", "b", "c")


def gen_random_instance(params: GenParams) -> tuple[Arena, Dfa]:
    """A uniformly drawn valid instance, a pure function of the seed.

    Randomness comes from one Mersenne Twister stream seeded with
    params.seed, consumed in a fixed order, so equal params reproduce the
    instance bit for bit.  Every vertex gets at least one outgoing edge,
    the DFA is total, the initial state is never accepting, and each
    non-initial state is accepting with probability accepting_fraction
    (possibly leaving no accepting state at all).
    """
    _check_params(params)
    rng = random.Random(params.seed)
    pool = list(_COLOR_POOL[: rng.randint(1, len(_COLOR_POOL))])

    n = rng.randint(1, params.max_vertices)
    vertices = tuple(
        VertexSpec(name=f"v{i}", owner=rng.randint(0, 1), color=rng.choice(pool))
        for i in range(n)
    )
    edges = []
    for v in range(n):
        degree = rng.randint(1, min(params.max_out_degree, n))
        for t in sorted(rng.sample(range(n), degree)):
            edges.append(EdgeSpec(src=v, dst=t, weight=rng.randint(0, params.max_weight)))
    arena = Arena(vertices=vertices, edges=tuple(edges))

    m = rng.randint(1, params.max_dfa_states)
    states = tuple(f"q{j}" for j in range(m))
    accepting = frozenset(
        j for j in range(1, m) if rng.random() < params.accepting_fraction
    )
    transitions = {
        (q, color): rng.randrange(m) for q in range(m) for color in pool
    }
    dfa = Dfa(
        states=states,
        alphabet=frozenset(pool),
        initial=0,
        accepting=accepting,
        transitions=transitions,
    )

    problems = validate_arena(arena) + validate_dfa(dfa, arena.colors)
    if problems:
        raise InternalInvariantError(
            "generator produced an invalid instance: " + "; ".join(problems)
        )
    return arena, dfa


def gen_sized_instance(
    n_vertices: int,
    n_dfa_states: int,
    out_degree: int,
    max_weight: int,
    n_accepting: int,
    seed: int,
) -> tuple[Arena, Dfa]:
    """A valid instance with exact sizes, for benchmarks and stress tests."""
    if n_vertices < 1 or n_dfa_states < 1:
        raise InputError("sizes must be >= 1")
    if not (0 <= n_accepting < n_dfa_states):
        raise InputError("n_accepting must leave the initial state non-accepting")
    rng = random.Random(seed)
    vertices = tuple(
        VertexSpec(name=f"v{i}", owner=rng.randint(0, 1), color=rng.choice(_COLOR_POOL))
        for i in range(n_vertices)
    )
    edges = []
    for v in range(n_vertices):
        for t in sorted(rng.sample(range(n_vertices), min(out_degree, n_vertices))):
            edges.append(EdgeSpec(src=v, dst=t, weight=rng.randint(0, max_weight)))
    arena = Arena(vertices=vertices, edges=tuple(edges))
    states = tuple(f"q{j}" for j in range(n_dfa_states))
    transitions = {
        (q, color): rng.randrange(n_dfa_states)
        for q in range(n_dfa_states)
        for color in _COLOR_POOL
    }
    dfa = Dfa(
        states=states,
        alphabet=frozenset(_COLOR_POOL),
        initial=0,
        accepting=frozenset(range(n_dfa_states - n_accepting, n_dfa_states)),
        transitions=transitions,
    )
    problems = validate_arena(arena) + validate_dfa(dfa, arena.colors)
    if problems:
        raise InternalInvariantError(
            "generator produced an invalid instance: " + "; ".join(problems)
        )
    return arena, dfa
