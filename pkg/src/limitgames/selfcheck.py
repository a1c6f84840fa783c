"""Cross-checks between the fixed-point solvers, the threshold oracles,
and the strategy extractors.

Every checker returns a list of violation messages (empty = clean) so the
CLI verify command and the test suite can aggregate them.  These checks
are the package's defense against a consistent-but-wrong solver: the
oracles compute values by a different route entirely, the duels replay
the extracted strategies move by move, and the certificate audits assert
the structural facts the correctness arguments rest on.
"""

from __future__ import annotations

import random

from .core import (
    INFINITY,
    Arena,
    Dfa,
    FiniteStateStrategy,
    MemoryStructure,
    is_finite,
    rank_add,
    rank_text,
    strategy_violations,
)
from .limit import (
    LimitSolution,
    extract_limit_strategy_p0,
    extract_limit_strategy_p1,
    limit_fixpoint,
    winning_regions,
)
from .oracle import (
    buchi_solve,
    eval_limit_value,
    eval_reach_value,
    oracle_limit_value,
    oracle_reach_value,
    simulate_duel,
)
from .product import ProductArena, build_product, compose_strategy, memory_from_dfa
from .reach import ReachSolution, extract_reach_strategies, reach_fixpoint, reach_step


def oracle_mismatches_limit(p: ProductArena, sol: LimitSolution) -> list[str]:
    """Fixed-point limit ranks vs the threshold-Buechi bisection oracle."""
    expected = oracle_limit_value(p)
    return [
        f"limit value mismatch at {p.vertex_name(v)}: "
        f"solver {rank_text(sol.ranks[v])}, oracle {rank_text(expected[v])}"
        for v in range(p.n)
        if sol.ranks[v] != expected[v]
    ]


def oracle_mismatches_reach(p: ProductArena, sol: ReachSolution) -> list[str]:
    """Fixed-point reach ranks vs the counter-graph attractor oracle."""
    expected = oracle_reach_value(p, sol.goal)
    return [
        f"reach value mismatch at {p.vertex_name(v)}: "
        f"solver {rank_text(sol.ranks[v])}, oracle {rank_text(expected[v])}"
        for v in range(p.n)
        if sol.ranks[v] != expected[v]
    ]


def region_mismatches(p: ProductArena, sol: LimitSolution) -> list[str]:
    """Finite-value regions vs the qualitative Buechi solver's regions."""
    out = []
    region = buchi_solve(p, p.goal)
    for v in range(p.n):
        if (sol.ranks[v] != INFINITY) != (v in region):
            out.append(
                f"product region mismatch at {p.vertex_name(v)}: "
                f"rank {rank_text(sol.ranks[v])}, "
                f"{'in' if v in region else 'not in'} the Buechi region"
            )
    w0, w1 = winning_regions(p, sol)
    projected = {v for v in range(p.base.n) if p.entry(v) in region}
    if w0 != projected:
        out.append(f"base W0 {sorted(w0)} differs from Buechi projection {sorted(projected)}")
    if w1 != set(range(p.base.n)) - projected:
        out.append(f"base W1 {sorted(w1)} is not the complement of W0")
    return out


def bound_violations(
    p: ProductArena, sol: LimitSolution, rsol: ReachSolution
) -> list[str]:
    """Iteration-count and value bounds, on the fixed points and every
    intermediate ranking the solver produced."""
    out = []
    if sol.iterations > len(p.goal) + 1:
        out.append(
            f"limit iterations {sol.iterations} exceed |F|+1 = {len(p.goal) + 1}"
        )
    if rsol.iterations > p.n + 1:
        out.append(f"reach iterations {rsol.iterations} exceed |V||Q|+1 = {p.n + 1}")
    bound = (p.n + 1) * p.base.max_weight

    def audit(tag: str, ranks) -> None:
        for v, r in enumerate(ranks):
            if is_finite(r) and r > bound:
                out.append(f"{tag}: finite value {r} at index {v} exceeds {bound}")

    audit("reach fixpoint", rsol.ranks)
    for j, (ranks, hierarchy) in enumerate(sol.history):
        audit(f"limit ranking {j}", ranks)
        audit(f"limit ranking {j} thresholds", hierarchy.thresholds)
        for h in range(hierarchy.k):
            if hierarchy.inner[h].iterations > p.n + 1:
                out.append(
                    f"limit ranking {j} level {h + 1}: reach iterations "
                    f"{hierarchy.inner[h].iterations} exceed {p.n + 1}"
                )
            audit(f"limit ranking {j} level {h + 1} ranks", hierarchy.inner[h].ranks)
            audit(f"limit ranking {j} level {h + 1} completed", hierarchy.completed[h])
    audit("limit fixpoint", sol.ranks)
    return out


def certificate_violations(p: ProductArena, sol: ReachSolution) -> list[str]:
    """Structural facts of the reach fixed point (ranks + settling times).

    1. infinite rank iff settling time 0
    2. goal vertices: rank 0, settling time 1
    3. Player-0 non-goal: rank <= weight + successor rank everywhere, with
       an equality witness; finite ranks also have a witness that settled
       exactly one sweep earlier
    4. Player-1 non-goal: rank >= weight + successor rank everywhere, with
       an equality witness
    5. Player-1 non-goal: every equal-finite-rank successor settled earlier
    """
    out = []
    r, ts = sol.ranks, sol.settling
    for v in range(p.n):
        name = p.vertex_name(v)
        if (r[v] == INFINITY) != (ts[v] == 0):
            out.append(
                f"item 1 at {name}: rank {rank_text(r[v])}, settling {ts[v]}"
            )
        if v in sol.goal:
            if r[v] != 0 or ts[v] != 1:
                out.append(
                    f"item 2 at {name}: rank {rank_text(r[v])}, settling {ts[v]}"
                )
            continue
        succ = p.successors[v]
        through = [rank_add(r[t], w) for t, w in succ]
        if p.owners[v] == 0:
            if any(r[v] > x for x in through):
                out.append(f"item 3 at {name}: rank above a successor option")
            if all(r[v] != x for x in through):
                out.append(f"item 3 at {name}: no equality witness")
            if r[v] != INFINITY and not any(
                r[v] == x and ts[v] == ts[t] + 1
                for x, (t, _) in zip(through, succ)
            ):
                out.append(f"item 3 at {name}: no settling-time witness")
        else:
            if any(r[v] < x for x in through):
                out.append(f"item 4 at {name}: rank below a successor option")
            if all(r[v] != x for x in through):
                out.append(f"item 4 at {name}: no equality witness")
            for t, _ in succ:
                if r[t] == r[v] and r[v] != INFINITY and ts[v] <= ts[t]:
                    out.append(
                        f"item 5 at {name}: equal-rank successor "
                        f"{p.vertex_name(t)} settled at {ts[t]} >= {ts[v]}"
                    )
    return out


def monotonicity_violations(p: ProductArena, sol: LimitSolution) -> list[str]:
    """Monotone shape of the iterations.

    The limit sequence never decreases anywhere; the reach sequence
    (recomputed here by pure ranking steps, which also cross-checks the
    kernel) never increases anywhere; and within each hierarchy, growing
    the goal level can only shrink the reach ranks.
    """
    out = []
    for j in range(len(sol.history) - 1):
        a, b = sol.history[j][0], sol.history[j + 1][0]
        for v in range(p.n):
            if b[v] < a[v]:
                out.append(
                    f"limit ranking decreased at {p.vertex_name(v)} "
                    f"between steps {j} and {j + 1}"
                )
    ranks = [INFINITY] * p.n
    fixed = reach_fixpoint(p, p.goal)
    for step in range(p.n + 2):
        new = reach_step(p, p.goal, ranks)
        for v in range(p.n):
            if new[v] > ranks[v]:
                out.append(
                    f"reach ranking increased at {p.vertex_name(v)} in sweep {step + 1}"
                )
        if new == ranks:
            break
        ranks = new
    else:
        out.append(f"pure reach iteration unsettled after {p.n + 2} sweeps")
    if tuple(ranks) != fixed.ranks:
        out.append("pure reach iteration disagrees with the kernel fixed point")
    for j, (_, hierarchy) in enumerate(sol.history):
        for h in range(hierarchy.k - 1):
            if not hierarchy.levels[h] <= hierarchy.levels[h + 1]:
                out.append(f"ranking {j}: level {h + 1} not nested in level {h + 2}")
            low = hierarchy.inner[h].ranks
            high = hierarchy.inner[h + 1].ranks
            for v in range(p.n):
                if high[v] > low[v]:
                    out.append(
                        f"ranking {j}: larger goal raised the reach rank "
                        f"at {p.vertex_name(v)} (level {h + 2} vs {h + 1})"
                    )
    return out


def random_positional_strategy(
    p: ProductArena, player: int, rng: random.Random
) -> FiniteStateStrategy:
    """A memoryless strategy choosing one fixed random successor per vertex."""
    memory = MemoryStructure(labels=("-",), init=(0,) * p.n, upd=((0,) * p.n,))
    nxt = {
        (v, 0): rng.choice(p.successors[v])[0]
        for v in range(p.n)
        if p.owners[v] == player
    }
    return FiniteStateStrategy(player=player, memory=memory, nxt=nxt)


def _sandwich(
    p: ProductArena,
    expected,
    s0: FiniteStateStrategy,
    s1: FiniteStateStrategy,
    evaluate,
    opponents: int,
    seed: int,
    tag: str,
) -> list[str]:
    out = []
    entries = [p.entry(v) for v in range(p.base.n)]
    for v, start in enumerate(entries):
        got = evaluate(p, simulate_duel(p, s0, s1, start))
        if got != expected[start]:
            out.append(
                f"{tag} duel from {p.base.name(v)}: lasso value {rank_text(got)}, "
                f"rank {rank_text(expected[start])}"
            )
    rng = random.Random(seed)
    for b in range(opponents):
        adversary = random_positional_strategy(p, 1, rng)
        for v, start in enumerate(entries):
            got = evaluate(p, simulate_duel(p, s0, adversary, start))
            if got > expected[start]:
                out.append(
                    f"{tag} Player 0 beaten from {p.base.name(v)} by random "
                    f"opponent {b}: {rank_text(got)} > {rank_text(expected[start])}"
                )
    for b in range(opponents):
        weakling = random_positional_strategy(p, 0, rng)
        for v, start in enumerate(entries):
            got = evaluate(p, simulate_duel(p, weakling, s1, start))
            if got < expected[start]:
                out.append(
                    f"{tag} Player 1 undercut from {p.base.name(v)} by random "
                    f"opponent {b}: {rank_text(got)} < {rank_text(expected[start])}"
                )
    return out


def duel_violations(
    p: ProductArena,
    sol: LimitSolution,
    s0: FiniteStateStrategy,
    s1: FiniteStateStrategy,
    opponents: int = 50,
    seed: int = 0,
) -> list[str]:
    """Optimality sandwich for the limit strategies: the duel lasso's value
    equals the rank at every entry point, random Player-1 play never pushes
    the Player-0 strategy above it, random Player-0 play never pulls the
    Player-1 strategy below it."""
    return _sandwich(
        p, sol.ranks, s0, s1, eval_limit_value, opponents, seed, "limit"
    )


def reach_duel_violations(
    p: ProductArena, rsol: ReachSolution, opponents: int = 50, seed: int = 0
) -> list[str]:
    """Same sandwich for the positional reachability strategies."""
    s0, s1 = extract_reach_strategies(p, rsol)
    return _sandwich(
        p, rsol.ranks, s0, s1, eval_reach_value, opponents, seed, "reach"
    )


def memory_bound_violations(
    arena: Arena, dfa: Dfa, s0: FiniteStateStrategy
) -> list[str]:
    """Flatten the Player-0 strategy onto the base arena and check its
    memory against |V| * s * f (s DFA states, f accepting states).

    With no accepting state the bound degenerates to 0, which no strategy
    can meet; the level hierarchy then collapses to a single state, so the
    flattened memory is exactly s and that is what is required instead.
    """
    out = []
    flat = compose_strategy(memory_from_dfa(dfa, arena), s0)
    out += strategy_violations(flat, arena.owners, arena.successors)
    f = len(dfa.accepting)
    size = flat.memory.n
    if f >= 1:
        bound = arena.n * dfa.n * f
        if size > bound:
            out.append(f"flattened memory {size} exceeds n*s*f = {bound}")
    elif size > dfa.n:
        out.append(f"flattened memory {size} exceeds s = {dfa.n} with no accepting state")
    return out


def check_instance(
    arena: Arena, dfa: Dfa, opponents: int = 50, seed: int = 0
) -> list[str]:
    """Run every checker against one instance; empty result = clean."""
    p = build_product(arena, dfa)
    sol = limit_fixpoint(p)
    rsol = reach_fixpoint(p, p.goal)
    s0 = extract_limit_strategy_p0(p, sol)
    s1 = extract_limit_strategy_p1(p, sol)
    out = []
    for s in (s0, s1):
        out += strategy_violations(s, p.owners, p.successors)
    out += oracle_mismatches_limit(p, sol)
    out += oracle_mismatches_reach(p, rsol)
    out += region_mismatches(p, sol)
    out += bound_violations(p, sol, rsol)
    out += certificate_violations(p, rsol)
    out += monotonicity_violations(p, sol)
    out += duel_violations(p, sol, s0, s1, opponents, seed)
    out += reach_duel_violations(p, rsol, opponents, seed)
    out += memory_bound_violations(arena, dfa, s0)
    return out
