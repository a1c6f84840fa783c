"""Brute-force lasso evaluators: the second, independent route for play
values.

Both functions unroll the lasso far past its period and apply the value
definitions literally, position by position.  The library evaluators use
the gap-set reduction instead; the test suite requires exact agreement.
"""

from limitgames import INFINITY, Lasso, ProductArena

UNROLL_STEPS = 1000


def _steps_for(lasso: Lasso) -> int:
    # Enough unrolling that every gap that starts inside the first full
    # period closes inside the window, whatever the lasso size.
    return max(UNROLL_STEPS, len(lasso.stem) + 4 * len(lasso.cycle) + 2)


def unrolled_limit_value(p: ProductArena, lasso: Lasso) -> int:
    """sup over positions j of (weight from j to the next accepted
    position strictly after j), evaluated on a long finite unrolling."""
    goal = set(p.goal)
    if not any(v in goal for v in lasso.cycle):
        return INFINITY
    steps = _steps_for(lasso)
    seq = lasso.unroll(steps)
    weights = {
        (v, t): w for v in range(p.n) for t, w in p.successors[v]
    }
    # The play is ultimately periodic, so the supremum is attained by some
    # gap starting within stem + one period; scanning two keeps a margin.
    horizon = min(steps, len(lasso.stem) + 2 * len(lasso.cycle))
    best = 0
    for j in range(horizon):
        gap = 0
        for jp in range(j + 1, steps):
            gap += weights[(seq[jp - 1], seq[jp])]
            if seq[jp] in goal:
                break
        else:
            raise AssertionError("unrolling window too short")
        best = max(best, gap)
    return best


def unrolled_reach_value(p: ProductArena, lasso: Lasso) -> int:
    """Weight from position 0 to the first goal position (0 qualifies),
    evaluated on a long finite unrolling."""
    goal = set(p.goal)
    steps = _steps_for(lasso)
    seq = lasso.unroll(steps)
    weights = {
        (v, t): w for v in range(p.n) for t, w in p.successors[v]
    }
    if seq[0] in goal:
        return 0
    total = 0
    for j in range(1, steps):
        total += weights[(seq[j - 1], seq[j])]
        if seq[j] in goal:
            return total
    return INFINITY
