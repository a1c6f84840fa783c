"""Pure-Python reachability-ranking kernel.

Reference implementation of the hot loop; limitgames._kernels._native is the
compiled twin and must produce bit-identical results.  Both iterate the
min/max ranking operator as full Jacobi sweeps (each sweep reads the previous
ranking only) from the all-INFINITY start until nothing changes.
"""

from __future__ import annotations

INF = (1 << 63) - 1

name = "pure"


def reach_fixpoint_csr(n, owners, indptr, targets, weights, goal_mask):
    """Iterate the reachability operator to its least fixed point.

    Arguments are CSR arrays (numpy int64 / uint8 or plain sequences).
    Returns (ranks, settling, iterations) with plain Python lists; a
    vertex's settling time is the last sweep that changed it (0 when it
    never left INFINITY), and iterations is the first sweep index whose
    ranking equals its predecessor's.
    """
    # int() strips numpy scalar types; keeping the loop on machine ints
    # also keeps the arithmetic on the fast path.
    owners = [int(x) for x in owners]
    indptr = [int(x) for x in indptr]
    targets = [int(x) for x in targets]
    weights = [int(x) for x in weights]
    goal_mask = [int(x) for x in goal_mask]

    ranks = [INF] * n
    settling = [0] * n
    sweep = 0
    while True:
        sweep += 1
        if sweep > n + 2:
            raise RuntimeError("reachability ranking failed to converge")
        new = [0] * n
        changed = False
        for v in range(n):
            if goal_mask[v]:
                nv = 0
            else:
                lo = indptr[v]
                hi = indptr[v + 1]
                if owners[v] == 0:
                    best = INF
                    for i in range(lo, hi):
                        rt = ranks[targets[i]]
                        cand = INF if rt == INF else weights[i] + rt
                        if cand < best:
                            best = cand
                else:
                    best = 0
                    for i in range(lo, hi):
                        rt = ranks[targets[i]]
                        cand = INF if rt == INF else weights[i] + rt
                        if cand > best:
                            best = cand
                old = ranks[v]
                nv = old if old < best else best
            new[v] = nv
            if nv != ranks[v]:
                settling[v] = sweep
                changed = True
        if not changed:
            return ranks, settling, sweep - 1
        ranks = new
