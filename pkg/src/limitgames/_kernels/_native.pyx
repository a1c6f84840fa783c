# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled reachability-ranking kernel.

Bit-identical twin of limitgames._kernels.pure; see that module for the
sweep semantics.  Finite ranks stay below 2**62 (enforced at product
construction), so int64 adds cannot overflow.
"""

import numpy as np

cimport numpy as cnp

cdef cnp.int64_t INF_C = (<cnp.int64_t> 1 << 63) - 1

INF = (1 << 63) - 1

name = "native"


def reach_fixpoint_csr(int n, owners, indptr, targets, weights, goal_mask):
    """See limitgames._kernels.pure.reach_fixpoint_csr."""
    cdef cnp.uint8_t[::1] own = np.ascontiguousarray(owners, dtype=np.uint8)
    cdef cnp.int64_t[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef cnp.int64_t[::1] tgt = np.ascontiguousarray(targets, dtype=np.int64)
    cdef cnp.int64_t[::1] wgt = np.ascontiguousarray(weights, dtype=np.int64)
    cdef cnp.uint8_t[::1] goal = np.ascontiguousarray(goal_mask, dtype=np.uint8)

    ranks_arr = np.full(n, INF, dtype=np.int64)
    new_arr = np.zeros(n, dtype=np.int64)
    settling_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] ranks = ranks_arr
    cdef cnp.int64_t[::1] new = new_arr
    cdef cnp.int64_t[::1] settling = settling_arr

    cdef cnp.int64_t sweep = 0
    cdef cnp.int64_t best, cand, rt, old, nv
    cdef cnp.int64_t i, lo, hi
    cdef int v, changed

    while True:
        sweep += 1
        if sweep > n + 2:
            raise RuntimeError("reachability ranking failed to converge")
        changed = 0
        for v in range(n):
            if goal[v]:
                nv = 0
            else:
                lo = ptr[v]
                hi = ptr[v + 1]
                if own[v] == 0:
                    best = INF_C
                    for i in range(lo, hi):
                        rt = ranks[tgt[i]]
                        cand = INF_C if rt == INF_C else wgt[i] + rt
                        if cand < best:
                            best = cand
                else:
                    best = 0
                    for i in range(lo, hi):
                        rt = ranks[tgt[i]]
                        cand = INF_C if rt == INF_C else wgt[i] + rt
                        if cand > best:
                            best = cand
                old = ranks[v]
                nv = old if old < best else best
            new[v] = nv
            if nv != ranks[v]:
                settling[v] = sweep
                changed = 1
        if not changed:
            return ranks_arr.tolist(), settling_arr.tolist(), sweep - 1
        ranks_arr, new_arr = new_arr, ranks_arr
        ranks = ranks_arr
        new = new_arr
