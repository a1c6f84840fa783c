"""Compare the compiled kernel against the pure-Python fallback.

Usage: python benchmarks/bench_kernel.py [--vertices N] [--states M]
"""

import argparse
import time

import limitgames as lg
from limitgames import _kernels


def bench(p: lg.ProductArena, backend: str, repeats: int) -> tuple[float, object]:
    times = []
    sol = None
    with _kernels.override(backend):
        for _ in range(repeats):
            t0 = time.perf_counter()
            sol = lg.limit_fixpoint(p)
            times.append(time.perf_counter() - t0)
    return min(times), sol


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--vertices", type=int, default=200)
    ap.add_argument("--states", type=int, default=10)
    ap.add_argument("--out-degree", type=int, default=4)
    ap.add_argument("--max-weight", type=int, default=5)
    ap.add_argument("--accepting", type=int, default=2)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    arena, dfa = lg.gen_sized_instance(
        n_vertices=args.vertices,
        n_dfa_states=args.states,
        out_degree=args.out_degree,
        max_weight=args.max_weight,
        n_accepting=args.accepting,
        seed=args.seed,
    )
    p = lg.build_product(arena, dfa)
    print(
        f"instance: {arena.n} vertices x {dfa.n} DFA states "
        f"= {p.n} product vertices, {len(p.goal)} goal"
    )

    results = {}
    for backend in _kernels.available():
        best, sol = bench(p, backend, args.repeats)
        results[backend] = (best, sol)
        finite = sum(1 for r in sol.ranks if r != lg.INFINITY)
        print(
            f"{backend:>7}: {best * 1000:9.1f} ms  "
            f"(iterations {sol.iterations}, {finite} finite values)"
        )

    if "native" in results and "pure" in results:
        (tn, sn), (tp, sp) = results["native"], results["pure"]
        same = (
            sn.ranks == sp.ranks
            and sn.settling == sp.settling
            and sn.iterations == sp.iterations
        )
        print(f"speedup: {tp / tn:5.1f}x   results identical: {same}")
        if not same:
            raise SystemExit("backend mismatch")


if __name__ == "__main__":
    main()
