"""Command-line entry points.

Exit codes: 0 success, 1 bad input (files, flags, lassos), 2 internal
invariant failures (solver bugs, oracle mismatches found by verify).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import _kernels
from .core import (
    INFINITY,
    Arena,
    Dfa,
    FiniteStateStrategy,
    InputError,
    InternalInvariantError,
    Lasso,
    rank_text,
)
from .formats import export_dot, parse_arena, parse_dfa, serialize_arena, serialize_dfa
from .limit import (
    extract_limit_strategy_p0,
    extract_limit_strategy_p1,
    limit_fixpoint,
    winning_regions,
)
from .oracle import GenParams, eval_limit_value, eval_reach_value, gen_random_instance
from .product import build_product, compose_strategy, extend_lasso, memory_from_dfa
from .reach import extract_reach_strategies, reach_fixpoint
from .selfcheck import check_instance


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}error: {message}")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _located(path: str, exc: InputError) -> InputError:
    return InputError([f"{path}: {m}" for m in exc.messages])


def _load_instance(arena_path: str, dfa_path: str) -> tuple[Arena, Dfa]:
    arena_text = _read(arena_path)
    dfa_text = _read(dfa_path)
    try:
        arena = parse_arena(arena_text)
    except InputError as exc:
        raise _located(arena_path, exc) from exc
    try:
        dfa = parse_dfa(dfa_text)
    except InputError as exc:
        raise _located(dfa_path, exc) from exc
    return arena, dfa


def _strategy_json(arena: Arena, strategy: FiniteStateStrategy) -> dict:
    mem = strategy.memory
    return {
        "player": strategy.player,
        "memory_size": mem.n,
        "labels": list(mem.labels),
        "init": {arena.name(v): mem.labels[m] for v, m in enumerate(mem.init)},
        "upd": [
            {"memory": mem.labels[m], "vertex": arena.name(v), "next": mem.labels[m2]}
            for m, row in enumerate(mem.upd)
            for v, m2 in enumerate(row)
        ],
        "nxt": [
            {"vertex": arena.name(v), "memory": mem.labels[m], "move": arena.name(t)}
            for (v, m), t in sorted(strategy.nxt.items())
        ],
    }


def _print_strategy(arena: Arena, strategy: FiniteStateStrategy) -> None:
    mem = strategy.memory
    print(f"strategy player {strategy.player}: {mem.n} memory states")
    for (v, m), t in sorted(strategy.nxt.items()):
        print(f"  {arena.name(v)} [{mem.labels[m]}] -> {arena.name(t)}")


def _report(
    arena: Arena,
    values: dict[int, int],
    strategies: tuple[FiniteStateStrategy, FiniteStateStrategy] | None,
    diagnostics: dict,
    as_json: bool,
    only_vertex: int | None,
) -> None:
    rows = [only_vertex] if only_vertex is not None else list(range(arena.n))
    w0 = [v for v in rows if values[v] != INFINITY]
    w1 = [v for v in rows if values[v] == INFINITY]
    if as_json:
        payload = {
            "values": {
                arena.name(v): values[v] if values[v] != INFINITY else "inf"
                for v in rows
            },
            "regions": {
                "W0": [arena.name(v) for v in w0],
                "W1": [arena.name(v) for v in w1],
            },
            "strategies": None
            if strategies is None
            else {
                "player0": _strategy_json(arena, strategies[0]),
                "player1": _strategy_json(arena, strategies[1]),
            },
            "diagnostics": diagnostics,
        }
        print(json.dumps(payload, indent=2))
        return
    width = max(len(arena.name(v)) for v in rows)
    for v in rows:
        region = "W0" if values[v] != INFINITY else "W1"
        print(f"{arena.name(v):<{width}}  value={rank_text(values[v])}  region={region}")
    if strategies is not None:
        for s in strategies:
            _print_strategy(arena, s)
    print(
        "# "
        + ", ".join(
            f"{key} {value}" for key, value in diagnostics.items()
        )
    )


def _resolve_vertex(arena: Arena, name: str | None) -> int | None:
    if name is None:
        return None
    if name not in arena.index_of:
        raise InputError(f"unknown vertex {name!r}")
    return arena.index_of[name]


def _cmd_solve(args) -> int:
    arena, dfa = _load_instance(args.arena, args.dfa)
    p = build_product(arena, dfa)
    started = time.perf_counter()
    sol = limit_fixpoint(p)
    wall = time.perf_counter() - started
    values = {v: sol.ranks[p.entry(v)] for v in range(arena.n)}
    strategies = None
    highlight = None
    if args.strategies:
        s0 = extract_limit_strategy_p0(p, sol)
        s1 = extract_limit_strategy_p1(p, sol)
        memory = memory_from_dfa(dfa, arena)
        strategies = (compose_strategy(memory, s0), compose_strategy(memory, s1))
        highlight = {(v, t) for (v, _), t in s0.nxt.items()}
    if args.dot:
        _write(args.dot, export_dot(p, highlight))
    diagnostics = {
        "product_vertices": p.n,
        "goal_vertices": len(p.goal),
        "limit_iterations": sol.iterations,
        "kernel": _kernels.active_name(),
        "wall_time_s": round(wall, 6),
    }
    _report(
        arena, values, strategies, diagnostics, args.json,
        _resolve_vertex(arena, args.vertex),
    )
    return 0


def _cmd_solve_reach(args) -> int:
    arena, dfa = _load_instance(args.arena, args.dfa)
    p = build_product(arena, dfa)
    started = time.perf_counter()
    rsol = reach_fixpoint(p, p.goal)
    wall = time.perf_counter() - started
    values = {v: rsol.ranks[p.entry(v)] for v in range(arena.n)}
    s0, s1 = extract_reach_strategies(p, rsol)
    memory = memory_from_dfa(dfa, arena)
    strategies = (compose_strategy(memory, s0), compose_strategy(memory, s1))
    diagnostics = {
        "product_vertices": p.n,
        "goal_vertices": len(p.goal),
        "reach_iterations": rsol.iterations,
        "kernel": _kernels.active_name(),
        "wall_time_s": round(wall, 6),
    }
    _report(arena, values, strategies, diagnostics, args.json, None)
    return 0


def _parse_vertex_list(arena: Arena, text: str, what: str) -> tuple[int, ...]:
    if not text:
        return ()
    out = []
    for token in text.split(","):
        token = token.strip()
        if token not in arena.index_of:
            raise InputError(f"{what}: unknown vertex {token!r}")
        out.append(arena.index_of[token])
    return tuple(out)


def _cmd_eval(args) -> int:
    arena, dfa = _load_instance(args.arena, args.dfa)
    p = build_product(arena, dfa)
    stem = _parse_vertex_list(arena, args.stem, "stem")
    cycle = _parse_vertex_list(arena, args.cycle, "cycle")
    lasso = extend_lasso(p, Lasso(stem=stem, cycle=cycle))
    value = (
        eval_reach_value(p, lasso) if args.reach else eval_limit_value(p, lasso)
    )
    print(rank_text(value))
    return 0


def _cmd_verify(args) -> int:
    clean = 0
    failures = []
    for i in range(args.trials):
        params = GenParams(
            max_vertices=args.max_vertices,
            max_dfa_states=args.max_states,
            max_weight=args.max_weight,
            seed=args.seed + i,
        )
        arena, dfa = gen_random_instance(params)
        problems = check_instance(arena, dfa, opponents=50, seed=args.seed + i)
        if problems:
            failures.append((params.seed, problems))
            for message in problems:
                print(f"seed {params.seed}: {message}", file=sys.stderr)
        else:
            clean += 1
    print(f"{clean}/{args.trials} oracle matches")
    if failures:
        print(f"invariant violations on {len(failures)} instance(s)", file=sys.stderr)
        return 2
    print("all invariant checks passed")
    return 0


def _cmd_gen(args) -> int:
    params = GenParams(
        max_vertices=args.max_vertices,
        max_dfa_states=args.max_states,
        max_weight=args.max_weight,
        seed=args.seed,
    )
    arena, dfa = gen_random_instance(params)
    _write(args.out_arena, serialize_arena(arena))
    _write(args.out_dfa, serialize_dfa(dfa))
    print(
        f"wrote {args.out_arena} ({arena.n} vertices) and "
        f"{args.out_dfa} ({dfa.n} states)"
    )
    return 0


def _add_instance_flags(sub) -> None:
    sub.add_argument("--arena", required=True, help="arena file")
    sub.add_argument("--dfa", required=True, help="DFA file")


def _add_bound_flags(sub) -> None:
    sub.add_argument("--max-vertices", type=int, default=6)
    sub.add_argument("--max-states", type=int, default=4)
    sub.add_argument("--max-weight", type=int, default=5)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="limitgames", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    solve = subs.add_parser("solve", help="optimal limit values, regions, strategies")
    _add_instance_flags(solve)
    solve.add_argument("--vertex", help="report a single base vertex")
    solve.add_argument("--strategies", action="store_true", help="include strategy tables")
    solve.add_argument("--json", action="store_true", help="machine-readable output")
    solve.add_argument("--dot", help="write a DOT rendering of the product arena")
    solve.set_defaults(func=_cmd_solve)

    reach = subs.add_parser("solve-reach", help="reachability values and strategies")
    _add_instance_flags(reach)
    reach.add_argument("--json", action="store_true")
    reach.set_defaults(func=_cmd_solve_reach)

    ev = subs.add_parser("eval", help="value of an ultimately periodic play")
    _add_instance_flags(ev)
    ev.add_argument("--stem", default="", help="comma-separated vertex ids (may be empty)")
    ev.add_argument("--cycle", required=True, help="comma-separated vertex ids")
    ev.add_argument("--reach", action="store_true", help="reachability value instead of limit")
    ev.set_defaults(func=_cmd_eval)

    verify = subs.add_parser("verify", help="cross-check solver against the oracles")
    verify.add_argument("--trials", type=int, required=True)
    verify.add_argument("--seed", type=int, required=True)
    _add_bound_flags(verify)
    verify.set_defaults(func=_cmd_verify)

    gen = subs.add_parser("gen", help="generate a random instance")
    gen.add_argument("--seed", type=int, required=True)
    _add_bound_flags(gen)
    gen.add_argument("--out-arena", required=True)
    gen.add_argument("--out-dfa", required=True)
    gen.set_defaults(func=_cmd_gen)
    return parser


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else int(exc.code)
    try:
        return args.func(args)
    except InputError as exc:
        for message in exc.messages:
            print(f"error: {message}", file=sys.stderr)
        return 1
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
