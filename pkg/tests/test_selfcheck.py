"""The checkers must pass on correct output and catch corrupted output."""

import dataclasses

import limitgames as lg
from limitgames import selfcheck as sc

INF = lg.INFINITY


class TestCleanInstances:
    def test_worked_examples(self, g1, g2, ginf, db):
        for arena in (g1, g2, ginf):
            assert lg.check_instance(arena, db, opponents=25, seed=1) == []

    def test_corpus_sample(self, corpus):
        for i, (arena, dfa) in enumerate(corpus[:40]):
            assert lg.check_instance(arena, dfa, opponents=10, seed=i) == []


class TestDetection:
    """Each checker must flag a deliberately corrupted solution."""

    def test_limit_oracle(self, p1):
        sol = lg.limit_fixpoint(p1)
        bad = dataclasses.replace(sol, ranks=(4,) + sol.ranks[1:])
        msgs = sc.oracle_mismatches_limit(p1, bad)
        assert msgs and "solver 4, oracle 5" in msgs[0]

    def test_reach_oracle(self, p1):
        sol = lg.reach_fixpoint(p1, p1.goal)
        bad = dataclasses.replace(sol, ranks=(3,) + sol.ranks[1:])
        assert sc.oracle_mismatches_reach(p1, bad)

    def test_regions(self, p1):
        sol = lg.limit_fixpoint(p1)
        bad = dataclasses.replace(sol, ranks=(INF,) + sol.ranks[1:])
        assert sc.region_mismatches(p1, bad)

    def test_bounds(self, p1):
        sol = lg.limit_fixpoint(p1)
        rsol = lg.reach_fixpoint(p1, p1.goal)
        big = dataclasses.replace(sol, ranks=(10**10,) + sol.ranks[1:])
        msgs = sc.bound_violations(p1, big, rsol)
        assert msgs and "exceeds 15" in msgs[0]

    def test_certificate(self, p1):
        rsol = lg.reach_fixpoint(p1, p1.goal)
        bad = dataclasses.replace(rsol, ranks=(3,) + rsol.ranks[1:])
        assert sc.certificate_violations(p1, bad)

    def test_monotonicity(self, p1):
        sol = lg.limit_fixpoint(p1)
        hist = list(sol.history)
        hist[0], hist[1] = hist[1], hist[0]
        bad = dataclasses.replace(sol, history=tuple(hist))
        msgs = sc.monotonicity_violations(p1, bad)
        assert msgs and "decreased" in msgs[0]

    def test_duel(self, p1):
        sol = lg.limit_fixpoint(p1)
        s0 = lg.extract_limit_strategy_p0(p1, sol)
        s1 = lg.extract_limit_strategy_p1(p1, sol)
        bad = dataclasses.replace(sol, ranks=(6, 6, 6, 6))
        assert sc.duel_violations(p1, bad, s0, s1, opponents=5, seed=0)

    def test_memory_bound(self, g1, db, p1):
        sol = lg.limit_fixpoint(p1)
        s0 = lg.extract_limit_strategy_p0(p1, sol)
        # inflate the strategy memory past n*s*f = 2*2*1 = 4
        inflated_labels = tuple(f"m{i}" for i in range(5))
        mem = lg.MemoryStructure(
            labels=inflated_labels,
            init=(0,) * p1.n,
            upd=tuple((0,) * p1.n for _ in range(5)),
        )
        fat = lg.FiniteStateStrategy(
            player=0,
            memory=mem,
            nxt={(v, m): s0.nxt[(v, 0)] for v in range(p1.n) for m in range(5)},
        )
        assert sc.memory_bound_violations(g1, db, fat)


class TestMemoryBoundDegenerate:
    def test_no_accepting_states_uses_dfa_bound(self):
        arena = lg.parse_arena("vertex v 0 a\nedge v v 1\n")
        dead = lg.parse_dfa(
            "states q0 q1\nalphabet a b\ninitial q0\naccepting\n"
            "trans q0 a q1\ntrans q0 b q0\ntrans q1 a q0\ntrans q1 b q1\n"
        )
        p = lg.build_product(arena, dead)
        sol = lg.limit_fixpoint(p)
        s0 = lg.extract_limit_strategy_p0(p, sol)
        # f = 0: the n*s*f bound is vacuous; the checker requires <= s
        assert sc.memory_bound_violations(arena, dead, s0) == []
        flat = lg.compose_strategy(lg.memory_from_dfa(dead, arena), s0)
        assert flat.memory.n <= dead.n

    def test_f0_detects_inflation(self):
        arena = lg.parse_arena("vertex v 0 a\nedge v v 1\n")
        dead = lg.parse_dfa(
            "states q0 q1\nalphabet a b\ninitial q0\naccepting\n"
            "trans q0 a q1\ntrans q0 b q0\ntrans q1 a q0\ntrans q1 b q1\n"
        )
        p = lg.build_product(arena, dead)
        mem = lg.MemoryStructure(
            labels=("a", "b", "c"),
            init=(0,) * p.n,
            upd=tuple((0,) * p.n for _ in range(3)),
        )
        fat = lg.FiniteStateStrategy(
            player=0, memory=mem,
            nxt={(v, m): p.successors[v][0][0] for v in range(p.n) for m in range(3)},
        )
        assert sc.memory_bound_violations(arena, dead, fat)


class TestRandomPositionalStrategy:
    def test_is_legal(self, products):
        import random

        rng = random.Random(7)
        for p in products[:20]:
            for player in (0, 1):
                s = sc.random_positional_strategy(p, player, rng)
                assert lg.strategy_violations(s, p.owners, p.successors) == []
