"""File formats: parsers, serializers, round-trips, DOT export."""

import pytest

import limitgames as lg
from conftest import INSTANCE_DIR

G1_CANONICAL = (
    "vertex v0 0 a\n"
    "vertex v1 0 b\n"
    "edge v0 v1 2\n"
    "edge v1 v0 3\n"
)


class TestParseArena:
    def test_shipped_instances(self):
        for name in ("g1.arena", "g2.arena", "ginf.arena"):
            arena = lg.parse_arena((INSTANCE_DIR / name).read_text())
            assert lg.validate_arena(arena) == []

    def test_comments_and_blanks_ignored(self):
        text = "# header\n\nvertex v0 0 a  # inline\n\nedge v0 v0 1\n"
        arena = lg.parse_arena(text)
        assert arena.n == 1
        assert arena.edges == (lg.EdgeSpec(0, 0, 1),)

    @pytest.mark.parametrize(
        "text,needle",
        [
            ("vertex v0 0\nedge v0 v0 1\n", "vertex takes <id> <0|1> <color>"),
            ("vertex v0 0 a\nvertex v0 1 b\nedge v0 v0 1\n", "duplicate vertex 'v0'"),
            ("vertex v0 3 a\nedge v0 v0 1\n", "owner must be 0 or 1, got '3'"),
            ("vertex v0 0 a\nedge v0 v0\n", "edge takes <src> <dst> <weight>"),
            ("vertex v0 0 a\nedge v0 v9 1\n", "unknown vertex 'v9'"),
            ("vertex v0 0 a\nedge v0 v0 x\n", "weight must be an integer, got 'x'"),
            ("vertex v0 0 a\nedge v0 v0 -2\n", "negative weight -2"),
            ("vertex v0 0 a\nedge v0 v0 1\nedge v0 v0 2\n", "duplicate edge"),
            ("flurb v0\n", "unknown directive 'flurb'"),
            ("vertex v0 0 a\n", "no outgoing edge"),
        ],
    )
    def test_errors(self, text, needle):
        with pytest.raises(lg.InputError) as exc:
            lg.parse_arena(text)
        assert any(needle in m for m in exc.value.messages)

    def test_errors_carry_line_numbers(self):
        with pytest.raises(lg.InputError) as exc:
            lg.parse_arena("vertex v0 0 a\nedge v0 v9 1\n")
        assert any(m.startswith("line 2:") for m in exc.value.messages)


class TestSerializeArena:
    def test_g1_byte_exact(self, g1):
        assert lg.serialize_arena(g1) == G1_CANONICAL

    def test_round_trip(self, g1, g2, ginf):
        for arena in (g1, g2, ginf):
            assert lg.parse_arena(lg.serialize_arena(arena)) == arena

    def test_round_trip_corpus(self, corpus):
        for arena, dfa in corpus[:60]:
            assert lg.parse_arena(lg.serialize_arena(arena)) == arena
            assert lg.parse_dfa(lg.serialize_dfa(dfa)) == dfa


class TestParseDfa:
    def test_shipped_dfa_without_states_line(self, db):
        assert db.states == ("q0", "qb")
        assert db.initial == 0
        assert db.accepting == frozenset({1})
        assert db.alphabet == frozenset({"a", "b"})

    @pytest.mark.parametrize(
        "text,needle",
        [
            ("initial q0\nstates q0\nalphabet a\ntrans q0 a q0\n", "states must come first"),
            ("states q0 q0\nalphabet a\ninitial q0\ntrans q0 a q0\n", "duplicate state 'q0'"),
            ("alphabet a\nalphabet b\ninitial q0\ntrans q0 a q0\n", "duplicate alphabet line"),
            ("alphabet\ninitial q0\ntrans q0 a q0\n", "alphabet needs at least one color"),
            ("alphabet a\ninitial q0 q1\ntrans q0 a q0\n", "initial takes one state"),
            ("alphabet a\ninitial q0\ninitial q0\ntrans q0 a q0\n", "duplicate initial line"),
            (
                "alphabet a\ninitial q0\naccepting q1\naccepting q1\ntrans q0 a q0\n",
                "duplicate accepting line",
            ),
            ("alphabet a\ninitial q0\ntrans q0 a\n", "trans takes <src> <color> <dst>"),
            (
                "alphabet a\ninitial q0\ntrans q0 a q0\ntrans q0 a q1\n",
                "nondeterministic",
            ),
            ("alphabet a\ninitial q0\ntrans q0 z q0\n", "color 'z' not in the alphabet"),
            ("alphabet a\ntrans q0 a q0\n", "missing initial line"),
            ("initial q0\ntrans q0 a q0\n", "missing alphabet line"),
            ("alphabet a\ninitial q0\nflurb\n", "unknown directive 'flurb'"),
        ],
    )
    def test_errors(self, text, needle):
        with pytest.raises(lg.InputError) as exc:
            lg.parse_dfa(text)
        assert any(needle in m for m in exc.value.messages)

    def test_states_line_after_alphabet_is_fine(self):
        d = lg.parse_dfa(
            "alphabet a\nstates q1 q0\ninitial q0\naccepting q1\n"
            "trans q0 a q1\ntrans q1 a q1\n"
        )
        assert d.states == ("q1", "q0")
        assert d.initial == 1

    def test_validator_runs_after_parse(self):
        # parses fine, but q1 lacks transitions: the validator rejects it
        with pytest.raises(lg.InputError) as exc:
            lg.parse_dfa("alphabet a\ninitial q0\ntrans q0 a q1\n")
        assert any("missing transition" in m for m in exc.value.messages)

    def test_initial_accepting_rejected(self):
        with pytest.raises(lg.InputError) as exc:
            lg.parse_dfa("alphabet a\ninitial q0\naccepting q0\ntrans q0 a q0\n")
        assert any("empty color word" in m for m in exc.value.messages)


class TestSerializeDfa:
    def test_round_trip_preserves_state_order(self, db):
        text = lg.serialize_dfa(db)
        assert text.startswith("states q0 qb\n")
        assert lg.parse_dfa(text) == db

    def test_no_accepting_states(self):
        d = lg.parse_dfa("alphabet a\ninitial q0\naccepting\ntrans q0 a q0\n")
        assert d.accepting == frozenset()
        text = lg.serialize_dfa(d)
        assert "accepting\n" in text
        assert lg.parse_dfa(text) == d

    def test_transitions_sorted(self, db):
        lines = lg.serialize_dfa(db).splitlines()
        trans = [l for l in lines if l.startswith("trans")]
        assert trans == sorted(trans)


class TestStrategyFormat:
    def test_round_trip_limit_strategies(self, corpus):
        for arena, dfa in corpus[:30]:
            p = lg.build_product(arena, dfa)
            sol = lg.limit_fixpoint(p)
            s0 = lg.extract_limit_strategy_p0(p, sol)
            flat = lg.compose_strategy(lg.memory_from_dfa(dfa, arena), s0)
            text = lg.serialize_strategy(flat)
            back = lg.parse_strategy(text)
            assert back.player == flat.player
            assert back.memory == flat.memory
            assert dict(back.nxt) == dict(flat.nxt)

    def test_parse_errors(self):
        with pytest.raises(lg.InputError) as exc:
            lg.parse_strategy("memory m\ninit 0 m\nupd m 0 m\n")
        assert any("missing strategy line" in m for m in exc.value.messages)
        with pytest.raises(lg.InputError) as exc:
            lg.parse_strategy("strategy 0\ninit 0 x\n")
        assert any("missing memory line" in m for m in exc.value.messages)
        with pytest.raises(lg.InputError) as exc:
            lg.parse_strategy("strategy 0\nmemory m\ninit 0 m\n")
        assert any("missing upd" in m for m in exc.value.messages)
        with pytest.raises(lg.InputError) as exc:
            lg.parse_strategy(
                "strategy 0\nmemory m\ninit 0 m\nupd m 0 m\nnxt 0 zz 0\n"
            )
        assert any("unknown memory label 'zz'" in m for m in exc.value.messages)


class TestExportDot:
    def test_base_arena(self, g2):
        dot = lg.export_dot(g2)
        assert dot.count("ellipse") >= 1  # Player 0 vertices
        assert dot.count("box") >= 1  # Player 1 vertices
        assert 'label="4"' in dot  # the heavy edge
        assert dot.strip().endswith("}")

    def test_product_goal_double_border(self, p1):
        dot = lg.export_dot(p1)
        assert dot.count("peripheries=2") == len(p1.goal)
        assert "(v1,qb)" in dot

    def test_highlight(self, p1):
        dot = lg.export_dot(p1, highlight={(0, 3), (3, 0)})
        assert dot.count("style=bold") == 2

    def test_quoting(self):
        a = lg.parse_arena('vertex v"0 0 a\nedge v"0 v"0 1\n')
        dot = lg.export_dot(a)
        assert dot.startswith("digraph")
        assert '\\"' in dot
