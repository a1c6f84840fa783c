"""Core types for weighted limit games.

An arena is a finite two-player game graph with nonnegative integer edge
weights and a color per vertex.  A deterministic finite automaton over the
colors defines the winning condition: Player 0 tries to make accepted color
prefixes recur while keeping the weight between consecutive accepted
prefixes small, Player 1 tries to make that weight large (or starve the
play of accepted prefixes altogether).

Ranks are extended naturals.  Finite ranks are machine integers; INFINITY
is the int64 sentinel 2**63 - 1, which orders above every finite rank the
solver can produce because inputs whose worst-case value bound would reach
2**62 are rejected up front.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

INFINITY = (1 << 63) - 1

# Finite ranks must stay strictly below this, so saturating adds of one more
# edge weight cannot reach the sentinel or overflow int64 in the kernels.
MAX_FINITE_RANK = (1 << 62) - 1

Rank = int
Color = str


class InputError(Exception):
    """Malformed or invalid input: files, constructed objects, CLI lassos."""

    def __init__(self, messages: str | list[str]):
        if isinstance(messages, str):
            messages = [messages]
        self.messages = messages
        super().__init__("\n".join(messages))


class InternalInvariantError(RuntimeError):
    """A property the algorithms guarantee failed to hold; this is a bug."""


def rank_add(rank: Rank, weight: int) -> Rank:
    """Add a finite weight to a rank, absorbing at INFINITY."""
    if weight < 0:
        raise ValueError(f"negative weight {weight}")
    if rank == INFINITY:
        return INFINITY
    if rank < 0:
        raise ValueError(f"negative rank {rank}")
    total = rank + weight
    if total > MAX_FINITE_RANK:
        raise OverflowError(f"rank {rank} + {weight} exceeds the finite range")
    return total


def rank_text(rank: Rank) -> str:
    return "inf" if rank == INFINITY else str(rank)


def is_finite(rank: Rank) -> bool:
    return rank != INFINITY


@dataclass(frozen=True)
class VertexSpec:
    """One arena vertex: a name, an owning player (0 or 1), and a color."""

    name: str
    owner: int
    color: Color


@dataclass(frozen=True)
class EdgeSpec:
    """One weighted edge between vertex indices."""

    src: int
    dst: int
    weight: int


@dataclass(frozen=True)
class Arena:
    """A weighted two-player arena.

    Vertices and edges keep their declaration order; indices into
    ``vertices`` are the canonical vertex identity everywhere else.
    Construction never validates; run :func:`validate_arena` before
    feeding an arena to the solvers.
    """

    vertices: tuple[VertexSpec, ...]
    edges: tuple[EdgeSpec, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def owner(self, v: int) -> int:
        return self.vertices[v].owner

    @cached_property
    def owners(self) -> tuple[int, ...]:
        return tuple(spec.owner for spec in self.vertices)

    def color(self, v: int) -> Color:
        return self.vertices[v].color

    def name(self, v: int) -> str:
        return self.vertices[v].name

    @cached_property
    def index_of(self) -> dict[str, int]:
        return {spec.name: i for i, spec in enumerate(self.vertices)}

    @cached_property
    def successors(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, (target, weight) pairs sorted by target index."""
        out: list[list[tuple[int, int]]] = [[] for _ in self.vertices]
        for e in self.edges:
            out[e.src].append((e.dst, e.weight))
        return tuple(tuple(sorted(lst)) for lst in out)

    @cached_property
    def edge_weight(self) -> dict[tuple[int, int], int]:
        return {(e.src, e.dst): e.weight for e in self.edges}

    @cached_property
    def max_weight(self) -> int:
        return max((e.weight for e in self.edges), default=0)

    @cached_property
    def colors(self) -> frozenset[Color]:
        return frozenset(spec.color for spec in self.vertices)


def validate_arena(arena: Arena) -> list[str]:
    """Check arena well-formedness; an empty report means valid.

    Violations: no vertices, duplicate vertex names, bad owners, empty or
    non-token colors, dangling or duplicate edges, negative weights, and
    vertices with no outgoing edge (arenas must be total).
    """
    issues: list[str] = []
    if not arena.vertices:
        issues.append("no vertices")
    seen: set[str] = set()
    for i, spec in enumerate(arena.vertices):
        if spec.name in seen:
            issues.append(f"duplicate vertex name {spec.name!r}")
        seen.add(spec.name)
        if spec.owner not in (0, 1):
            issues.append(f"vertex {spec.name!r}: owner must be 0 or 1, got {spec.owner!r}")
        if not spec.color or any(c.isspace() for c in spec.color):
            issues.append(f"vertex {spec.name!r}: color must be a nonempty token")
    n = len(arena.vertices)
    seen_pairs: set[tuple[int, int]] = set()
    has_out = [False] * n
    for e in arena.edges:
        if not (0 <= e.src < n and 0 <= e.dst < n):
            issues.append(f"dangling edge ({e.src}, {e.dst})")
            continue
        if (e.src, e.dst) in seen_pairs:
            issues.append(
                f"duplicate edge {arena.name(e.src)} -> {arena.name(e.dst)}"
            )
        seen_pairs.add((e.src, e.dst))
        if e.weight < 0:
            issues.append(
                f"edge {arena.name(e.src)} -> {arena.name(e.dst)}: negative weight {e.weight}"
            )
        has_out[e.src] = True
    for v in range(n):
        if not has_out[v]:
            issues.append(f"vertex {arena.name(v)!r}: no outgoing edge")
    return issues


@dataclass(frozen=True)
class Dfa:
    """A complete DFA over color tokens.

    ``transitions`` maps (state index, color) to a state index and must be
    total over states x alphabet; :func:`validate_dfa` checks that.  The
    empty word must not be accepted, which the validator enforces as
    "initial state is not accepting".
    """

    states: tuple[str, ...]
    alphabet: frozenset[Color]
    initial: int
    accepting: frozenset[int]
    transitions: Mapping[tuple[int, Color], int]

    @property
    def n(self) -> int:
        return len(self.states)

    def state_index(self, name: str) -> int:
        return self.states.index(name)

    def step(self, state: int, color: Color) -> int:
        return self.transitions[(state, color)]


def validate_dfa(dfa: Dfa, arena_colors: Iterable[Color] | None = None) -> list[str]:
    """Check DFA well-formedness; empty report means valid.

    When ``arena_colors`` is given, also checks that every arena color is
    in the alphabet (otherwise the product is undefined).
    """
    issues: list[str] = []
    if not dfa.states:
        issues.append("no states")
        return issues
    seen: set[str] = set()
    for name in dfa.states:
        if name in seen:
            issues.append(f"duplicate state name {name!r}")
        seen.add(name)
    m = len(dfa.states)
    if not (0 <= dfa.initial < m):
        issues.append(f"initial state index {dfa.initial} out of range")
    for q in dfa.accepting:
        if not (0 <= q < m):
            issues.append(f"accepting state index {q} out of range")
    if 0 <= dfa.initial < m and dfa.initial in dfa.accepting:
        issues.append(
            f"initial state {dfa.states[dfa.initial]!r} is accepting "
            "(the empty color word must not be accepted)"
        )
    for (q, color), target in dfa.transitions.items():
        if not (0 <= q < m) or not (0 <= target < m):
            issues.append(f"transition ({q}, {color!r}) -> {target} out of range")
        if color not in dfa.alphabet:
            issues.append(f"transition on color {color!r} not in the alphabet")
    for q in range(m):
        for color in sorted(dfa.alphabet):
            if (q, color) not in dfa.transitions:
                issues.append(f"missing transition ({dfa.states[q]!r}, {color!r})")
    if arena_colors is not None:
        missing = sorted(set(arena_colors) - set(dfa.alphabet))
        for color in missing:
            issues.append(f"arena color {color!r} not in the DFA alphabet")
    return issues


def dfa_run(dfa: Dfa, colors: Iterable[Color], start: int | None = None) -> int:
    """Run the DFA over a color word; returns the final state index."""
    q = dfa.initial if start is None else start
    for color in colors:
        if color not in dfa.alphabet:
            raise InputError(f"color {color!r} not in the DFA alphabet")
        q = dfa.transitions[(q, color)]
    return q


@dataclass(frozen=True)
class MemoryStructure:
    """Finite memory over a host graph.

    ``init[v]`` is the memory state after a play starts at host vertex v;
    ``upd[m][v]`` is the state after the play moves to v while in state m.
    Memory states are indices into ``labels`` (labels are display/serialization
    tokens only).
    """

    labels: tuple[str, ...]
    init: tuple[int, ...]
    upd: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class FiniteStateStrategy:
    """A finite-state strategy for one player over a host graph.

    ``nxt`` maps (host vertex owned by ``player``, memory state) to the
    successor vertex the strategy prescribes.  The table is total over
    owned vertices x memory states.
    """

    player: int
    memory: MemoryStructure
    nxt: Mapping[tuple[int, int], int]

    def move(self, vertex: int, mstate: int) -> int:
        return self.nxt[(vertex, mstate)]


def strategy_violations(
    strategy: FiniteStateStrategy,
    owners: list[int] | tuple[int, ...],
    successors,
) -> list[str]:
    """Check a strategy against its host: totality and legal moves."""
    issues: list[str] = []
    mem = strategy.memory
    if len(mem.init) != len(owners):
        issues.append("init table size differs from host vertex count")
        return issues
    for v, owner in enumerate(owners):
        if owner != strategy.player:
            continue
        succ = {t for t, _ in successors[v]}
        for m in range(mem.n):
            if (v, m) not in strategy.nxt:
                issues.append(f"missing move at vertex {v}, memory {m}")
            elif strategy.nxt[(v, m)] not in succ:
                issues.append(
                    f"illegal move at vertex {v}, memory {m}: "
                    f"{strategy.nxt[(v, m)]} is not a successor"
                )
    return issues


@dataclass(frozen=True)
class Lasso:
    """An ultimately periodic play: a finite stem followed by a cycle."""

    stem: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self):
        if not self.cycle:
            raise InputError("lasso cycle must be nonempty")

    def unroll(self, length: int) -> list[int]:
        """First ``length`` vertices of the induced infinite play."""
        out = list(self.stem)
        while len(out) < length:
            out.extend(self.cycle)
        return out[:length]

    def pairs(self) -> Iterator[tuple[int, int]]:
        """Consecutive vertex pairs, including the cycle's closing edge."""
        seq = list(self.stem) + list(self.cycle)
        for a, b in zip(seq, seq[1:]):
            yield a, b
        yield self.cycle[-1], self.cycle[0]


def lasso_violations(lasso: Lasso, edge_weight: Mapping[tuple[int, int], int]) -> list[str]:
    """Check that stem+cycle follow edges of the host graph."""
    issues = []
    for a, b in lasso.pairs():
        if (a, b) not in edge_weight:
            issues.append(f"no edge {a} -> {b}")
    return issues
