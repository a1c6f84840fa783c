"""Arena x DFA product.

The DFA induces a memory structure over the arena (track the state reached
after reading the colors of the play so far, current vertex included); the
product arena is the arena extended with that memory.  Solving happens on
the product: the goal set F collects every pair whose DFA component is
accepting, and a play prefix is accepted exactly when the product play sits
in F.  The full V x Q product is built, including pairs unreachable from
any entry point; the index of pair (v, q) is v * |Q| + q.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import (
    INFINITY,
    MAX_FINITE_RANK,
    Arena,
    Dfa,
    FiniteStateStrategy,
    InputError,
    Lasso,
    MemoryStructure,
    validate_arena,
    validate_dfa,
)


def memory_from_dfa(dfa: Dfa, arena: Arena) -> MemoryStructure:
    """The canonical memory structure induced by a DFA over an arena.

    init(v) reads v's color from the initial state; upd(q, v) reads v's
    color from q.  Memory states are the DFA states.
    """
    init = tuple(dfa.step(dfa.initial, arena.color(v)) for v in range(arena.n))
    upd = tuple(
        tuple(dfa.step(q, arena.color(v)) for v in range(arena.n))
        for q in range(dfa.n)
    )
    return MemoryStructure(labels=dfa.states, init=init, upd=upd)


@dataclass(frozen=True)
class ProductArena:
    """The arena extended with DFA memory.

    Product vertex i = v * |Q| + q carries v's owner and color.  ``goal``
    is the accepting set F (all pairs with accepting DFA component);
    ``entry(v)`` is where plays starting at base vertex v enter the
    product.
    """

    base: Arena
    dfa: Dfa

    @property
    def n(self) -> int:
        return self.base.n * self.dfa.n

    def index(self, v: int, q: int) -> int:
        return v * self.dfa.n + q

    def pair(self, i: int) -> tuple[int, int]:
        return divmod(i, self.dfa.n)

    def vertex_name(self, i: int) -> str:
        v, q = self.pair(i)
        return f"({self.base.name(v)},{self.dfa.states[q]})"

    def entry(self, v: int) -> int:
        return self.index(v, self.dfa.step(self.dfa.initial, self.base.color(v)))

    @cached_property
    def owners(self) -> tuple[int, ...]:
        return tuple(self.base.owner(self.pair(i)[0]) for i in range(self.n))

    @cached_property
    def goal(self) -> frozenset[int]:
        return frozenset(
            self.index(v, q)
            for v in range(self.base.n)
            for q in self.dfa.accepting
        )

    @cached_property
    def successors(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per product vertex, (target, weight) pairs sorted by target."""
        step = self.dfa.step
        nq = self.dfa.n
        out: list[tuple[tuple[int, int], ...]] = []
        for i in range(self.n):
            v, q = divmod(i, nq)
            row = sorted(
                (t * nq + step(q, self.base.color(t)), w)
                for t, w in self.base.successors[v]
            )
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def edge_weight(self) -> dict[tuple[int, int], int]:
        return {
            (i, t): w
            for i in range(self.n)
            for t, w in self.successors[i]
        }

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(owners, indptr, targets, weights) arrays for the kernels."""
        owners = np.fromiter(self.owners, dtype=np.uint8, count=self.n)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        targets: list[int] = []
        weights: list[int] = []
        for i in range(self.n):
            for t, w in self.successors[i]:
                targets.append(t)
                weights.append(w)
            indptr[i + 1] = len(targets)
        return (
            owners,
            indptr,
            np.array(targets, dtype=np.int64),
            np.array(weights, dtype=np.int64),
        )

    def goal_mask(self, goal: frozenset[int] | set[int]) -> np.ndarray:
        mask = np.zeros(self.n, dtype=np.uint8)
        for v in goal:
            mask[v] = 1
        return mask


def build_product(arena: Arena, dfa: Dfa) -> ProductArena:
    """Validate the pair and build the product arena.

    Rejects inputs whose worst-case value bound (|V|*|Q| + 1) * W does not
    fit the finite rank range; every rank the solvers produce stays within
    that bound, so this check makes sentinel arithmetic exact.
    """
    issues = validate_arena(arena)
    issues += validate_dfa(dfa, arena.colors)
    if issues:
        raise InputError(issues)
    n = arena.n * dfa.n
    if (n + 1) * arena.max_weight > MAX_FINITE_RANK:
        raise InputError(
            f"value bound ({n} + 1) * {arena.max_weight} exceeds the finite rank range"
        )
    return ProductArena(base=arena, dfa=dfa)


def extend_play(p: ProductArena, play: list[int] | tuple[int, ...]) -> list[int]:
    """Lift a finite base play to the product, starting at entry(play[0])."""
    if not play:
        raise InputError("empty play")
    weights = p.base.edge_weight
    for a, b in zip(play, play[1:]):
        if (a, b) not in weights:
            raise InputError(f"no edge {p.base.name(a)} -> {p.base.name(b)}")
    out = [p.entry(play[0])]
    q = out[0] % p.dfa.n
    for v in play[1:]:
        q = p.dfa.step(q, p.base.color(v))
        out.append(p.index(v, q))
    return out


def extend_lasso(p: ProductArena, lasso: Lasso) -> Lasso:
    """Lift an ultimately periodic base play to a product lasso.

    The DFA state at successive cycle starts must repeat within |Q|+1
    passes; the product lasso splits there.
    """
    base_cycle = list(lasso.cycle)
    weights = p.base.edge_weight
    seq = list(lasso.stem) + base_cycle
    for a, b in zip(seq, seq[1:]):
        if (a, b) not in weights:
            raise InputError(f"no edge {p.base.name(a)} -> {p.base.name(b)}")
    if (base_cycle[-1], base_cycle[0]) not in weights:
        raise InputError(
            f"no edge {p.base.name(base_cycle[-1])} -> {p.base.name(base_cycle[0])}"
        )
    prod = extend_play(p, seq)
    stem_part = prod[: len(lasso.stem)]
    cursor = prod[len(lasso.stem)]
    passes = [prod[len(lasso.stem):]]
    seen = {cursor: 0}
    while True:
        q = passes[-1][-1] % p.dfa.n
        q = p.dfa.step(q, p.base.color(base_cycle[0]))
        nxt = p.index(base_cycle[0], q)
        if nxt in seen:
            first = seen[nxt]
            flat = [x for part in passes for x in part]
            cut = first * len(base_cycle)
            return Lasso(
                stem=tuple(stem_part) + tuple(flat[:cut]),
                cycle=tuple(flat[cut:]),
            )
        seen[nxt] = len(passes)
        nxt_pass = [nxt]
        for v in base_cycle[1:]:
            q = p.dfa.step(nxt_pass[-1] % p.dfa.n, p.base.color(v))
            nxt_pass.append(p.index(v, q))
        passes.append(nxt_pass)


def compose_strategy(
    memory: MemoryStructure, strategy: FiniteStateStrategy
) -> FiniteStateStrategy:
    """Flatten a product-arena strategy to the base arena.

    ``memory`` must be the DFA-induced structure the product was built
    with (its states index the DFA component of product vertices), and
    ``strategy`` a strategy over that product.  The result plays on base
    vertices with memory pairs (DFA state, strategy state): consistent
    base plays map to consistent product plays and back.
    """
    nq = memory.n
    inner = strategy.memory
    n_base = len(memory.init)
    labels = tuple(
        f"{memory.labels[q]}|{inner.labels[m]}"
        for q in range(nq)
        for m in range(inner.n)
    )

    def pack(q: int, m: int) -> int:
        return q * inner.n + m

    init = tuple(
        pack(memory.init[v], inner.init[v * nq + memory.init[v]])
        for v in range(n_base)
    )
    upd = tuple(
        tuple(
            pack(
                memory.upd[q][v],
                inner.upd[m][v * nq + memory.upd[q][v]],
            )
            for v in range(n_base)
        )
        for q in range(nq)
        for m in range(inner.n)
    )
    nxt: dict[tuple[int, int], int] = {}
    for (pv, m), target in strategy.nxt.items():
        v, q = divmod(pv, nq)
        nxt[(v, pack(q, m))] = target // nq
    composed_memory = MemoryStructure(labels=labels, init=init, upd=upd)
    return FiniteStateStrategy(
        player=strategy.player, memory=composed_memory, nxt=nxt
    )
