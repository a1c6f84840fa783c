"""Line-oriented text formats and DOT export.

Arena files: `vertex <id> <0|1> <color>` then `edge <src> <dst> <weight>`,
one directive per line, `#` starts a comment, declaration order defines
vertex indices.

DFA files: `alphabet <color>...` (mandatory), `initial <state>`
(mandatory), `accepting [<state>...]`, `trans <src> <color> <dst>`.
States are declared implicitly by first mention; an optional leading
`states <name>...` line pins the order explicitly, which the serializer
always emits so that parse(serialize(d)) reproduces d exactly.

Strategy files: `strategy <player>`, `memory <label>...`, one
`init <vertex> <label>` line per host vertex, the full
`upd <label> <vertex> <label>` table, and `nxt <vertex> <label> <vertex>`
for every owned vertex and memory state.  Host vertices appear as integer
indices so the format works over base and product arenas alike.

All parsers collect every diagnostic (with line numbers) before failing.
"""

from __future__ import annotations

from .core import (
    Arena,
    Dfa,
    EdgeSpec,
    FiniteStateStrategy,
    InputError,
    MemoryStructure,
    VertexSpec,
    validate_arena,
    validate_dfa,
)
from .product import ProductArena


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_arena(text: str) -> Arena:
    """Parse and validate an arena file; all problems raise one InputError."""
    issues: list[str] = []
    vertices: list[VertexSpec] = []
    index: dict[str, int] = {}
    edge_rows: list[tuple[int, str, str, str]] = []
    for lineno, parts in _lines(text):
        if parts[0] == "vertex":
            if len(parts) != 4:
                issues.append(f"line {lineno}: vertex takes <id> <0|1> <color>")
                continue
            _, name, owner, color = parts
            if name in index:
                issues.append(f"line {lineno}: duplicate vertex {name!r}")
                continue
            if owner not in ("0", "1"):
                issues.append(f"line {lineno}: owner must be 0 or 1, got {owner!r}")
                continue
            index[name] = len(vertices)
            vertices.append(VertexSpec(name=name, owner=int(owner), color=color))
        elif parts[0] == "edge":
            if len(parts) != 4:
                issues.append(f"line {lineno}: edge takes <src> <dst> <weight>")
                continue
            edge_rows.append((lineno, parts[1], parts[2], parts[3]))
        else:
            issues.append(f"line {lineno}: unknown directive {parts[0]!r}")

    edges: list[EdgeSpec] = []
    seen_pairs: set[tuple[int, int]] = set()
    for lineno, src, dst, weight_text in edge_rows:
        ok = True
        for name in (src, dst):
            if name not in index:
                issues.append(f"line {lineno}: unknown vertex {name!r}")
                ok = False
        try:
            weight = int(weight_text)
        except ValueError:
            issues.append(f"line {lineno}: weight must be an integer, got {weight_text!r}")
            ok = False
        else:
            if weight < 0:
                issues.append(f"line {lineno}: negative weight {weight}")
                ok = False
        if not ok:
            continue
        pair = (index[src], index[dst])
        if pair in seen_pairs:
            issues.append(f"line {lineno}: duplicate edge {src} -> {dst}")
            continue
        seen_pairs.add(pair)
        edges.append(EdgeSpec(src=pair[0], dst=pair[1], weight=weight))

    if issues:
        raise InputError(issues)
    arena = Arena(vertices=tuple(vertices), edges=tuple(edges))
    issues = validate_arena(arena)
    if issues:
        raise InputError(issues)
    return arena


def serialize_arena(arena: Arena) -> str:
    """Canonical arena text: vertices then edges, declaration order."""
    lines = [
        f"vertex {spec.name} {spec.owner} {spec.color}" for spec in arena.vertices
    ]
    lines += [
        f"edge {arena.name(e.src)} {arena.name(e.dst)} {e.weight}"
        for e in arena.edges
    ]
    return "\n".join(lines) + "\n"


def parse_dfa(text: str) -> Dfa:
    """Parse and validate a DFA file; all problems raise one InputError."""
    issues: list[str] = []
    states: list[str] = []
    index: dict[str, int] = {}

    def intern(name: str) -> int:
        if name not in index:
            index[name] = len(states)
            states.append(name)
        return index[name]

    alphabet: list[str] | None = None
    initial: int | None = None
    accepting: set[int] = set()
    seen_accepting_line = False
    transitions: dict[tuple[int, str], int] = {}
    trans_rows: list[tuple[int, str]] = []

    for lineno, parts in _lines(text):
        head, args = parts[0], parts[1:]
        if head == "states":
            if states:
                issues.append(f"line {lineno}: states must come first, once")
                continue
            for name in args:
                if name in index:
                    issues.append(f"line {lineno}: duplicate state {name!r}")
                else:
                    intern(name)
        elif head == "alphabet":
            if alphabet is not None:
                issues.append(f"line {lineno}: duplicate alphabet line")
                continue
            if not args:
                issues.append(f"line {lineno}: alphabet needs at least one color")
                continue
            alphabet = args
        elif head == "initial":
            if len(args) != 1:
                issues.append(f"line {lineno}: initial takes one state")
                continue
            if initial is not None:
                issues.append(f"line {lineno}: duplicate initial line")
                continue
            initial = intern(args[0])
        elif head == "accepting":
            if seen_accepting_line:
                issues.append(f"line {lineno}: duplicate accepting line")
                continue
            seen_accepting_line = True
            accepting.update(intern(name) for name in args)
        elif head == "trans":
            if len(args) != 3:
                issues.append(f"line {lineno}: trans takes <src> <color> <dst>")
                continue
            src, color, dst = args
            key = (intern(src), color)
            target = intern(dst)
            if key in transitions and transitions[key] != target:
                issues.append(
                    f"line {lineno}: nondeterministic: ({src}, {color}) already "
                    f"goes to {states[transitions[key]]}"
                )
                continue
            transitions[key] = target
            trans_rows.append((lineno, color))
        else:
            issues.append(f"line {lineno}: unknown directive {head!r}")

    if alphabet is None:
        issues.append("missing alphabet line")
    else:
        known = set(alphabet)
        for lineno, color in trans_rows:
            if color not in known:
                issues.append(f"line {lineno}: color {color!r} not in the alphabet")
    if initial is None:
        issues.append("missing initial line")
    if issues:
        raise InputError(issues)

    dfa = Dfa(
        states=tuple(states),
        alphabet=frozenset(alphabet),
        initial=initial,
        accepting=frozenset(accepting),
        transitions=transitions,
    )
    issues = validate_dfa(dfa)
    if issues:
        raise InputError(issues)
    return dfa


def serialize_dfa(dfa: Dfa) -> str:
    """Canonical DFA text; parse(serialize(d)) == d."""
    lines = [
        "states " + " ".join(dfa.states),
        "alphabet " + " ".join(sorted(dfa.alphabet)),
        "initial " + dfa.states[dfa.initial],
        ("accepting " + " ".join(dfa.states[q] for q in sorted(dfa.accepting))).rstrip(),
    ]
    for q in range(dfa.n):
        for color in sorted(dfa.alphabet):
            lines.append(f"trans {dfa.states[q]} {color} {dfa.states[dfa.step(q, color)]}")
    return "\n".join(lines) + "\n"


def serialize_strategy(strategy: FiniteStateStrategy) -> str:
    """Canonical strategy text over integer host-vertex indices."""
    mem = strategy.memory
    lines = [f"strategy {strategy.player}", "memory " + " ".join(mem.labels)]
    for v, m in enumerate(mem.init):
        lines.append(f"init {v} {mem.labels[m]}")
    for m, row in enumerate(mem.upd):
        for v, m2 in enumerate(row):
            lines.append(f"upd {mem.labels[m]} {v} {mem.labels[m2]}")
    for (v, m), target in sorted(strategy.nxt.items()):
        lines.append(f"nxt {v} {mem.labels[m]} {target}")
    return "\n".join(lines) + "\n"


def parse_strategy(text: str) -> FiniteStateStrategy:
    """Parse a strategy file; inverse of serialize_strategy."""
    issues: list[str] = []
    player: int | None = None
    labels: tuple[str, ...] | None = None
    label_index: dict[str, int] = {}
    init_rows: dict[int, int] = {}
    upd_rows: dict[tuple[int, int], int] = {}
    nxt: dict[tuple[int, int], int] = {}

    def vertex(tok: str, lineno: int) -> int | None:
        try:
            v = int(tok)
        except ValueError:
            issues.append(f"line {lineno}: vertex must be an integer, got {tok!r}")
            return None
        if v < 0:
            issues.append(f"line {lineno}: negative vertex {v}")
            return None
        return v

    def label(tok: str, lineno: int) -> int | None:
        if tok not in label_index:
            issues.append(f"line {lineno}: unknown memory label {tok!r}")
            return None
        return label_index[tok]

    for lineno, parts in _lines(text):
        head, args = parts[0], parts[1:]
        if head == "strategy":
            if player is not None or len(args) != 1 or args[0] not in ("0", "1"):
                issues.append(f"line {lineno}: strategy takes one player, once")
                continue
            player = int(args[0])
        elif head == "memory":
            if labels is not None or not args:
                issues.append(f"line {lineno}: memory takes the label list, once")
                continue
            if len(set(args)) != len(args):
                issues.append(f"line {lineno}: duplicate memory label")
                continue
            labels = tuple(args)
            label_index.update({name: i for i, name in enumerate(labels)})
        elif head == "init":
            if len(args) != 2:
                issues.append(f"line {lineno}: init takes <vertex> <label>")
                continue
            v, m = vertex(args[0], lineno), label(args[1], lineno)
            if v is None or m is None:
                continue
            if v in init_rows:
                issues.append(f"line {lineno}: duplicate init for vertex {v}")
                continue
            init_rows[v] = m
        elif head == "upd":
            if len(args) != 3:
                issues.append(f"line {lineno}: upd takes <label> <vertex> <label>")
                continue
            m = label(args[0], lineno)
            v = vertex(args[1], lineno)
            m2 = label(args[2], lineno)
            if m is None or v is None or m2 is None:
                continue
            if (m, v) in upd_rows:
                issues.append(f"line {lineno}: duplicate upd for ({args[0]}, {v})")
                continue
            upd_rows[(m, v)] = m2
        elif head == "nxt":
            if len(args) != 3:
                issues.append(f"line {lineno}: nxt takes <vertex> <label> <vertex>")
                continue
            v = vertex(args[0], lineno)
            m = label(args[1], lineno)
            t = vertex(args[2], lineno)
            if v is None or m is None or t is None:
                continue
            if (v, m) in nxt:
                issues.append(f"line {lineno}: duplicate nxt for ({v}, {args[1]})")
                continue
            nxt[(v, m)] = t
        else:
            issues.append(f"line {lineno}: unknown directive {head!r}")

    if player is None:
        issues.append("missing strategy line")
    if labels is None:
        issues.append("missing memory line")
    n = len(init_rows)
    if labels is not None:
        missing_init = [v for v in range(n) if v not in init_rows]
        if missing_init or any(v >= n for v in init_rows):
            issues.append("init lines must cover vertices 0..n-1 exactly")
        for m in range(len(labels)):
            for v in range(n):
                if (m, v) not in upd_rows:
                    issues.append(f"missing upd ({labels[m]}, {v})")
    if issues:
        raise InputError(issues)
    memory = MemoryStructure(
        labels=labels,
        init=tuple(init_rows[v] for v in range(n)),
        upd=tuple(
            tuple(upd_rows[(m, v)] for v in range(n)) for m in range(len(labels))
        ),
    )
    return FiniteStateStrategy(player=player, memory=memory, nxt=nxt)


def _dot_quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(subject: Arena | ProductArena, highlight=None) -> str:
    """DOT text: Player-0 vertices as ellipses, Player-1 as boxes, goal
    vertices doubly bordered, weights as edge labels.  ``highlight`` is a
    set of (src, dst) index pairs drawn bold (strategy overlays).
    """
    if isinstance(subject, ProductArena):
        names = [subject.vertex_name(i) for i in range(subject.n)]
        owners = subject.owners
        goal = subject.goal
        successors = subject.successors
    else:
        names = [subject.name(v) for v in range(subject.n)]
        owners = tuple(subject.owner(v) for v in range(subject.n))
        goal = frozenset()
        successors = subject.successors
    marked = set(highlight or ())
    lines = ["digraph limitgame {", "  rankdir=LR;"]
    for v, name in enumerate(names):
        attrs = ["shape=ellipse" if owners[v] == 0 else "shape=box"]
        if v in goal:
            attrs.append("peripheries=2")
        lines.append(f"  {_dot_quote(name)} [{', '.join(attrs)}];")
    for v in range(len(names)):
        for t, w in successors[v]:
            attrs = [f'label="{w}"']
            if (v, t) in marked:
                attrs.append("style=bold")
                attrs.append("color=blue")
            lines.append(
                f"  {_dot_quote(names[v])} -> {_dot_quote(names[t])} [{', '.join(attrs)}];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
