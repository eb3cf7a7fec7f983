"""Tail-biting trellises as leveled, edge-labeled digraphs.

A trellis of depth n has vertex levels 0..n-1.  Section i (1 <= i <= n)
holds the edges from level i-1 to level i mod n, so section n wraps back
to level 0.  Vertices are addressed by their ordinal within a level and
carry a label vector; edges are ``(tail, symbol, head)`` ordinal triples.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

from . import gf2
from .errors import CapacityError, DimensionError, ParseError
from .gf2 import BitVector

MAX_CYCLES = 2**20
DEFAULT_NODE_BUDGET = 10**7


class Edge(NamedTuple):
    tail: int
    symbol: int
    head: int


class Vertex(NamedTuple):
    level: int
    ordinal: int
    label: BitVector


class Cycle(NamedTuple):
    start: int
    edges: tuple[Edge, ...]
    word: BitVector


class Trellis:
    """Immutable tail-biting trellis.

    ``levels[i]`` lists the vertex labels of level i by ordinal and
    ``edges[i - 1]`` the edges of section i.  Edge lists are stored sorted
    and duplicate-free, so two trellises with the same vertex labels and
    edge sets compare equal.
    """

    __slots__ = ("depth", "levels", "edges")

    def __init__(self, depth: int, levels: Sequence[Sequence], edges: Sequence[Iterable]):
        if depth < 0:
            raise ValueError("depth must be non-negative")
        if len(levels) != depth or len(edges) != depth:
            raise DimensionError(f"depth {depth} needs {depth} levels and sections, "
                                 f"got {len(levels)} and {len(edges)}")
        lv = tuple(tuple(BitVector(lab) for lab in level) for level in levels)
        secs = []
        for i in range(1, depth + 1):
            n_tail = len(lv[i - 1])
            n_head = len(lv[i % depth])
            es = sorted({Edge(int(t), int(a), int(h)) for t, a, h in edges[i - 1]})
            for e in es:
                if not (0 <= e.tail < n_tail and 0 <= e.head < n_head and e.symbol in (0, 1)):
                    raise ValueError(f"section {i}: invalid edge {tuple(e)}")
            secs.append(tuple(es))
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "levels", lv)
        object.__setattr__(self, "edges", tuple(secs))

    def __setattr__(self, name, value):
        raise AttributeError("Trellis is immutable")

    def section(self, i: int) -> tuple[Edge, ...]:
        """Edges from level i-1 to level i mod n, for 1 <= i <= n."""
        if not 1 <= i <= self.depth:
            raise IndexError(f"section {i} outside 1..{self.depth}")
        return self.edges[i - 1]

    def level(self, i: int) -> tuple[BitVector, ...]:
        return self.levels[i % self.depth]

    def vertices(self) -> Iterator[Vertex]:
        for i, level in enumerate(self.levels):
            for o, lab in enumerate(level):
                yield Vertex(i, o, lab)

    @property
    def vertex_count(self) -> int:
        return sum(len(level) for level in self.levels)

    @property
    def edge_count(self) -> int:
        return sum(len(sec) for sec in self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Trellis):
            return NotImplemented
        return (self.depth, self.levels, self.edges) == (other.depth, other.levels, other.edges)

    def __hash__(self) -> int:
        return hash((self.depth, self.levels, self.edges))

    def __repr__(self) -> str:
        return f"Trellis(depth={self.depth}, |V|={[len(v) for v in self.levels]})"


def from_paths(n: int, paths: Iterable[tuple[Sequence[BitVector], Sequence[int]]],
               order: str = "first") -> Trellis:
    """Assemble a trellis from closed state paths.

    Each path is ``(states, word)`` with ``states[0..n]`` (``states[n]`` must
    equal ``states[0]``) and ``word[0..n-1]`` the edge symbols.  Vertex
    ordinals follow first appearance (``order="first"``) or ascending label
    order (``order="sorted"``).
    """
    paths = list(paths)
    seen: list[dict[BitVector, None]] = [dict() for _ in range(n)]
    for states, word in paths:
        if states[n] != states[0]:
            raise ValueError("state path does not close")
        for i in range(n):
            seen[i].setdefault(BitVector(states[i]), None)
    labels = [list(s) for s in seen]
    if order == "sorted":
        labels = [sorted(s) for s in labels]
    index = [{lab: o for o, lab in enumerate(level)} for level in labels]
    edges: list[set] = [set() for _ in range(n)]
    for states, word in paths:
        for i in range(1, n + 1):
            edges[i - 1].add((index[i - 1][states[i - 1]], int(word[i - 1]), index[i % n][states[i]]))
    return Trellis(n, labels, edges)


# -- cycles and the label code -------------------------------------------------

def _out_adjacency(T: Trellis) -> list[list[list[Edge]]]:
    """adj[i][v] = edges of section i+1 leaving vertex v of level i."""
    adj = [[[] for _ in level] for level in T.levels]
    for i in range(1, T.depth + 1):
        for e in T.section(i):
            adj[i - 1][e.tail].append(e)
    return adj


def iter_cycles(T: Trellis, max_cycles: int = MAX_CYCLES) -> Iterator[Cycle]:
    """Depth-first enumeration of all cycles, starting from each level-0 vertex in order."""
    n = T.depth
    if n == 0:
        return
    adj = _out_adjacency(T)
    count = 0
    for start in range(len(T.levels[0])):
        path: list[Edge] = []
        stack = [iter(adj[0][start])]
        while stack:
            e = next(stack[-1], None)
            if e is None:
                stack.pop()
                if path:
                    path.pop()
                continue
            path.append(e)
            depth = len(path)
            if depth == n:
                if e.head == start:
                    count += 1
                    if count > max_cycles:
                        raise CapacityError(f"more than {max_cycles} cycles")
                    yield Cycle(start, tuple(path), BitVector(x.symbol for x in path))
                path.pop()
            else:
                stack.append(iter(adj[depth][e.head]))


def label_code(T: Trellis, max_cycles: int = MAX_CYCLES) -> list[BitVector]:
    """Label words of all cycles, one entry per cycle (a multiset)."""
    return [c.word for c in iter_cycles(T, max_cycles)]


# -- reducedness ---------------------------------------------------------------

@dataclass
class ReducedReport:
    ok: bool
    vertices: list[tuple[int, int]] = field(default_factory=list)
    edges: list[tuple[int, Edge]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def is_reduced(T: Trellis) -> ReducedReport:
    """Check that every vertex and every edge lies on at least one cycle.

    Offending vertices are listed as ``(level, ordinal)`` and offending
    edges as ``(section, edge)``.
    """
    n = T.depth
    if n == 0:
        return ReducedReport(True)
    on_cycle_v = [set() for _ in range(n)]
    on_cycle_e = [set() for _ in range(n)]
    for s in range(len(T.levels[0])):
        # fwd[i]: level-i vertices reachable from s; bwd[i]: vertices that reach s at level n
        fwd = [set() for _ in range(n + 1)]
        fwd[0] = {s}
        for i in range(1, n + 1):
            fwd[i] = {e.head for e in T.section(i) if e.tail in fwd[i - 1]}
        bwd = [set() for _ in range(n + 1)]
        bwd[n] = {s}
        for i in range(n, 0, -1):
            bwd[i - 1] = {e.tail for e in T.section(i) if e.head in bwd[i]}
        if s not in fwd[n]:
            continue
        for i in range(n):
            on_cycle_v[i] |= fwd[i] & bwd[i]
        for i in range(1, n + 1):
            on_cycle_e[i - 1] |= {e for e in T.section(i) if e.tail in fwd[i - 1] and e.head in bwd[i]}
    bad_v = [(i, o) for i in range(n) for o in range(len(T.levels[i])) if o not in on_cycle_v[i]]
    bad_e = [(i, e) for i in range(1, n + 1) for e in T.section(i) if e not in on_cycle_e[i - 1]]
    return ReducedReport(not bad_v and not bad_e, bad_v, bad_e)


# -- identity and isomorphism --------------------------------------------------

def identical(T1: Trellis, T2: Trellis) -> bool:
    """Ordinal-exact equality: same labels at the same ordinals and the same edge sets."""
    return T1 == T2


def first_difference(T1: Trellis, T2: Trellis) -> str | None:
    """Describe where two trellises first differ, or None when identical."""
    if T1.depth != T2.depth:
        return f"depth {T1.depth} != {T2.depth}"
    for i in range(T1.depth):
        if T1.levels[i] != T2.levels[i]:
            return f"level {i}"
        if T1.section(i + 1) != T2.section(i + 1):
            return f"section {i + 1}"
    return None


@dataclass
class IsomorphismResult:
    isomorphic: bool
    mapping: list[dict[int, int]] | None = None
    failed_level: int | None = None
    reason: str = ""
    label_linear: bool | None = None
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.isomorphic

    @property
    def witness_size(self) -> int:
        return sum(len(m) for m in self.mapping) if self.mapping else 0


class _Graph:
    def __init__(self, T: Trellis):
        n = T.depth
        self.n = n
        self.out = [[set() for _ in level] for level in T.levels]  # (symbol, head)
        self.inn = [[set() for _ in level] for level in T.levels]  # (tail, symbol)
        for i in range(1, n + 1):
            for e in T.section(i):
                self.out[i - 1][e.tail].add((e.symbol, e.head))
                self.inn[i % n][e.head].add((e.tail, e.symbol))
        self.sig = [
            [(len(self.inn[i][v]), len(self.out[i][v]),
              sum(1 for a, _ in self.out[i][v] if a), sum(1 for _, a in self.inn[i][v] if a))
             for v in range(len(T.levels[i]))]
            for i in range(n)
        ]


def _invariant_mismatch(T1: Trellis, T2: Trellis, g1: _Graph, g2: _Graph) -> tuple[int, str] | None:
    for i in range(T1.depth):
        if len(T1.levels[i]) != len(T2.levels[i]):
            return i, f"level {i}: {len(T1.levels[i])} vs {len(T2.levels[i])} vertices"
        if len(T1.section(i + 1)) != len(T2.section(i + 1)):
            return i + 1, f"section {i + 1}: {len(T1.section(i + 1))} vs {len(T2.section(i + 1))} edges"
    for i in range(T1.depth):
        if Counter(g1.sig[i]) != Counter(g2.sig[i]):
            return i, f"level {i}: degree signatures differ"
    return None


def _search_order(g: _Graph) -> tuple[list[tuple[int, int]], list[tuple[int, str, int] | None]]:
    """BFS order over the undirected level graph; each entry remembers how it was reached."""
    n = g.n
    seen = [set() for _ in range(n)]
    order: list[tuple[int, int]] = []
    via: list[tuple[int, str, int] | None] = []
    for i0 in range(n):
        for v0 in range(len(g.out[i0])):
            if v0 in seen[i0]:
                continue
            seen[i0].add(v0)
            order.append((i0, v0))
            via.append(None)
            q = deque([len(order) - 1])
            while q:
                idx = q.popleft()
                i, v = order[idx]
                nxt = (i + 1) % n
                prv = (i - 1) % n
                for a, w in sorted(g.out[i][v]):
                    if w not in seen[nxt]:
                        seen[nxt].add(w)
                        order.append((nxt, w))
                        via.append((idx, "out", a))
                        q.append(len(order) - 1)
                for u, a in sorted(g.inn[i][v]):
                    if u not in seen[prv]:
                        seen[prv].add(u)
                        order.append((prv, u))
                        via.append((idx, "in", a))
                        q.append(len(order) - 1)
    return order, via


def isomorphic(T1: Trellis, T2: Trellis, node_budget: int = DEFAULT_NODE_BUDGET) -> IsomorphismResult:
    """Search for a level-preserving, edge-label-preserving vertex bijection.

    Vertex labels are ignored by the search.  When a witness is found,
    ``label_linear`` reports whether at every level the label map extends
    to a linear isomorphism between the label spans.
    """
    if T1.depth != T2.depth:
        return IsomorphismResult(False, failed_level=0, reason=f"depth {T1.depth} vs {T2.depth}")
    n = T1.depth
    if n == 0:
        return IsomorphismResult(True, mapping=[], label_linear=True)
    g1, g2 = _Graph(T1), _Graph(T2)
    bad = _invariant_mismatch(T1, T2, g1, g2)
    if bad:
        return IsomorphismResult(False, failed_level=bad[0], reason=bad[1])

    order, via = _search_order(g1)
    phi = [dict() for _ in range(n)]
    used = [set() for _ in range(n)]
    by_sig2 = [dict() for _ in range(n)]
    for i in range(n):
        for w, s in enumerate(g2.sig[i]):
            by_sig2[i].setdefault(s, []).append(w)

    def candidates(pos: int) -> list[int]:
        i, v = order[pos]
        s = g1.sig[i][v]
        if via[pos] is None:
            pool = by_sig2[i].get(s, [])
        else:
            p_idx, direction, a = via[pos]
            pi, pv = order[p_idx]
            img = phi[pi][pv]
            if direction == "out":
                pool = sorted(w for b, w in g2.out[pi][img] if b == a)
            else:
                pool = sorted(u for u, b in g2.inn[pi][img] if b == a)
        return [w for w in pool if w not in used[i] and g2.sig[i][w] == s]

    def consistent(i: int, v: int, w: int) -> bool:
        nxt, prv = (i + 1) % n, (i - 1) % n

        def image(level: int, x: int):
            if level == i and x == v:
                return w
            return phi[level].get(x)

        def preimage_known(level: int, y: int) -> bool:
            return (level == i and y == w) or y in used[level]

        for a, x in g1.out[i][v]:
            y = image(nxt, x)
            if y is not None and (a, y) not in g2.out[i][w]:
                return False
        for x, a in g1.inn[i][v]:
            y = image(prv, x)
            if y is not None and (y, a) not in g2.inn[i][w]:
                return False
        # the reverse direction: edges at w into already-mapped vertices must have preimages
        out_mapped = sum(1 for a, x in g1.out[i][v] if image(nxt, x) is not None)
        if out_mapped != sum(1 for a, y in g2.out[i][w] if preimage_known(nxt, y)):
            return False
        in_mapped = sum(1 for x, a in g1.inn[i][v] if image(prv, x) is not None)
        if in_mapped != sum(1 for y, a in g2.inn[i][w] if preimage_known(prv, y)):
            return False
        return True

    total = len(order)
    iters: list = [None] * total
    pos = 0
    deepest = 0
    nodes = 0
    while True:
        if pos == total:
            break
        if iters[pos] is None:
            iters[pos] = iter(candidates(pos))
        i, v = order[pos]
        advanced = False
        for w in iters[pos]:
            nodes += 1
            if nodes > node_budget:
                raise CapacityError(f"isomorphism search exceeded the node budget {node_budget}")
            if consistent(i, v, w):
                phi[i][v] = w
                used[i].add(w)
                pos += 1
                deepest = max(deepest, pos)
                advanced = True
                break
        if advanced:
            continue
        iters[pos] = None
        if pos == 0:
            fail_level = order[min(deepest, total - 1)][0]
            return IsomorphismResult(False, failed_level=fail_level,
                                     reason=f"no consistent bijection; search stalled at level {fail_level}",
                                     nodes=nodes)
        pos -= 1
        pi, pv = order[pos]
        used[pi].discard(phi[pi].pop(pv))

    mapping = [dict(sorted(m.items())) for m in phi]
    return IsomorphismResult(True, mapping=mapping, nodes=nodes,
                             label_linear=_label_linear(T1, T2, mapping))


def verify_mapping(T1: Trellis, T2: Trellis, mapping: Sequence[dict[int, int]]) -> bool:
    """Check that ``mapping`` is an isomorphism witness from T1 to T2."""
    if T1.depth != T2.depth or len(mapping) != T1.depth:
        return False
    n = T1.depth
    for i in range(n):
        m = mapping[i]
        if sorted(m) != list(range(len(T1.levels[i]))):
            return False
        if sorted(m.values()) != list(range(len(T2.levels[i]))):
            return False
    for i in range(1, n + 1):
        image = {Edge(mapping[i - 1][e.tail], e.symbol, mapping[i % n][e.head]) for e in T1.section(i)}
        if image != set(T2.section(i)):
            return False
    return True


def _label_linear(T1: Trellis, T2: Trellis, mapping: Sequence[dict[int, int]]) -> bool:
    for i, m in enumerate(mapping):
        if not m:
            continue
        xs = [T1.levels[i][v] for v in m]
        ys = [T2.levels[i][w] for w in m.values()]
        X = gf2.BitMatrix(xs, cols=len(xs[0]))
        Y = gf2.BitMatrix(ys, cols=len(ys[0]))
        rx, ry = gf2.rank(X), gf2.rank(Y)
        if not (rx == ry == gf2.rank(gf2.hstack(X, Y))):
            return False
    return True


# -- counting ------------------------------------------------------------------

@dataclass(frozen=True)
class Profile:
    vertex_counts: tuple[int, ...]          # |V_i|, i = 0..n-1
    edge_counts: tuple[int, ...]            # |E_i|, i = 1..n
    out_degrees: tuple[tuple[int, ...], ...]
    in_degrees: tuple[tuple[int, ...], ...]


def profile(T: Trellis) -> Profile:
    n = T.depth
    out = [[0] * len(level) for level in T.levels]
    inn = [[0] * len(level) for level in T.levels]
    for i in range(1, n + 1):
        for e in T.section(i):
            out[i - 1][e.tail] += 1
            inn[i % n][e.head] += 1
    return Profile(
        tuple(len(level) for level in T.levels),
        tuple(len(sec) for sec in T.edges),
        tuple(tuple(x) for x in out),
        tuple(tuple(x) for x in inn),
    )


# -- serialization -------------------------------------------------------------

def to_dict(T: Trellis) -> dict:
    return {
        "depth": T.depth,
        "levels": [[{"ordinal": o, "label": str(lab)} for o, lab in enumerate(level)] for level in T.levels],
        "edges": [[{"tail": e.tail, "symbol": e.symbol, "head": e.head} for e in sec] for sec in T.edges],
    }


def from_dict(data: dict) -> Trellis:
    try:
        depth = int(data["depth"])
        levels = []
        for i, level in enumerate(data["levels"]):
            ordinals = [int(v["ordinal"]) for v in level]
            if ordinals != list(range(len(level))):
                raise ParseError(f"level {i}: ordinals must be 0..{len(level) - 1} in order")
            levels.append([BitVector(v["label"]) for v in level])
        edges = [[(e["tail"], e["symbol"], e["head"]) for e in sec] for sec in data["edges"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed trellis JSON: {exc!r}") from exc
    return Trellis(depth, levels, edges)


def to_json(T: Trellis) -> str:
    return json.dumps(to_dict(T), sort_keys=True)


def from_json(text: str) -> Trellis:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    return from_dict(data)


def export_dot(T: Trellis, name: str = "trellis") -> str:
    """Graphviz text: a fixed header with one rank line per level, then vertices, edges, footer.

    Section-n edges wrap to level 0 and are drawn with ``constraint=false``.
    """
    n = T.depth
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=circle, fontsize=10];"]
    for i, level in enumerate(T.levels):
        members = " ".join(f"L{i}_{o};" for o in range(len(level)))
        lines.append(f"  {{ rank=same; {members} }}" if members else "  { rank=same; }")
    for i, level in enumerate(T.levels):
        for o, lab in enumerate(level):
            lines.append(f'  L{i}_{o} [label="{lab}"];')
    for i in range(1, n + 1):
        extra = ", constraint=false" if i == n else ""
        for e in T.section(i):
            lines.append(f'  L{i - 1}_{e.tail} -> L{i % n}_{e.head} [label="{e.symbol}"{extra}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_header_lines(depth: int) -> int:
    return 3 + depth
