"""Finite simple undirected graphs, graph-file I/O, and the gadget
transformations shared by the kernels and the cut compositions.

Vertices are dense 0-based indices.  The text file format is 1-based
(see ``parse_graph``).  All types are immutable values; every
transformation returns a new graph together with explicit provenance
maps, so callers never rely on index arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

Edge = tuple[int, int]


class ParseError(ValueError):
    """Malformed graph file; carries the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class BlowupError(ValueError):
    """Raised when a false-twin blow-up is requested for adjacent targets."""


def ordered(u: int, v: int) -> Edge:
    """Normalize an edge to (min, max) form."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Invariants enforced at construction: no self-loops, every endpoint
    below ``n``.  Duplicate edges cannot be represented (``edges`` is a
    set of normalized pairs).
    """

    n: int
    edges: frozenset[Edge]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label tuple must have one entry per vertex")

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[Sequence[int]],
                   labels: Sequence[str] | None = None) -> "Graph":
        edges = frozenset(ordered(u, v) for u, v in pairs)
        return cls(n, edges, tuple(labels) if labels is not None else None)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, frozenset())

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ordered(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.adjacency[v]]


@dataclass(frozen=True)
class TerminalPair:
    """Two distinct terminal vertices of an owning graph."""

    s: int
    t: int

    def __post_init__(self):
        if self.s == self.t:
            raise ValueError("terminals must be distinct")
        if self.s < 0 or self.t < 0:
            raise ValueError("terminals must be nonnegative indices")

    def check_in(self, g: Graph) -> None:
        if self.s >= g.n or self.t >= g.n:
            raise ValueError(f"terminals ({self.s},{self.t}) out of range for n={g.n}")


@dataclass(frozen=True)
class ParsedGraph:
    """Result of parsing a graph file: graph plus optional records."""

    graph: Graph
    terminals: TerminalPair | None = None
    k: int | None = None


@dataclass(frozen=True, eq=False)
class TreeDecomposition:
    """Tree of bags over the vertices of a decomposed graph.

    ``links`` are unordered pairs of node ids; ``bags`` maps every node
    id to a vertex subset.  Validity is checked by
    ``validate_tree_decomposition``, never assumed.
    """

    nodes: tuple
    links: frozenset[frozenset]
    bags: Mapping

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def to_jsonable(self) -> dict:
        node_ix = {node: i for i, node in enumerate(self.nodes)}
        return {
            "nodes": [repr(node) for node in self.nodes],
            "links": sorted(sorted(node_ix[x] for x in link) for link in self.links),
            "bags": [sorted(self.bags[node]) for node in self.nodes],
        }


@dataclass(frozen=True)
class TdCheck:
    """Outcome of validating a tree decomposition."""

    ok: bool
    violation: str | None
    width: int


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------

def parse_graph(text: str | bytes) -> ParsedGraph:
    """Parse the graph file format.

    One record per line: ``c <comment>``; ``p <n> <m>`` exactly once and
    first; ``e <u> <v>`` with 1-based endpoints, m times; optional
    ``t <s> <t>``; optional ``k <value>``.  Blank lines are ignored.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = None
    declared_m = 0
    edges: set[Edge] = set()
    terminals: TerminalPair | None = None
    k: int | None = None
    last_line = 0

    def ints(parts: list[str], want: int, line: int) -> list[int]:
        if len(parts) != want:
            raise ParseError(line, f"expected {want} fields, got {len(parts)}")
        try:
            return [int(p) for p in parts]
        except ValueError:
            raise ParseError(line, f"non-integer field in {parts!r}") from None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        last_line = line_no
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        kind, *rest = line.split()
        if kind == "p":
            if n is not None:
                raise ParseError(line_no, "duplicate p record")
            n, declared_m = ints(rest, 2, line_no)
            if n < 0 or declared_m < 0:
                raise ParseError(line_no, "negative counts in p record")
            continue
        if n is None:
            raise ParseError(line_no, f"record '{kind}' before p record")
        if kind == "e":
            u, v = ints(rest, 2, line_no)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(line_no, f"endpoint out of range 1..{n}")
            if u == v:
                raise ParseError(line_no, f"self-loop at vertex {u}")
            e = ordered(u - 1, v - 1)
            if e in edges:
                raise ParseError(line_no, f"duplicate edge {u} {v}")
            edges.add(e)
        elif kind == "t":
            s, t = ints(rest, 2, line_no)
            if not (1 <= s <= n and 1 <= t <= n):
                raise ParseError(line_no, f"terminal out of range 1..{n}")
            if s == t:
                raise ParseError(line_no, "terminals must be distinct")
            terminals = TerminalPair(s - 1, t - 1)
        elif kind == "k":
            (value,) = ints(rest, 1, line_no)
            if value < 0:
                raise ParseError(line_no, "parameter must be nonnegative")
            k = value
        else:
            raise ParseError(line_no, f"unknown record type '{kind}'")

    if n is None:
        raise ParseError(max(last_line, 1), "missing p record")
    if len(edges) != declared_m:
        raise ParseError(max(last_line, 1),
                         f"p record declares {declared_m} edges, found {len(edges)}")
    return ParsedGraph(Graph(n, frozenset(edges)), terminals, k)


def serialize_graph(g: Graph, terminals: TerminalPair | None = None,
                    k: int | None = None, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {part}" for part in comment.splitlines())
    lines.append(f"p {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.sorted_edges())
    if terminals is not None:
        lines.append(f"t {terminals.s + 1} {terminals.t + 1}")
    if k is not None:
        lines.append(f"k {k}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Transformations
# ---------------------------------------------------------------------------

def subdivide_all_edges(g: Graph) -> tuple[Graph, dict[Edge, int]]:
    """Subdivide every edge once.

    Returns the new graph on n+m vertices (originals keep their indices)
    and the map from each original edge to its subdivision vertex.
    """
    edge_vertex: dict[Edge, int] = {}
    new_edges: set[Edge] = set()
    next_index = g.n
    for u, v in g.sorted_edges():
        a = next_index
        next_index += 1
        edge_vertex[(u, v)] = a
        new_edges.add(ordered(u, a))
        new_edges.add(ordered(v, a))
    return Graph(g.n + g.m, frozenset(new_edges)), edge_vertex


def false_twin_blowup(g: Graph, targets: Iterable[int],
                      copies: int) -> tuple[Graph, dict[int, tuple[int, ...]]]:
    """Replace each target vertex by ``copies`` pairwise non-adjacent twins.

    Each twin inherits exactly the target's neighborhood.  Rejects
    adjacent targets: copy-to-copy adjacency would be ambiguous there.
    Returns the new graph and the map from every original vertex to its
    copy tuple (singleton for non-targets).
    """
    target_set = set(targets)
    if copies <= 0:
        raise ValueError("copies must be positive")
    for v in target_set:
        if not 0 <= v < g.n:
            raise ValueError(f"target {v} out of range")
    for u, v in g.edges:
        if u in target_set and v in target_set:
            raise BlowupError(f"targets {u} and {v} are adjacent")

    copy_of: dict[int, tuple[int, ...]] = {}
    next_index = 0
    for v in range(g.n):
        width = copies if v in target_set else 1
        copy_of[v] = tuple(range(next_index, next_index + width))
        next_index += width
    new_edges = set()
    for u, v in g.edges:
        for cu in copy_of[u]:
            for cv in copy_of[v]:
                new_edges.add(ordered(cu, cv))
    return Graph(next_index, frozenset(new_edges)), copy_of


def add_isolated(g: Graph, t: int) -> Graph:
    if t < 0:
        raise ValueError("number of new vertices must be nonnegative")
    return Graph(g.n + t, g.edges, None)


def chain_identify(instances: Sequence[tuple[Graph, TerminalPair]],
                   ) -> tuple[Graph, TerminalPair, list[dict[int, int]]]:
    """Glue instances into a chain by identifying t_i with s_{i+1}.

    Returns the chained graph, the terminal pair (s of the first input,
    t of the last), and one vertex map per input.
    """
    if not instances:
        raise ValueError("need at least one instance")
    for g, st in instances:
        st.check_in(g)
    maps: list[dict[int, int]] = []
    edges: set[Edge] = set()
    next_index = 0
    prev_t_image: int | None = None
    for g, st in instances:
        vmap: dict[int, int] = {}
        if prev_t_image is not None:
            vmap[st.s] = prev_t_image
        for v in range(g.n):
            if v not in vmap:
                vmap[v] = next_index
                next_index += 1
        for u, v in g.edges:
            edges.add(ordered(vmap[u], vmap[v]))
        maps.append(vmap)
        prev_t_image = vmap[st.t]
    s = maps[0][instances[0][1].s]
    t = maps[-1][instances[-1][1].t]
    return Graph(next_index, frozenset(edges)), TerminalPair(s, t), maps


# ---------------------------------------------------------------------------
# Structure checks
# ---------------------------------------------------------------------------

def is_bipartite(g: Graph) -> tuple[bool, tuple]:
    """2-colorability test with an independently checkable witness.

    Returns ``(True, ("coloring", colors))`` with one color per vertex,
    or ``(False, ("odd_closed_walk", walk))`` where ``walk`` is a closed
    walk with an odd number of edges.
    """
    color = [-1] * g.n
    parent = [-1] * g.n
    adj = g.adjacency
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            u = queue.pop()
            for v in adj[u]:
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    parent[v] = u
                    queue.append(v)
                elif color[v] == color[u]:
                    walk = _odd_walk(u, v, parent)
                    return False, ("odd_closed_walk", tuple(walk))
    return True, ("coloring", tuple(color))


def _odd_walk(u: int, v: int, parent: list[int]) -> list[int]:
    # Join the two tree paths to the root; parity of the colors makes the
    # resulting closed walk odd.
    up, vp = [u], [v]
    while parent[up[-1]] != -1:
        up.append(parent[up[-1]])
    while parent[vp[-1]] != -1:
        vp.append(parent[vp[-1]])
    return list(reversed(up)) + vp


def connected_components(g: Graph, removed: frozenset[int] = frozenset()) -> list[set[int]]:
    seen: set[int] = set(removed)
    comps = []
    adj = g.adjacency
    for start in range(g.n):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    comp.add(v)
                    stack.append(v)
        comps.append(comp)
    return comps


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``keep``; returns the map old index -> new index."""
    kept = sorted(set(keep))
    vmap = {v: i for i, v in enumerate(kept)}
    edges = frozenset(ordered(vmap[u], vmap[v])
                      for u, v in g.edges if u in vmap and v in vmap)
    return Graph(len(kept), edges), vmap


def validate_tree_decomposition(g: Graph, td: TreeDecomposition) -> TdCheck:
    """Check both decomposition conditions and that the tree is a tree.

    Violations are reported as return values (first one found), not
    raised.
    """
    width = td.width
    nodes = list(td.nodes)
    if not nodes:
        return TdCheck(False, "decomposition has no nodes", width)
    node_set = set(nodes)
    if len(node_set) != len(nodes):
        return TdCheck(False, "duplicate node ids", width)
    if set(td.bags) != node_set:
        return TdCheck(False, "bags do not match the node set", width)

    adj: dict = {node: [] for node in nodes}
    for link in td.links:
        pair = list(link)
        if len(pair) != 2 or any(x not in node_set for x in pair):
            return TdCheck(False, f"bad tree edge {pair}", width)
        a, b = pair
        adj[a].append(b)
        adj[b].append(a)
    if len(td.links) != len(nodes) - 1:
        return TdCheck(False, "tree edge count is not node count minus one", width)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        for b in adj[stack.pop()]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    if len(seen) != len(nodes):
        return TdCheck(False, "tree is not connected", width)

    for node in nodes:
        for v in td.bags[node]:
            if not 0 <= v < g.n:
                return TdCheck(False, f"bag of {node!r} references vertex {v}", width)
    for u, v in g.sorted_edges():
        if not any(u in td.bags[node] and v in td.bags[node] for node in nodes):
            return TdCheck(False, f"edge ({u},{v}) is in no bag", width)
    for v in range(g.n):
        trace = [node for node in nodes if v in td.bags[node]]
        if not trace:
            return TdCheck(False, f"vertex {v} is in no bag", width)
        trace_set = set(trace)
        reached = {trace[0]}
        stack = [trace[0]]
        while stack:
            for b in adj[stack.pop()]:
                if b in trace_set and b not in reached:
                    reached.add(b)
                    stack.append(b)
        if len(reached) != len(trace):
            return TdCheck(False, f"bags containing vertex {v} are disconnected", width)
    return TdCheck(True, None, width)
