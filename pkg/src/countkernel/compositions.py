"""Cut compositions and the parameter transformations built on them.

``sum_compose`` chains instances with equal minimum-cut size so the
composed count is the sum of the input counts.  ``exact_compose``
additionally attaches per-copy bundles of parallel terminal paths whose
cut choices scale each input's count by a distinct power of two, so a
single composed count encodes all input counts; ``extract_counts``
recovers them by repeated floor division.  The exact composition also
emits a constructive tree-decomposition witness showing the composed
treewidth stays within one of the inputs'.

The two transformations move counting hardness across problems:
minimum (s,t)-cuts map to size-k odd cycle transversals of a parity
gadget graph, and odd cycle transversals of nice instances map (two
for one) to vertex covers of a doubled graph whose budget exceeds its
matching number by exactly k.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import oracles
from .framework import (
    CompositionError,
    CompressionResult,
    CountingInstance,
    IntegrityError,
    LiftContext,
    PreconditionError,
    Ppt,
)
from .graphs import (
    Graph,
    TerminalPair,
    TreeDecomposition,
    chain_identify,
    connected_components,
    false_twin_blowup,
    induced_subgraph,
    ordered,
    subdivide_all_edges,
    validate_tree_decomposition,
)

MINCUT_TO_OCT = "mincut-to-oct"
OCT_TO_VC = "oct-to-vc"

CutInstance = tuple[Graph, TerminalPair]


def group_by_min_cut(instances: list[CutInstance]) -> dict[int, list[int]]:
    """Partition instance positions into classes of equal min-cut size."""
    classes: dict[int, list[int]] = {}
    for pos, (g, st) in enumerate(instances):
        classes.setdefault(oracles.min_cut_size(g, st), []).append(pos)
    return classes


def _common_cut_size(instances: list[CutInstance]) -> int:
    if not instances:
        raise CompositionError("cannot compose an empty instance list")
    sizes = {oracles.min_cut_size(g, st) for g, st in instances}
    if len(sizes) != 1:
        raise CompositionError(f"unequal min-cut sizes {sorted(sizes)}")
    return sizes.pop()


@dataclass(frozen=True, eq=False)
class SumComposition:
    graph: Graph
    terminals: TerminalPair
    cut_size: int
    vertex_maps: tuple[dict[int, int], ...]


def sum_compose(instances: list[CutInstance]) -> SumComposition:
    """Chain equal-cut-size instances; composed count = sum of counts.

    Rejects a common cut size of 0 for two or more inputs: the empty
    cut would be shared by every copy and the sum identity fails (each
    such input has count exactly 1 anyway).
    """
    k = _common_cut_size(instances)
    if k == 0 and len(instances) > 1:
        raise CompositionError("cut size 0 is not summable across copies")
    graph, terminals, maps = chain_identify(instances)
    return SumComposition(graph, terminals, k, tuple(maps))


# ---------------------------------------------------------------------------
# Minimum cut -> odd cycle transversal
# ---------------------------------------------------------------------------

def mincut_to_oct_reduce(inst: CountingInstance) -> CompressionResult:
    """Turn a cut instance into an odd-cycle-transversal instance.

    Components holding neither terminal are discarded; if the terminals
    then sit in different components the cut count is 1 and a constant
    instance with count 1 is emitted.  Otherwise every edge is
    subdivided (making all original-vertex walks even), every original
    vertex becomes k+1 twins so no small transversal can afford a whole
    class, and k+1 pendant edge pairs close one odd cycle per terminal
    path: x_j adjacent to all s-copies, y_j to all t-copies, with
    x_j y_j edges.
    """
    if inst.terminals is None:
        raise ValueError("cut instances need terminals")
    g, st = inst.graph, inst.terminals
    comps = connected_components(g)
    comp_s = next(c for c in comps if st.s in c)
    if st.t not in comp_s:
        reduced = CountingInstance(Graph.empty(1), None, 0, "solution-size")
        payload = {"branch": "separated", "k": "0"}
        return CompressionResult(reduced, LiftContext(MINCUT_TO_OCT, payload))

    kept, vmap = induced_subgraph(g, comp_s)
    s, t = vmap[st.s], vmap[st.t]
    k = oracles.min_cut_size(kept, TerminalPair(s, t))
    subdivided, _ = subdivide_all_edges(kept)
    blown, copy_of = false_twin_blowup(subdivided, range(kept.n), k + 1)

    base = blown.n
    xs = [base + j for j in range(k + 1)]
    ys = [base + k + 1 + j for j in range(k + 1)]
    edges = set(blown.edges)
    for j in range(k + 1):
        edges.add(ordered(xs[j], ys[j]))
        for si in copy_of[s]:
            edges.add(ordered(si, xs[j]))
        for ti in copy_of[t]:
            edges.add(ordered(ti, ys[j]))
    gprime = Graph(base + 2 * (k + 1), frozenset(edges))

    reduced = CountingInstance(gprime, None, k, "solution-size")
    payload = {"branch": "normal", "k": str(k)}
    return CompressionResult(reduced, LiftContext(MINCUT_TO_OCT, payload))


def mincut_to_oct_lift(ctx: LiftContext, count: int) -> int:
    ctx.expect(MINCUT_TO_OCT)
    return count


def mincut_to_oct_ppt() -> Ppt:
    return Ppt(MINCUT_TO_OCT, "min-st-cut", "odd-cycle-transversal",
               mincut_to_oct_reduce, mincut_to_oct_lift)


# ---------------------------------------------------------------------------
# Odd cycle transversal -> vertex cover
# ---------------------------------------------------------------------------

def two_copy_matching_graph(g: Graph) -> Graph:
    """Two disjoint copies of g plus the perfect matching between them."""
    edges = set()
    for u, v in g.edges:
        edges.add(ordered(u, v))
        edges.add(ordered(u + g.n, v + g.n))
    for v in range(g.n):
        edges.add(ordered(v, v + g.n))
    return Graph(2 * g.n, frozenset(edges))


def oct_to_vc_reduce(inst: CountingInstance, verify_nice: bool = False) -> CompressionResult:
    """Nice transversal instances to vertex covers, two covers per transversal.

    The output budget is n + k; the built-in perfect matching pins both
    the matching number and the cover LP value at n, so the derived
    parameter is exactly k.  Niceness (every transversal within budget
    leaves a connected graph) is the caller's obligation unless
    ``verify_nice`` is set.
    """
    if inst.param_kind != "solution-size" or inst.k is None:
        raise ValueError("transversal instances need a solution-size budget")
    g, k = inst.graph, inst.k
    if verify_nice and not oracles.is_nice_oct_instance(g, k):
        raise PreconditionError("instance is not nice: a small transversal disconnects it")
    reduced = CountingInstance(two_copy_matching_graph(g), None, g.n + k,
                               "k-minus-matching")
    payload = {"n": str(g.n), "k": str(k)}
    return CompressionResult(reduced, LiftContext(OCT_TO_VC, payload))


def oct_to_vc_lift(ctx: LiftContext, count: int) -> int:
    ctx.expect(OCT_TO_VC)
    if count % 2:
        raise IntegrityError("cover count of a doubled graph must be even")
    return count // 2


def oct_to_vc_ppt(verify_nice: bool = False) -> Ppt:
    def reduce(inst: CountingInstance) -> CompressionResult:
        return oct_to_vc_reduce(inst, verify_nice=verify_nice)

    return Ppt(OCT_TO_VC, "odd-cycle-transversal", "vertex-cover",
               reduce, oct_to_vc_lift)


# ---------------------------------------------------------------------------
# Exact composition
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ExactMetadata:
    """Bookkeeping that lets one composed count encode all input counts.

    ``exponents[i]`` is the power of two multiplying input i's count in
    the composed count; in the trivial branch the per-input answers are
    recorded directly instead.
    """

    branch: str
    ell: int
    m: int
    cut_size: int
    exponents: tuple[int, ...]
    recorded_answers: tuple[int, ...] | None = None
    gadget_edges: tuple[tuple, ...] | None = None

    def to_json(self) -> str:
        doc = {
            "branch": self.branch,
            "ell": self.ell,
            "m": self.m,
            "k": self.cut_size,
            "exponents": list(self.exponents),
        }
        if self.recorded_answers is not None:
            doc["recorded_answers"] = [str(a) for a in self.recorded_answers]
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExactMetadata":
        doc = json.loads(text)
        answers = doc.get("recorded_answers")
        return cls(
            branch=doc["branch"],
            ell=doc["ell"],
            m=doc["m"],
            cut_size=doc["k"],
            exponents=tuple(doc["exponents"]),
            recorded_answers=tuple(int(a) for a in answers) if answers is not None else None,
        )


@dataclass(frozen=True, eq=False)
class ExactComposition:
    graph: Graph
    terminals: TerminalPair
    metadata: ExactMetadata
    witness: TreeDecomposition


def _input_decomposition(g: Graph, supplied: TreeDecomposition | None) -> TreeDecomposition:
    if supplied is not None:
        check = validate_tree_decomposition(g, supplied)
        if not check.ok:
            raise ValueError(f"supplied decomposition invalid: {check.violation}")
        return supplied
    if g.n <= oracles.TREEWIDTH_LIMIT:
        return oracles.exact_treewidth(g)[1]
    node = "all"
    return TreeDecomposition(nodes=(node,), links=frozenset(),
                             bags={node: frozenset(range(g.n))})


def exact_compose(instances: list[CutInstance],
                  decompositions: list[TreeDecomposition | None] | None = None,
                  ) -> ExactComposition:
    """Compose equal-cut-size instances so every input count is recoverable.

    With ell inputs and m twice the largest input edge count, copy i
    gains m*(ell-1) internally disjoint terminal paths, the first
    m*(i-1) with three internal vertices and the rest with one.  A
    minimum composed cut picks one edge per path of one copy, giving
    composed count sum_i q_i * 2^(m*(i-1)) * 2^(m*(ell-1)).  When
    ell >= 2^(max edge count) the inputs are solved outright by oracle
    and recorded (trivial branch).  The returned witness decomposition
    is validated here at width at most max(2, max input width + 1).
    """
    k = _common_cut_size(instances)
    ell = len(instances)
    m_prime = max(g.m for g, _ in instances)
    m = 2 * m_prime
    exponents = tuple(m * (i - 1) + m * (ell - 1) for i in range(1, ell + 1))

    if ell >= 2 ** m_prime:
        answers = tuple(oracles.count_min_st_cuts(g, st)[0] for g, st in instances)
        meta = ExactMetadata("trivial", ell, m, k, exponents, recorded_answers=answers)
        graph = Graph.from_edges(2, [(0, 1)])
        terminals = TerminalPair(0, 1)
        node = "root"
        witness = TreeDecomposition(nodes=(node,), links=frozenset(),
                                    bags={node: frozenset({0, 1})})
        return ExactComposition(graph, terminals, meta, witness)

    if decompositions is None:
        decompositions = [None] * ell
    input_tds = [_input_decomposition(g, supplied)
                 for (g, _), supplied in zip(instances, decompositions)]

    chain, terminals, maps = chain_identify(instances)
    edges = set(chain.edges)
    next_vertex = chain.n
    gadget_edges: list[tuple] = []
    long_paths: list[list[tuple[int, int, int]]] = []
    short_paths: list[list[int]] = []
    for i in range(1, ell + 1):
        g_i, st_i = instances[i - 1]
        s_i = maps[i - 1][st_i.s]
        t_i = maps[i - 1][st_i.t]
        mine: list = []
        longs: list[tuple[int, int, int]] = []
        shorts: list[int] = []
        for _ in range(m * (i - 1)):
            x, y, z = next_vertex, next_vertex + 1, next_vertex + 2
            next_vertex += 3
            path = [ordered(s_i, x), ordered(x, y), ordered(y, z), ordered(z, t_i)]
            longs.append((x, y, z))
            mine.extend(path)
            edges.update(path)
        for _ in range(m * (ell - 1) - m * (i - 1)):
            x = next_vertex
            next_vertex += 1
            path = [ordered(s_i, x), ordered(x, t_i)]
            shorts.append(x)
            mine.extend(path)
            edges.update(path)
        gadget_edges.append(tuple(mine))
        long_paths.append(longs)
        short_paths.append(shorts)

    graph = Graph(next_vertex, frozenset(edges))
    meta = ExactMetadata("gadget", ell, m, k, exponents,
                         gadget_edges=tuple(gadget_edges))
    witness = _witness_decomposition(instances, input_tds, maps, long_paths, short_paths)

    check = validate_tree_decomposition(graph, witness)
    if not check.ok:
        raise RuntimeError(f"witness decomposition invalid: {check.violation}")
    bound = max(2, max(td.width for td in input_tds) + 1)
    if check.width > bound:
        raise RuntimeError(f"witness width {check.width} exceeds bound {bound}")
    return ExactComposition(graph, terminals, meta, witness)


def _witness_decomposition(instances, input_tds, maps, long_paths, short_paths,
                           ) -> TreeDecomposition:
    """Constructive decomposition of the composed graph.

    Per copy: relabel the input decomposition, add the chained t_i to
    every bag, hang one 3-vertex bag per short path off a node holding
    s_i, and a 3-bag path per long path; then string the copies
    together at those anchor nodes.
    """
    nodes: list = []
    links: set[frozenset] = set()
    bags: dict = {}
    anchors: list = []
    ell = len(instances)
    for i in range(1, ell + 1):
        g_i, st_i = instances[i - 1]
        vmap = maps[i - 1]
        s_i, t_i = vmap[st_i.s], vmap[st_i.t]
        td = input_tds[i - 1]
        rename = {node: ("g", i, node) for node in td.nodes}
        for node in td.nodes:
            nodes.append(rename[node])
            bags[rename[node]] = frozenset(vmap[v] for v in td.bags[node]) | {t_i}
        for link in td.links:
            a, b = list(link)
            links.add(frozenset({rename[a], rename[b]}))
        anchor = next(rename[node] for node in td.nodes if s_i in bags[rename[node]])
        anchors.append(anchor)
        for j, x in enumerate(short_paths[i - 1]):
            a = ("a", i, j)
            nodes.append(a)
            bags[a] = frozenset({s_i, x, t_i})
            links.add(frozenset({anchor, a}))
        for j, (x, y, z) in enumerate(long_paths[i - 1]):
            a, b, c = ("A", i, j), ("B", i, j), ("C", i, j)
            nodes.extend([a, b, c])
            bags[a] = frozenset({s_i, x, t_i})
            bags[b] = frozenset({x, y, t_i})
            bags[c] = frozenset({y, z, t_i})
            links.add(frozenset({anchor, a}))
            links.add(frozenset({a, b}))
            links.add(frozenset({b, c}))
    for i in range(1, ell):
        links.add(frozenset({anchors[i - 1], anchors[i]}))
    return TreeDecomposition(nodes=tuple(nodes), links=frozenset(links), bags=bags)


def extract_counts(meta: ExactMetadata, composed_count: int) -> list[int]:
    """Recover all input counts from the composed count.

    Walks the exponents from the largest down, taking floor quotients;
    a nonzero final residue means the supplied count was wrong.  In the
    trivial branch the recorded answers are returned and the count is
    ignored.
    """
    if meta.branch == "trivial":
        if meta.recorded_answers is None:
            raise IntegrityError("trivial-branch metadata without recorded answers")
        return list(meta.recorded_answers)
    remaining = composed_count
    out = [0] * meta.ell
    for i in range(meta.ell, 0, -1):
        coefficient = 1 << meta.exponents[i - 1]
        out[i - 1] = remaining // coefficient
        remaining -= out[i - 1] * coefficient
    if remaining:
        raise IntegrityError(f"extraction left a residue of {remaining}")
    return out
