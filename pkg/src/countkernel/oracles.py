"""Exponential-time ground-truth counters.

Everything here is deliberately dumb: exact enumeration (with cheap
pruning only), correctness over speed.  These oracles define ground
truth for the kernels, the compositions, and the parameter
transformations, so none of them may share a clever identity with the
code they check.

Enumerations refuse inputs whose candidate space exceeds
``SUBSET_LIMIT`` rather than hanging; treewidth is capped at 12
vertices.  All counts are exact Python integers.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import comb

from .graphs import Graph, TerminalPair, TreeDecomposition

SUBSET_LIMIT = 1 << 26
TREEWIDTH_LIMIT = 12


class OracleSizeError(Exception):
    """Enumeration space too large for a brute-force oracle."""


def _adjacency_masks(g: Graph) -> list[int]:
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _subset_budget(n: int, k: int) -> int:
    return sum(comb(n, j) for j in range(min(n, k) + 1))


def _guard(candidates: int, what: str) -> None:
    if candidates > SUBSET_LIMIT:
        raise OracleSizeError(f"{what}: {candidates} candidates exceed limit {SUBSET_LIMIT}")


def _is_bipartite_masked(adj: list[int], n: int, removed: int) -> bool:
    color = [-1] * n
    for root in range(n):
        if removed >> root & 1 or color[root] != -1:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            nbrs = adj[u] & ~removed
            while nbrs:
                v = (nbrs & -nbrs).bit_length() - 1
                nbrs &= nbrs - 1
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    stack.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def _is_connected_masked(adj: list[int], n: int, removed: int) -> bool:
    alive = [v for v in range(n) if not removed >> v & 1]
    if len(alive) <= 1:
        return True
    seen = 1 << alive[0]
    stack = [alive[0]]
    count = 1
    while stack:
        u = stack.pop()
        nbrs = adj[u] & ~removed & ~seen
        while nbrs:
            v = (nbrs & -nbrs).bit_length() - 1
            nbrs &= nbrs - 1
            seen |= 1 << v
            count += 1
            stack.append(v)
    return count == len(alive)


# ---------------------------------------------------------------------------
# Vertex covers
# ---------------------------------------------------------------------------

def count_vertex_covers(g: Graph, k: int) -> int:
    """Number of vertex covers of size at most k."""
    if k < 0:
        return 0
    _guard(_subset_budget(g.n, k), "count_vertex_covers")
    edge_masks = [(1 << u) | (1 << v) for u, v in g.edges]
    total = 0
    for size in range(min(k, g.n) + 1):
        for subset in combinations(range(g.n), size):
            mask = 0
            for v in subset:
                mask |= 1 << v
            if all(mask & em for em in edge_masks):
                total += 1
    return total


def count_vertex_covers_of_size(g: Graph, size: int) -> int:
    """Number of vertex covers of size exactly ``size``."""
    if size < 0 or size > g.n:
        return 0
    _guard(comb(g.n, size), "count_vertex_covers_of_size")
    edge_masks = [(1 << u) | (1 << v) for u, v in g.edges]
    total = 0
    for subset in combinations(range(g.n), size):
        mask = 0
        for v in subset:
            mask |= 1 << v
        if all(mask & em for em in edge_masks):
            total += 1
    return total


def count_minimal_vertex_covers(g: Graph, k: int) -> int:
    """Number of minimal vertex covers of size at most k.

    A cover is minimal when no proper subset covers; equivalently every
    chosen vertex keeps a neighbor outside the cover.
    """
    if k < 0:
        return 0
    _guard(_subset_budget(g.n, k), "count_minimal_vertex_covers")
    edge_masks = [(1 << u) | (1 << v) for u, v in g.edges]
    adj = _adjacency_masks(g)
    total = 0
    for size in range(min(k, g.n) + 1):
        for subset in combinations(range(g.n), size):
            mask = 0
            for v in subset:
                mask |= 1 << v
            if not all(mask & em for em in edge_masks):
                continue
            if all(adj[v] & ~mask for v in subset):
                total += 1
    return total


# ---------------------------------------------------------------------------
# Odd cycle transversals
# ---------------------------------------------------------------------------

def count_odd_cycle_transversals(g: Graph, k: int) -> int:
    """Number of sets S, |S| <= k, whose removal leaves a bipartite graph."""
    if k < 0:
        return 0
    _guard(_subset_budget(g.n, k), "count_odd_cycle_transversals")
    adj = _adjacency_masks(g)
    total = 0
    for size in range(min(k, g.n) + 1):
        for subset in combinations(range(g.n), size):
            removed = 0
            for v in subset:
                removed |= 1 << v
            if _is_bipartite_masked(adj, g.n, removed):
                total += 1
    return total


def is_nice_oct_instance(g: Graph, k: int) -> bool:
    """True iff every transversal of size at most k leaves the graph connected.

    The null graph does not count as connected here: a transversal that
    deletes every vertex leaves nothing to 2-color, which is exactly
    the degenerate case the downstream doubling transformation cannot
    survive.
    """
    if k < 0:
        return True
    _guard(_subset_budget(g.n, k), "is_nice_oct_instance")
    adj = _adjacency_masks(g)
    for size in range(min(k, g.n) + 1):
        for subset in combinations(range(g.n), size):
            removed = 0
            for v in subset:
                removed |= 1 << v
            if _is_bipartite_masked(adj, g.n, removed):
                if size == g.n or not _is_connected_masked(adj, g.n, removed):
                    return False
    return True


# ---------------------------------------------------------------------------
# Minimum (s,t)-cuts
# ---------------------------------------------------------------------------

def min_cut_size(g: Graph, st: TerminalPair) -> int:
    """Minimum number of edges separating s from t (0 when already apart).

    Computed by augmenting-path max-flow with unit capacities; by
    Menger's theorem this equals the number of edge-disjoint s-t paths.
    """
    st.check_in(g)
    cap: dict[tuple[int, int], int] = {}
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        cap[(u, v)] = 1
        cap[(v, u)] = 1
        adj[u].append(v)
        adj[v].append(u)
    flow = 0
    while True:
        parent = [-1] * g.n
        parent[st.s] = st.s
        queue = [st.s]
        head = 0
        while head < len(queue) and parent[st.t] == -1:
            u = queue[head]
            head += 1
            for v in adj[u]:
                if parent[v] == -1 and cap[(u, v)] > 0:
                    parent[v] = u
                    queue.append(v)
        if parent[st.t] == -1:
            return flow
        v = st.t
        while v != st.s:
            u = parent[v]
            cap[(u, v)] -= 1
            cap[(v, u)] += 1
            v = u
        flow += 1


def count_min_st_cuts(g: Graph, st: TerminalPair) -> tuple[int, int]:
    """Count of edge sets of exactly minimum-cut size that separate s,t.

    Returns ``(count, cut_size)``; the empty cut gives count 1 when the
    terminals are already separated.  Every counted subset is verified
    to separate by an explicit connectivity re-check.
    """
    st.check_in(g)
    k = min_cut_size(g, st)
    if k == 0:
        return 1, 0
    edges = g.sorted_edges()
    m = len(edges)
    _guard(comb(m, k), "count_min_st_cuts")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for idx, (u, v) in enumerate(edges):
        adj[u].append((v, idx))
        adj[v].append((u, idx))
    removed = bytearray(m)
    seen = bytearray(g.n)
    count = 0
    for cut in combinations(range(m), k):
        for idx in cut:
            removed[idx] = 1
        for i in range(g.n):
            seen[i] = 0
        seen[st.s] = 1
        stack = [st.s]
        reached = False
        while stack:
            u = stack.pop()
            if u == st.t:
                reached = True
                break
            for v, idx in adj[u]:
                if not removed[idx] and not seen[v]:
                    seen[v] = 1
                    stack.append(v)
        if not reached:
            count += 1
        for idx in cut:
            removed[idx] = 0
    return count, k


# ---------------------------------------------------------------------------
# Matching and the vertex-cover LP
# ---------------------------------------------------------------------------

MATCHING_LIMIT = 26


def max_matching_size(g: Graph) -> int:
    """Maximum matching size by exhaustive branching over vertices."""
    if g.n > MATCHING_LIMIT:
        raise OracleSizeError(
            f"max_matching_size limited to {MATCHING_LIMIT} vertices, got {g.n}")
    adj = _adjacency_masks(g)
    memo: dict[int, int] = {}

    def rec(avail: int) -> int:
        if not avail:
            return 0
        cached = memo.get(avail)
        if cached is not None:
            return cached
        u = (avail & -avail).bit_length() - 1
        rest = avail & ~(1 << u)
        best = rec(rest)
        nbrs = adj[u] & rest
        while nbrs:
            v = (nbrs & -nbrs).bit_length() - 1
            nbrs &= nbrs - 1
            best = max(best, 1 + rec(rest & ~(1 << v)))
        memo[avail] = best
        return best

    return rec((1 << g.n) - 1)


def lp_vc_value(g: Graph) -> Fraction:
    """Optimum of the vertex-cover LP (half-integral).

    Equals half the minimum vertex cover of the bipartite double cover,
    which by Koenig duality equals half its maximum matching.
    """
    # Double cover: left copy u pairs with right copy v for each edge {u,v}.
    adj_left: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        adj_left[u].append(v)
        adj_left[v].append(u)
    match_right = [-1] * g.n

    def augment(u: int, visited: list[bool]) -> bool:
        for v in adj_left[u]:
            if not visited[v]:
                visited[v] = True
                if match_right[v] == -1 or augment(match_right[v], visited):
                    match_right[v] = u
                    return True
        return False

    matched = 0
    for u in range(g.n):
        if augment(u, [False] * g.n):
            matched += 1
    return Fraction(matched, 2)


# ---------------------------------------------------------------------------
# Exact treewidth
# ---------------------------------------------------------------------------

def exact_treewidth(g: Graph) -> tuple[int, TreeDecomposition]:
    """Treewidth by exhaustive search over elimination orderings.

    Enforces n <= 12.  Also emits a witness decomposition built from an
    optimal ordering; the witness always validates at the returned
    width.  The empty graph yields width 0 with a single empty bag.
    """
    n = g.n
    if n > TREEWIDTH_LIMIT:
        raise OracleSizeError(f"exact_treewidth limited to {TREEWIDTH_LIMIT} vertices, got {n}")
    if n == 0:
        td = TreeDecomposition(nodes=("root",), links=frozenset(), bags={"root": frozenset()})
        return 0, td
    adj = _adjacency_masks(g)
    full = (1 << n) - 1

    def elim_degree(done: int, v: int) -> int:
        # Neighbors of v in the fill graph: vertices outside done reachable
        # from v through done.
        seen = 1 << v
        stack = [v]
        out = 0
        while stack:
            u = stack.pop()
            nbrs = adj[u] & ~seen
            while nbrs:
                w = (nbrs & -nbrs).bit_length() - 1
                nbrs &= nbrs - 1
                seen |= 1 << w
                if done >> w & 1:
                    stack.append(w)
                else:
                    out |= 1 << w
        return bin(out).count("1")

    memo: dict[int, int] = {full: -1}

    def best(done: int) -> int:
        cached = memo.get(done)
        if cached is not None:
            return cached
        result = n
        todo = full & ~done
        while todo:
            v = (todo & -todo).bit_length() - 1
            todo &= todo - 1
            result = min(result, max(elim_degree(done, v), best(done | (1 << v))))
        memo[done] = result
        return result

    width = best(0)

    order: list[int] = []
    done = 0
    while done != full:
        todo = full & ~done
        while todo:
            v = (todo & -todo).bit_length() - 1
            todo &= todo - 1
            if max(elim_degree(done, v), best(done | (1 << v))) == best(done):
                order.append(v)
                done |= 1 << v
                break

    # Standard clique-tree construction along the ordering, with fill-in.
    position = {v: i for i, v in enumerate(order)}
    work = [set() for _ in range(n)]
    for u, v in g.edges:
        work[u].add(v)
        work[v].add(u)
    bags: dict[int, frozenset[int]] = {}
    links: set[frozenset] = set()
    for idx, v in enumerate(order):
        up = {w for w in work[v] if position[w] > idx}
        bags[v] = frozenset({v} | up)
        for a in up:
            work[a].discard(v)
            for b in up:
                if b != a:
                    work[a].add(b)
        if up:
            parent = min(up, key=position.__getitem__)
        elif idx + 1 < n:
            parent = order[idx + 1]
        else:
            parent = None
        if parent is not None:
            links.add(frozenset({v, parent}))
    td = TreeDecomposition(nodes=tuple(order), links=frozenset(links), bags=bags)
    return width, td


# ---------------------------------------------------------------------------
# Instance generation
# ---------------------------------------------------------------------------

def random_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p) with a fixed edge scan order; deterministic per seed."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must be in [0, 1]")
    rng = random.Random(seed)
    edges = set()
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph(n, frozenset(edges))
