import random
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from countkernel.graphs import Graph, TerminalPair, validate_tree_decomposition
from countkernel.oracles import (
    OracleSizeError,
    count_min_st_cuts,
    count_minimal_vertex_covers,
    count_odd_cycle_transversals,
    count_vertex_covers,
    count_vertex_covers_of_size,
    exact_treewidth,
    is_nice_oct_instance,
    lp_vc_value,
    max_matching_size,
    min_cut_size,
    random_graph,
)

K3 = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
EDGE = Graph.from_edges(2, [(0, 1)])
K4 = Graph.from_edges(4, list(combinations(range(4), 2)))
C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
C5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])


def small_graphs(count=60, nmax=7, seed=123):
    rng = random.Random(seed)
    return [random_graph(rng.randint(1, nmax), rng.choice((0.2, 0.4, 0.7)),
                         rng.randrange(10**6)) for _ in range(count)]


def test_count_vertex_covers_examples():
    assert count_vertex_covers(Graph.empty(3), 2) == 7
    assert count_vertex_covers(EDGE, 1) == 2
    # all 8 subsets of K3: the three 2-subsets cover, nothing smaller does
    assert count_vertex_covers(K3, 2) == 3


def test_count_vertex_covers_monotone_and_edgeless():
    rng = random.Random(1)
    for g in small_graphs(30):
        previous = 0
        for k in range(g.n + 1):
            value = count_vertex_covers(g, k)
            assert value >= previous
            previous = value
        if g.m == 0:
            k = rng.randint(0, g.n)
            assert count_vertex_covers(g, k) == sum(comb(g.n, j) for j in range(k + 1))


def test_count_vertex_covers_of_size_partitions_total():
    for g in small_graphs(20):
        k = min(g.n, 3)
        assert count_vertex_covers(g, k) == sum(
            count_vertex_covers_of_size(g, i) for i in range(k + 1))


def test_count_minimal_vertex_covers_examples():
    assert count_minimal_vertex_covers(EDGE, 1) == 2
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    # center alone, or all three leaves
    assert count_minimal_vertex_covers(star, 3) == 2
    assert count_minimal_vertex_covers(Graph.empty(5), 4) == 1


def test_minimal_never_exceeds_all_covers():
    for g in small_graphs(40):
        for k in (1, 3):
            assert count_minimal_vertex_covers(g, k) <= count_vertex_covers(g, k)


def test_count_oct_examples():
    assert count_odd_cycle_transversals(C4, 2) == 1 + 4 + 6
    assert count_odd_cycle_transversals(C5, 0) == 0
    # each single vertex of K3 leaves one edge
    assert count_odd_cycle_transversals(K3, 1) == 3


def test_min_cut_examples():
    assert min_cut_size(EDGE, TerminalPair(0, 1)) == 1
    two_parts = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert min_cut_size(two_parts, TerminalPair(0, 2)) == 0
    assert min_cut_size(K4, TerminalPair(0, 3)) == 3


def test_count_min_st_cuts_examples():
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert count_min_st_cuts(path, TerminalPair(0, 2)) == (2, 1)
    two_parts = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert count_min_st_cuts(two_parts, TerminalPair(0, 2)) == (1, 0)
    chain = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    # every single edge of the 4-edge path separates the ends
    assert count_min_st_cuts(chain, TerminalPair(0, 4)) == (4, 1)


def test_min_cut_equals_edge_disjoint_paths():
    # Menger cross-check: flow value vs exhaustive count of disjoint paths
    # is implied by construction; spot-check against cut enumerations.
    rng = random.Random(9)
    for _ in range(25):
        n = rng.randint(2, 6)
        g = random_graph(n, 0.5, rng.randrange(10**6))
        s, t = rng.sample(range(n), 2)
        size = min_cut_size(g, TerminalPair(s, t))
        assert count_min_st_cuts(g, TerminalPair(s, t))[0] >= 1
        if size:
            # no smaller edge set separates
            edges = g.sorted_edges()
            for cut in combinations(range(len(edges)), size - 1):
                kept = [e for i, e in enumerate(edges) if i not in cut]
                reach = {s}
                frontier = [s]
                while frontier:
                    u = frontier.pop()
                    for a, b in kept:
                        for x, y in ((a, b), (b, a)):
                            if x == u and y not in reach:
                                reach.add(y)
                                frontier.append(y)
                assert t in reach


def test_matching_examples():
    assert max_matching_size(C4) == 2
    assert max_matching_size(EDGE) == 1
    assert max_matching_size(Graph.empty(4)) == 0
    assert max_matching_size(K4) == 2
    assert max_matching_size(C5) == 2


def test_lp_examples():
    assert lp_vc_value(C5) == Fraction(5, 2)
    assert lp_vc_value(EDGE) == 1
    assert lp_vc_value(K3) == Fraction(3, 2)


def _min_vertex_cover_size(g):
    for k in range(g.n + 1):
        if count_vertex_covers(g, k):
            return k
    return g.n


def test_matching_lp_cover_sandwich():
    for g in small_graphs(40):
        mu = max_matching_size(g)
        lp = lp_vc_value(g)
        vc = _min_vertex_cover_size(g)
        assert mu <= lp <= vc <= 2 * lp


def test_exact_treewidth_examples():
    tree = Graph.from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    assert exact_treewidth(tree)[0] == 1
    assert exact_treewidth(C4)[0] == 2
    assert exact_treewidth(K4)[0] == 3
    assert exact_treewidth(Graph.empty(3))[0] == 0
    assert exact_treewidth(Graph.empty(0))[0] == 0


def test_exact_treewidth_witness_validates():
    rng = random.Random(21)
    for _ in range(25):
        g = random_graph(rng.randint(1, 8), rng.choice((0.3, 0.5, 0.8)),
                         rng.randrange(10**6))
        width, td = exact_treewidth(g)
        check = validate_tree_decomposition(g, td)
        assert check.ok, check.violation
        assert check.width == width


def test_exact_treewidth_size_guard():
    with pytest.raises(OracleSizeError):
        exact_treewidth(Graph.empty(13))


def test_nice_instance_examples():
    assert is_nice_oct_instance(K3, 1)
    two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2),
                                         (3, 4), (4, 5), (3, 5)])
    assert not is_nice_oct_instance(two_triangles, 2)
    assert is_nice_oct_instance(C5, 0)
    # deleting every vertex leaves the null graph, which does not count
    assert not is_nice_oct_instance(EDGE, 2)


def test_random_graph_determinism_and_extremes():
    assert random_graph(5, 0.0, 42).m == 0
    assert random_graph(5, 1.0, 42).m == 10
    assert random_graph(4, 0.5, 7) == random_graph(4, 0.5, 7)
    assert random_graph(6, 0.5, 1) != random_graph(6, 0.5, 2)


def test_oracle_size_guards():
    big = Graph.empty(64)
    with pytest.raises(OracleSizeError):
        count_vertex_covers(big, 32)
    with pytest.raises(OracleSizeError):
        count_odd_cycle_transversals(big, 32)
    dense = random_graph(12, 1.0, 0)
    with pytest.raises(OracleSizeError):
        count_min_st_cuts(dense, TerminalPair(0, 11))
    with pytest.raises(OracleSizeError):
        max_matching_size(Graph.empty(27))
