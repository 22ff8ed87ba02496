import random

import pytest

from countkernel.framework import (
    CountingInstance,
    IntegrityError,
    LiftContext,
    ProtocolError,
)
from countkernel.graphs import Graph
from countkernel.oracles import (
    count_minimal_vertex_covers,
    count_vertex_covers,
    count_vertex_covers_of_size,
    random_graph,
)
from countkernel.vc_kernel import (
    blowup_cover_multiplicity,
    build_padded_blowup,
    buss_reduce,
    lift_minimal_vertex_cover,
    lift_vertex_cover,
    padded_blowup_graph,
    reduce_minimal_vertex_cover,
    reduce_vertex_cover,
    strip_isolated,
)
from countkernel.verification import multiplicity_by_enumeration

K3 = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
EDGE = Graph.from_edges(2, [(0, 1)])
STAR5 = Graph.from_edges(6, [(0, i) for i in range(1, 6)])


def test_buss_forces_star_center():
    g1, k1 = buss_reduce(STAR5, 2)
    assert (g1.n, g1.m, k1) == (5, 0, 1)


def test_buss_leaves_triangle_alone():
    g1, k1 = buss_reduce(K3, 2)
    assert g1 == K3 and k1 == 2


def test_buss_two_stars_budget_one_is_zero():
    two_stars = Graph.from_edges(12, [(0, i) for i in range(1, 6)]
                                 + [(6, i) for i in range(7, 12)])
    assert buss_reduce(two_stars, 1) is None


def test_strip_isolated():
    g2, k2, n1 = strip_isolated(Graph.empty(5), 3)
    assert (g2.n, k2, n1) == (0, 3, 5)
    g2, k2, n1 = strip_isolated(K3, 2)
    assert g2 == K3 and n1 == 3
    padded = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2)])
    g2, _, n1 = strip_isolated(padded, 2)
    assert g2.n == 3 and g2.m == 3 and n1 == 5


def test_build_blowup_single_edge():
    g3, k3, d, t = build_padded_blowup(EDGE, 1)
    assert (d, t, k3) == (2, 12, 2)
    assert g3.n == 2 * 2 + 12 and g3.m == 4  # complete join of the copy classes


def test_build_blowup_degenerate_and_path():
    g3, k3, d, t = build_padded_blowup(Graph.empty(0), 5)
    assert (g3.n, k3, d, t) == (0, 0, 0, 0)
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    g3, k3, d, t = build_padded_blowup(path, 1)
    assert (d, t, k3) == (3, 3 + 3 + 18, 3)


def test_build_blowup_rejects_isolated_core():
    with pytest.raises(ValueError):
        build_padded_blowup(Graph.empty(2), 1)


def test_multiplicity_frozen_values():
    # independently recomputed by direct vector enumeration below
    assert blowup_cover_multiplicity(1, 2, 12, 1, 2) == 1
    assert blowup_cover_multiplicity(0, 2, 12, 1, 2) == 135
    assert blowup_cover_multiplicity(0, 2, 3, 1, 2) == 27
    assert multiplicity_by_enumeration(0, 2, 12, 1, 2) == 135
    assert multiplicity_by_enumeration(0, 2, 3, 1, 2) == 27


def test_multiplicity_domain_errors():
    with pytest.raises(ValueError):
        blowup_cover_multiplicity(3, 2, 12, 2, 2)  # i > core size
    with pytest.raises(ValueError):
        blowup_cover_multiplicity(2, 2, 12, 1, 4)  # i > budget


def test_reduce_branch_selection():
    normal = reduce_vertex_cover(CountingInstance(K3, None, 2))
    assert normal.context.payload["branch"] == "normal"
    assert normal.context.payload["n2"] == "3"

    two_stars = Graph.from_edges(12, [(0, i) for i in range(1, 6)]
                                 + [(6, i) for i in range(7, 12)])
    zero = reduce_vertex_cover(CountingInstance(two_stars, None, 1))
    assert zero.context.payload["branch"] == "zero"
    assert zero.reduced.graph.m == 1 and zero.reduced.k == 0

    # C6 survives the degree rule but keeps more than k^2 edges
    c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    assert reduce_vertex_cover(CountingInstance(c6, None, 2)).context.payload["branch"] == "zero"
    assert count_vertex_covers(c6, 2) == 0

    k5 = Graph.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    assert reduce_vertex_cover(CountingInstance(k5, None, 1)).context.payload["branch"] == "zero"


def test_lift_single_edge_walkthrough():
    result = reduce_vertex_cover(CountingInstance(EDGE, None, 1))
    assert result.context.payload["branch"] == "normal"
    assert lift_vertex_cover(result.context, 2) == 2


def test_lift_star_with_empty_core():
    result = reduce_vertex_cover(CountingInstance(STAR5, None, 2))
    payload = result.context.payload
    assert payload["n2"] == "0" and payload["n1"] == "5"
    # the empty reduced instance has exactly one cover
    assert lift_vertex_cover(result.context, 1) == 6
    assert count_vertex_covers(STAR5, 2) == 6


def test_lift_zero_branch_ignores_count():
    ctx = reduce_vertex_cover(CountingInstance(Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)]), None, 2)).context
    assert lift_vertex_cover(ctx, 12345) == 0


def test_lift_rejects_corrupted_counts():
    # Residues only become visible when the budget exceeds the core
    # order (then the last processed multiplicity is above 1).
    result = reduce_vertex_cover(CountingInstance(EDGE, None, 3))
    payload = result.context.payload
    d, t, k2, n2 = (int(payload[f]) for f in ("d", "t", "k2", "n2"))
    true_count = sum(count_vertex_covers_of_size(EDGE, i)
                     * blowup_cover_multiplicity(i, d, t, k2, n2)
                     for i in range(n2 + 1))
    assert lift_vertex_cover(result.context, true_count) == count_vertex_covers(EDGE, 3)
    with pytest.raises(IntegrityError):
        lift_vertex_cover(result.context, true_count + 1)
    with pytest.raises(IntegrityError):
        lift_vertex_cover(result.context, -1)


def test_lift_rejects_foreign_context():
    ctx = LiftContext("something-else", {"branch": "normal"})
    with pytest.raises(ProtocolError):
        lift_vertex_cover(ctx, 0)


def test_context_json_round_trip():
    ctx = reduce_vertex_cover(CountingInstance(K3, None, 2)).context
    again = LiftContext.from_json(ctx.to_json())
    assert again == ctx
    assert again.to_json() == ctx.to_json()
    assert set(ctx.payload) == {"branch", "n1", "n2", "k2", "d", "t", "k3"}


def test_minimal_kernel_examples():
    star_padded = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3)])
    result = reduce_minimal_vertex_cover(CountingInstance(star_padded, None, 3))
    assert result.reduced.graph.n == 4 and result.reduced.graph.m == 3
    assert lift_minimal_vertex_cover(result.context, 2) == 2

    k5 = Graph.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    zero = reduce_minimal_vertex_cover(CountingInstance(k5, None, 1))
    assert zero.context.payload["branch"] == "zero"
    assert lift_minimal_vertex_cover(zero.context, 99) == 0

    identity = reduce_minimal_vertex_cover(CountingInstance(EDGE, None, 1))
    assert identity.reduced.graph == EDGE
    assert lift_minimal_vertex_cover(identity.context, 2) == 2


def test_minimal_kernel_random_round_trip():
    rng = random.Random(77)
    for _ in range(60):
        g = random_graph(rng.randint(1, 6), rng.choice((0.3, 0.6)), rng.randrange(10**6))
        k = rng.randint(0, 4)
        result = reduce_minimal_vertex_cover(CountingInstance(g, None, k))
        if result.context.payload["branch"] == "zero":
            reduced_count = 0
        else:
            reduced_count = count_minimal_vertex_covers(result.reduced.graph, result.reduced.k)
        assert lift_minimal_vertex_cover(result.context, reduced_count) \
            == count_minimal_vertex_covers(g, k)


def test_tiny_blowup_decomposition_brute_force():
    # the partition identity at enumerable scale with overridden parameters
    rng = random.Random(5)
    for _ in range(15):
        core = random_graph(rng.randint(2, 5), 0.7, rng.randrange(10**6))
        if core.isolated_vertices():
            continue
        k2 = rng.randint(1, 2)
        copies, padding = 2, 3
        blown = padded_blowup_graph(core, copies, padding)
        direct = count_vertex_covers(blown, copies * k2)
        expected = sum(count_vertex_covers_of_size(core, i)
                       * blowup_cover_multiplicity(i, copies, padding, k2, core.n)
                       for i in range(min(k2, core.n) + 1))
        assert direct == expected
