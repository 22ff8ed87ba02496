import random

import pytest

from countkernel.compositions import mincut_to_oct_ppt, oct_to_vc_ppt
from countkernel.framework import (
    CompositionError,
    CountingInstance,
    LiftContext,
    ProtocolError,
    compose_ppt_compression,
    default_registry,
    identity_compression,
    identity_ppt,
    oracle_count,
    parameter_value,
    run_compression,
    verify_compression,
)
from countkernel.graphs import Graph, TerminalPair
from countkernel.oracles import count_min_st_cuts, random_graph

K3 = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


def test_identity_compression_round_trips():
    ident = identity_compression("vertex-cover")
    inst = CountingInstance(K3, None, 2)
    assert run_compression(ident, inst, 17) == 17
    report = verify_compression(ident, inst)
    assert report.passed and report.direct_count == 3


def test_run_compression_vc_kernel_on_k3():
    registry = default_registry()
    kernel = registry.compression("vertex-cover-kernel")
    report = verify_compression(kernel, CountingInstance(K3, None, 2))
    assert report.passed
    assert report.direct_count == report.lifted_count == 3
    assert report.size_bound_ok
    # the blowup of K3 at budget 2 is counted entirely by exact-size-2
    # core covers, each worth multiplicity 1
    assert run_compression(kernel, CountingInstance(K3, None, 2), 3) == 3


def test_run_compression_minimal_kernel_on_star():
    registry = default_registry()
    kernel = registry.compression("minimal-vertex-cover-kernel")
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    report = verify_compression(kernel, CountingInstance(star, None, 3))
    assert report.passed and report.lifted_count == 2


def test_compose_identity_ppt_keeps_behavior():
    kernel = default_registry().compression("vertex-cover-kernel")
    composite = compose_ppt_compression(identity_ppt("vertex-cover"), kernel)
    rng = random.Random(2)
    for _ in range(20):
        g = random_graph(rng.randint(1, 5), 0.5, rng.randrange(10**6))
        inst = CountingInstance(g, None, rng.randint(0, 3))
        assert verify_compression(composite, inst).passed
        assert verify_compression(kernel, inst).lifted_count \
            == verify_compression(composite, inst).lifted_count


def test_compose_mismatched_handles_rejected():
    with pytest.raises(CompositionError):
        compose_ppt_compression(identity_ppt("min-st-cut"),
                                identity_compression("vertex-cover"))


def test_mincut_ppt_composed_with_identity_oct_compression():
    composite = compose_ppt_compression(mincut_to_oct_ppt(),
                                        identity_compression("odd-cycle-transversal"))
    assert composite.source_problem == "min-st-cut"
    rng = random.Random(8)
    checked = 0
    while checked < 12:
        n = rng.randint(2, 6)
        g = random_graph(n, rng.choice((0.3, 0.5)), rng.randrange(10**6))
        s, t = rng.sample(range(n), 2)
        inst = CountingInstance(g, TerminalPair(s, t), None, "min-cut-size")
        report = verify_compression(composite, inst)
        assert report.passed
        assert report.lifted_count == count_min_st_cuts(g, TerminalPair(s, t))[0]
        checked += 1


def test_full_pipeline_mincut_to_vc_via_both_ppts():
    # chain both transformations in front of the identity compression
    inner = compose_ppt_compression(oct_to_vc_ppt(),
                                    identity_compression("vertex-cover"))
    pipeline = compose_ppt_compression(mincut_to_oct_ppt(), inner)
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    inst = CountingInstance(path, TerminalPair(0, 2), None, "min-cut-size")
    report = verify_compression(pipeline, inst)
    assert report.passed and report.lifted_count == 2


def test_oracle_count_dispatch_and_errors():
    assert oracle_count("vertex-cover", CountingInstance(K3, None, 2)) == 3
    # adjacent terminals of K3: the direct edge plus either path edge
    assert oracle_count("min-st-cut",
                        CountingInstance(K3, TerminalPair(0, 1), None, "min-cut-size")) == 2
    with pytest.raises(ValueError):
        oracle_count("no-such-problem", CountingInstance(K3, None, 1))


def test_parameter_value_kinds():
    assert parameter_value(CountingInstance(K3, None, 2)) == 2
    cut_inst = CountingInstance(K3, TerminalPair(0, 1), None, "min-cut-size")
    assert parameter_value(cut_inst) == 2
    tw_inst = CountingInstance(K3, None, None, "treewidth")
    assert parameter_value(tw_inst) == 2
    m_inst = CountingInstance(K3, None, 2, "k-minus-matching")
    assert parameter_value(m_inst) == 1
    from fractions import Fraction

    lp_inst = CountingInstance(K3, None, 2, "k-minus-lp")
    assert parameter_value(lp_inst) == Fraction(1, 2)


def test_instance_validation():
    with pytest.raises(ValueError):
        CountingInstance(K3, None, None)  # solution-size needs k
    with pytest.raises(ValueError):
        CountingInstance(K3, None, 1, "no-such-kind")
    with pytest.raises(ValueError):
        CountingInstance(K3, TerminalPair(0, 5), 1)
    with pytest.raises(ValueError):
        CountingInstance(K3, None, None, "min-cut-size")


def test_context_ownership_checks():
    ident = identity_compression("vertex-cover")
    with pytest.raises(ProtocolError):
        ident.lift(LiftContext("other", {}), 3)
    with pytest.raises(ProtocolError):
        LiftContext.from_json("{\"payload\": {}}")


def test_every_registered_compression_round_trips_small_corpus():
    from countkernel.verification import all_graphs

    registry = default_registry()
    for compression in registry.compressions.values():
        for g in all_graphs(3):
            for k in range(3):
                if compression.source_problem == "min-st-cut":
                    if g.n < 2:
                        continue
                    inst = CountingInstance(g, TerminalPair(0, g.n - 1), None,
                                            "min-cut-size")
                else:
                    inst = CountingInstance(g, None, k)
                report = verify_compression(compression, inst)
                assert report.passed, (compression.name, g, k)


def test_verify_compression_propagates_size_guard():
    from countkernel.oracles import OracleSizeError

    ident = identity_compression("vertex-cover")
    with pytest.raises(OracleSizeError):
        verify_compression(ident, CountingInstance(Graph.empty(64), None, 32))


def test_registry_contents():
    registry = default_registry()
    assert "vertex-cover-kernel" in registry.compressions
    assert "minimal-vertex-cover-kernel" in registry.compressions
    assert "mincut-to-oct" in registry.ppts
    assert "oct-to-vc" in registry.ppts
    with pytest.raises(KeyError):
        registry.compression("missing")
