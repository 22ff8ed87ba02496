"""Acceptance suite: every criterion runs at its stated scale with exact
equality against the brute-force oracles, printing one pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

from countkernel import verification as V


def _finish(label: str, report: V.SweepReport) -> None:
    verdict = "PASS" if report.passed else "FAIL"
    print(f"{verdict} {label}: {report.checked} checks in {report.seconds:.1f}s")
    assert report.passed, f"{label}: {report.failures[:3]}"


def test_c01_vc_kernel_end_to_end():
    # >= 2000 graphs on <= 6 vertices, every k in 0..4, exact equality.
    report = V.sweep_vc_kernel(graphs=2000, nmax=6, kmax=4, seed=0)
    assert report.checked >= 2000 * 5
    _finish("criterion 1 (vc kernel end-to-end)", report)


def test_c02_blowup_decomposition_tiny_scale():
    report = V.sweep_map_size(seed=0, cases=120)
    _finish("criterion 2 (decomposition identity, overridden parameters)", report)


def test_c03_multiplicity_dominance():
    report = V.sweep_dominance(kmax=6)
    _finish("criterion 3 (dominance, k <= 6)", report)


def test_c04_multiplicity_dp_vs_enumeration():
    report = V.sweep_multiplicity_dp(limit=6)
    _finish("criterion 4 (DP vs direct enumeration, all params <= 6)", report)


def test_c05_minimal_vc_kernel():
    report = V.sweep_minimal_vc(graphs=2000, nmax=6, kmax=4, seed=0)
    assert report.checked >= 2000 * 5
    _finish("criterion 5 (minimal-vc kernel + quadratic bounds)", report)


def test_c06_sum_composition():
    report = V.sweep_sum(tuples=500, nmax=6, seed=0)
    assert report.checked >= 500  # identity plus parameter bound per tuple
    _finish("criterion 6 (sum composition, >= 500 tuples)", report)


def test_c07_ppt_mincut_to_oct():
    report = V.sweep_ppt_oct(instances=300, seed=0)
    assert report.checked >= 300 * 2  # count equality and niceness each
    _finish("criterion 7 (mincut->oct count equality + niceness)", report)


def test_c08_ppt_oct_to_vc():
    report = V.sweep_ppt_vc(corpus_size=200, nmax=6, kmax=3, seed=0)
    _finish("criterion 8 (oct->vc factor 2, matching and LP pinned)", report)


def test_c09_exact_composition():
    report = V.sweep_exact(tuples=20, seed=0)
    _finish("criterion 9 (exact composition incl. the 544 example)", report)


def test_c10_exact_witness_decompositions():
    report = V.sweep_exact_td(tuples=12, nmax=10, seed=0)
    _finish("criterion 10 (treewidth witness within bound)", report)


def test_c11_size_bounds():
    vc = V.sweep_vc_size_bounds(graphs=400, nmax=6, kmax=4, seed=0)
    _finish("criterion 11a (blowup size formula and 18k^6)", vc)
    sums = V.sweep_sum(tuples=120, nmax=6, seed=11)
    _finish("criterion 11b (sum parameter <= max input edges)", sums)
