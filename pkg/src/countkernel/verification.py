"""Property sweeps that pit every construction against the brute-force
oracles on seeded corpora.  The CLI's ``verify`` subcommand and the
acceptance test suite both run these.

Each sweep returns a ``SweepReport``; a sweep passes when it checked a
positive number of cases and collected no failures.  All corpora are
deterministic in the seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from . import oracles
from .compositions import (
    exact_compose,
    extract_counts,
    group_by_min_cut,
    mincut_to_oct_reduce,
    oct_to_vc_lift,
    oct_to_vc_reduce,
    sum_compose,
)
from .framework import CountingInstance, parameter_value
from .graphs import (
    Graph,
    TerminalPair,
    connected_components,
    validate_tree_decomposition,
)
from .vc_kernel import (
    blowup_cover_multiplicity,
    buss_reduce,
    lift_minimal_vertex_cover,
    lift_vertex_cover,
    padded_blowup_graph,
    reduce_minimal_vertex_cover,
    reduce_vertex_cover,
    strip_isolated,
)

ENUMERATION_BUDGET = 1 << 20


@dataclass
class SweepReport:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    MAX_FAILURES = 12

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failures

    def check(self, ok: bool, message: str) -> None:
        self.checked += 1
        if not ok and len(self.failures) < self.MAX_FAILURES:
            self.failures.append(message)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        detail = f"{self.checked} checks in {self.seconds:.1f}s"
        if self.failures:
            detail += f"; first failure: {self.failures[0]}"
        return f"{verdict} {self.name}: {detail}"


def _timed(report: SweepReport, start: float) -> SweepReport:
    report.seconds = time.monotonic() - start
    return report


# ---------------------------------------------------------------------------
# Corpora
# ---------------------------------------------------------------------------

def all_graphs(n: int):
    """Every graph on n vertices (use only for tiny n)."""
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph.from_edges(n, (pairs[j] for j in range(len(pairs)) if bits >> j & 1))


def graph_corpus(count: int, nmax: int, seed: int) -> list[Graph]:
    """Exhaustive graphs up to 4 vertices, then seeded random ones."""
    corpus: list[Graph] = []
    for n in range(min(nmax, 4) + 1):
        corpus.extend(all_graphs(n))
        if len(corpus) >= count:
            return corpus[:count]
    rng = random.Random(seed)
    probabilities = (0.15, 0.3, 0.5, 0.7, 0.9)
    while len(corpus) < count:
        n = rng.randint(5, max(5, nmax))
        p = rng.choice(probabilities)
        corpus.append(oracles.random_graph(n, p, rng.randrange(1 << 30)))
    return corpus


def cut_instance_pool(count: int, nmax: int, seed: int, max_edges: int | None = None,
                      ) -> list[tuple[Graph, TerminalPair]]:
    rng = random.Random(seed)
    pool = []
    while len(pool) < count:
        n = rng.randint(2, nmax)
        g = oracles.random_graph(n, rng.choice((0.25, 0.4, 0.6)), rng.randrange(1 << 30))
        if max_edges is not None and g.m > max_edges:
            continue
        s, t = rng.sample(range(n), 2)
        pool.append((g, TerminalPair(s, t)))
    return pool


# ---------------------------------------------------------------------------
# Counting kernel sweeps
# ---------------------------------------------------------------------------

def sweep_vc_kernel(graphs: int = 2000, nmax: int = 6, kmax: int = 4,
                    seed: int = 0) -> SweepReport:
    """Lifted count equals the direct count for every corpus instance.

    The reduced instance's count is obtained from the proven
    decomposition sum_i y_i * w_i with oracle y_i (brute force on the
    blowup itself is infeasible because the padding is large); that
    identity is itself verified independently by ``sweep_map_size``.
    """
    start = time.monotonic()
    report = SweepReport("vc-kernel end-to-end")
    for g in graph_corpus(graphs, nmax, seed):
        for k in range(kmax + 1):
            direct = oracles.count_vertex_covers(g, k)
            result = reduce_vertex_cover(CountingInstance(g, None, k))
            payload = result.context.payload
            if payload["branch"] == "zero":
                report.check(direct == 0,
                             f"zero branch but direct={direct} (n={g.n}, m={g.m}, k={k})")
                continue
            step = buss_reduce(g, k)
            core, k2, _ = strip_isolated(*step)
            d, t, n2 = int(payload["d"]), int(payload["t"]), int(payload["n2"])
            reduced_count = sum(
                oracles.count_vertex_covers_of_size(core, i)
                * blowup_cover_multiplicity(i, d, t, k2, n2)
                for i in range(min(k2, n2) + 1))
            lifted = lift_vertex_cover(result.context, reduced_count)
            report.check(lifted == direct,
                         f"lift={lifted} direct={direct} (n={g.n}, m={g.m}, k={k})")
    return _timed(report, start)


def sweep_map_size(seed: int = 0, cases: int = 120) -> SweepReport:
    """Brute force on tiny overridden blowups validates the decomposition.

    With small copies/padding the padded blowup is enumerable, so
    count(blowup, copies*k2) must equal sum_i y_i * w_i with both
    factors computed independently.
    """
    start = time.monotonic()
    report = SweepReport("blowup decomposition at tiny scale")
    rng = random.Random(seed)
    overrides = ((1, 4), (2, 3), (2, 1), (3, 2))
    produced = 0
    while produced < cases:
        copies, padding = overrides[produced % len(overrides)]
        n2 = rng.randint(2, (20 - padding) // copies)
        g2 = oracles.random_graph(n2, rng.choice((0.4, 0.6, 0.9)), rng.randrange(1 << 30))
        if g2.isolated_vertices():
            continue
        k2 = rng.randint(1, 3)
        produced += 1
        blown = padded_blowup_graph(g2, copies, padding)
        direct = oracles.count_vertex_covers(blown, copies * k2)
        expected = sum(
            oracles.count_vertex_covers_of_size(g2, i)
            * blowup_cover_multiplicity(i, copies, padding, k2, n2)
            for i in range(min(k2, n2) + 1))
        report.check(direct == expected,
                     f"blowup count {direct} != decomposition {expected} "
                     f"(n2={n2}, m={g2.m}, k2={k2}, copies={copies}, padding={padding})")
    return _timed(report, start)


def reduce_produced_parameters(kmax: int = 6):
    """All (n2, k2) pairs the reduce step can emit with budget <= kmax."""
    for k2 in range(kmax + 1):
        yield 0, k2
        for n2 in range(2, 2 * k2 * k2 + 1):
            yield n2, k2


def sweep_dominance(kmax: int = 6) -> SweepReport:
    """Each multiplicity dominates everything that follows it.

    This is the property that makes floor division in the lift recover
    each y_i exactly; checked with exact arithmetic over every
    reduce-producible parameter pair.
    """
    start = time.monotonic()
    report = SweepReport("multiplicity dominance")
    for n2, k2 in reduce_produced_parameters(kmax):
        d = n2
        t = d + d * k2 + 2 * (d * k2) ** 2
        ws = [blowup_cover_multiplicity(i, d, t, k2, n2)
              for i in range(min(k2, n2) + 1)]
        for i in range(len(ws)):
            tail = sum(comb(n2, j) * ws[j] for j in range(i + 1, len(ws)))
            report.check(ws[i] > tail,
                         f"w_{i}={ws[i]} <= tail {tail} (n2={n2}, k2={k2})")
    return _timed(report, start)


def multiplicity_by_enumeration(i: int, copies: int, padding: int,
                                budget: int, core_size: int) -> int:
    """Direct enumeration of the admissible extension vectors.

    Walks every per-class vector (each entry below ``copies``, total
    within the remaining budget) and closes each with the padding
    choices, grouped only by distributivity.
    """
    spend = copies * (budget - i)
    classes = core_size - i
    class_weights = [comb(copies, a) for a in range(copies)]
    pad_prefix = [0] * (spend + 1)
    running = 0
    for r in range(spend + 1):
        if r <= padding:
            running += comb(padding, r)
        pad_prefix[r] = running
    total = 0

    def rec(remaining_classes: int, left: int, weight: int) -> None:
        nonlocal total
        if remaining_classes == 0:
            total += weight * pad_prefix[left]
            return
        for a in range(min(copies - 1, left) + 1):
            rec(remaining_classes - 1, left - a, weight * class_weights[a])

    rec(classes, spend, 1)
    return total


def sweep_multiplicity_dp(limit: int = 6) -> SweepReport:
    """Dynamic program equals direct enumeration on all small parameters."""
    start = time.monotonic()
    report = SweepReport("multiplicity DP vs enumeration")
    for copies in range(limit + 1):
        for padding in range(limit + 1):
            for budget in range(limit + 1):
                for core in range(limit + 1):
                    for i in range(min(budget, core) + 1):
                        dp = blowup_cover_multiplicity(i, copies, padding, budget, core)
                        direct = multiplicity_by_enumeration(i, copies, padding, budget, core)
                        report.check(dp == direct,
                                     f"dp={dp} enum={direct} at (i={i}, copies={copies}, "
                                     f"padding={padding}, budget={budget}, core={core})")
    return _timed(report, start)


def sweep_minimal_vc(graphs: int = 2000, nmax: int = 6, kmax: int = 4,
                     seed: int = 0) -> SweepReport:
    """Minimal-cover kernel round-trips and respects the quadratic bounds."""
    start = time.monotonic()
    report = SweepReport("minimal-vc kernel end-to-end")
    for g in graph_corpus(graphs, nmax, seed):
        for k in range(kmax + 1):
            direct = oracles.count_minimal_vertex_covers(g, k)
            result = reduce_minimal_vertex_cover(CountingInstance(g, None, k))
            reduced = result.reduced
            if result.context.payload["branch"] == "zero":
                reduced_count = 0
            else:
                reduced_count = oracles.count_minimal_vertex_covers(reduced.graph, reduced.k)
                report.check(reduced.graph.n <= 2 * k * k and reduced.graph.m <= k * k,
                             f"kernel size ({reduced.graph.n}, {reduced.graph.m}) "
                             f"exceeds quadratic bounds for k={k}")
            lifted = lift_minimal_vertex_cover(result.context, reduced_count)
            report.check(lifted == direct,
                         f"lift={lifted} direct={direct} (n={g.n}, m={g.m}, k={k})")
    return _timed(report, start)


def sweep_vc_size_bounds(graphs: int = 400, nmax: int = 6, kmax: int = 4,
                         seed: int = 0) -> SweepReport:
    """Normal-branch blowups match the size formula and the k^6 bound."""
    start = time.monotonic()
    report = SweepReport("vc kernel size bounds")
    for g in graph_corpus(graphs, nmax, seed):
        for k in range(kmax + 1):
            result = reduce_vertex_cover(CountingInstance(g, None, k))
            payload = result.context.payload
            if payload["branch"] != "normal":
                continue
            n2, k2 = int(payload["n2"]), int(payload["k2"])
            n3 = result.reduced.graph.n
            formula = n2 * n2 + n2 + n2 * k2 + 2 * (n2 * k2) ** 2
            report.check(n3 == formula, f"|V|={n3} != formula {formula}")
            if k >= 1:
                report.check(n3 <= 18 * k ** 6, f"|V|={n3} > 18k^6 for k={k}")
    return _timed(report, start)


# ---------------------------------------------------------------------------
# Composition sweeps
# ---------------------------------------------------------------------------

def _equal_cut_tuples(pool, rng, want: int, max_len: int, min_cut: int = 1):
    """Draw tuples of pool instances sharing a min-cut size."""
    classes = group_by_min_cut(pool)
    usable = {k: ix for k, ix in classes.items() if k >= min_cut and ix}
    tuples = []
    attempts = 0
    while len(tuples) < want and attempts < want * 50:
        attempts += 1
        if not usable:
            break
        k = rng.choice(sorted(usable))
        members = usable[k]
        ell = rng.randint(1, max_len)
        tuples.append([pool[rng.choice(members)] for _ in range(ell)])
    return tuples


def sweep_sum(tuples: int = 500, nmax: int = 6, seed: int = 0) -> SweepReport:
    """Composed min-cut count equals the sum of the input counts."""
    start = time.monotonic()
    report = SweepReport("sum composition")
    rng = random.Random(seed)
    pool = cut_instance_pool(max(60, tuples // 4), nmax, seed + 1)
    for parts in _equal_cut_tuples(pool, rng, tuples, max_len=4):
        composed = sum_compose(parts)
        total_m = composed.graph.m
        if comb(total_m, composed.cut_size) > ENUMERATION_BUDGET:
            continue
        count, size = oracles.count_min_st_cuts(composed.graph, composed.terminals)
        expected = sum(oracles.count_min_st_cuts(g, st)[0] for g, st in parts)
        report.check(count == expected and size == composed.cut_size,
                     f"composed {count} (cut {size}) != sum {expected} "
                     f"(cut {composed.cut_size}, ell={len(parts)})")
        report.check(composed.cut_size <= max(g.m for g, _ in parts),
                     "parameter exceeds the largest input edge count")
    return _timed(report, start)


def sweep_ppt_oct(instances: int = 300, seed: int = 0) -> SweepReport:
    """Cut counts survive the transversal gadget, and outputs are nice."""
    start = time.monotonic()
    report = SweepReport("mincut-to-oct transformation")
    rng = random.Random(seed)
    produced = 0
    while produced < instances:
        n = rng.randint(2, 7)
        g = oracles.random_graph(n, rng.choice((0.3, 0.45, 0.6)), rng.randrange(1 << 30))
        if g.m == 0 or g.m > 6:
            continue
        if len(connected_components(g)) != 1:
            continue
        s, t = rng.sample(range(n), 2)
        produced += 1
        inst = CountingInstance(g, TerminalPair(s, t), None, "min-cut-size")
        direct = oracles.count_min_st_cuts(g, TerminalPair(s, t))[0]
        result = mincut_to_oct_reduce(inst)
        gp, k = result.reduced.graph, result.reduced.k
        transversals = oracles.count_odd_cycle_transversals(gp, k)
        report.check(transversals == direct,
                     f"oct={transversals} cuts={direct} (n={n}, m={g.m}, k={k})")
        report.check(oracles.is_nice_oct_instance(gp, k),
                     f"output not nice (n={n}, m={g.m}, k={k})")
    return _timed(report, start)


def nice_oct_corpus(count: int, nmax: int, kmax: int, seed: int,
                    ) -> list[tuple[Graph, int]]:
    rng = random.Random(seed)
    corpus = [(Graph.empty(1), 0)]
    while len(corpus) < count:
        n = rng.randint(1, nmax)
        g = oracles.random_graph(n, rng.choice((0.3, 0.5, 0.8)), rng.randrange(1 << 30))
        k = rng.randint(0, kmax)
        if oracles.is_nice_oct_instance(g, k):
            corpus.append((g, k))
    return corpus


def sweep_ppt_vc(corpus_size: int = 200, nmax: int = 6, kmax: int = 3,
                 seed: int = 0) -> SweepReport:
    """Doubling a nice instance exactly doubles the count and pins the
    matching number and LP value at n."""
    start = time.monotonic()
    report = SweepReport("oct-to-vc transformation")
    for g, k in nice_oct_corpus(corpus_size, nmax, kmax, seed):
        direct = oracles.count_odd_cycle_transversals(g, k)
        result = oct_to_vc_reduce(CountingInstance(g, None, k), verify_nice=False)
        reduced = result.reduced
        covers = oracles.count_vertex_covers(reduced.graph, reduced.k)
        report.check(covers == 2 * direct,
                     f"covers={covers} != 2*{direct} (n={g.n}, m={g.m}, k={k})")
        report.check(oracles.max_matching_size(reduced.graph) == g.n,
                     f"matching != n={g.n}")
        report.check(oracles.lp_vc_value(reduced.graph) == Fraction(g.n),
                     f"LP value != n={g.n}")
        report.check(parameter_value(reduced) == k, "derived parameter != k")
        report.check(oct_to_vc_lift(result.context, covers) == direct,
                     "halving lift mismatch")
    return _timed(report, start)


def _verify_exact_tuple(report: SweepReport, parts, enumerate_count: bool) -> None:
    composition = exact_compose(parts)
    meta = composition.metadata
    per_input = [oracles.count_min_st_cuts(g, st)[0] for g, st in parts]
    if meta.branch == "trivial":
        report.check(extract_counts(meta, 0) == per_input,
                     "trivial branch answers mismatch")
        return
    expected = sum(q * (1 << e) for q, e in zip(per_input, meta.exponents))
    cut = oracles.min_cut_size(composition.graph, composition.terminals)
    report.check(cut == meta.cut_size + meta.m * (meta.ell - 1),
                 f"composed cut {cut} != k + m(ell-1)")
    if enumerate_count:
        count, _ = oracles.count_min_st_cuts(composition.graph, composition.terminals)
        report.check(count == expected,
                     f"composed count {count} != weighted sum {expected}")
        report.check(extract_counts(meta, count) == per_input,
                     f"extraction failed on count {count}")
    else:
        report.check(extract_counts(meta, expected) == per_input,
                     "extraction failed on the weighted sum")


def sweep_exact(tuples: int = 20, seed: int = 0) -> SweepReport:
    """Exact composition verified end-to-end by full cut enumeration.

    Includes the pinned two-path example (count 544, extraction [2, 2])
    and seeded random pairs small enough to enumerate; pairs whose
    enumeration space exceeds the budget are checked structurally
    (composed cut size, extraction on the weighted sum) instead.
    """
    start = time.monotonic()
    report = SweepReport("exact composition")
    path = (Graph.from_edges(3, [(0, 1), (1, 2)]), TerminalPair(0, 2))
    composition = exact_compose([path, path])
    count, size = oracles.count_min_st_cuts(composition.graph, composition.terminals)
    report.check(count == 544, f"pinned example count {count} != 544")
    report.check(size == 5, f"pinned example cut size {size} != 5")
    report.check(extract_counts(composition.metadata, count) == [2, 2],
                 "pinned example extraction != [2, 2]")

    rng = random.Random(seed)
    pool = cut_instance_pool(80, 4, seed + 1, max_edges=3)
    verified = 0
    structural = 0
    for parts in _equal_cut_tuples(pool, rng, tuples * 12, max_len=2):
        if len(parts) != 2:
            continue
        probe = exact_compose(parts)
        if probe.metadata.branch == "trivial":
            continue
        k_prime = probe.metadata.cut_size + probe.metadata.m * (probe.metadata.ell - 1)
        feasible = comb(probe.graph.m, k_prime) <= ENUMERATION_BUDGET
        if feasible and verified < tuples:
            _verify_exact_tuple(report, parts, enumerate_count=True)
            verified += 1
        elif not feasible and structural < 5:
            _verify_exact_tuple(report, parts, enumerate_count=False)
            structural += 1
        if verified >= tuples and structural >= 5:
            break
    report.check(verified >= tuples,
                 f"only {verified} of {tuples} tuples verified by enumeration")

    # Trivial branch: two single edges force ell >= 2^(max edge count).
    edge = (Graph.from_edges(2, [(0, 1)]), TerminalPair(0, 1))
    trivial = exact_compose([edge, edge])
    report.check(trivial.metadata.branch == "trivial", "expected trivial branch")
    report.check(extract_counts(trivial.metadata, 0) == [1, 1],
                 "trivial branch answers != [1, 1]")

    single = exact_compose([path])
    count1, _ = oracles.count_min_st_cuts(single.graph, single.terminals)
    report.check(extract_counts(single.metadata, count1) == [2],
                 "single-instance composition != [2]")
    return _timed(report, start)


def sweep_exact_td(tuples: int = 12, nmax: int = 10, seed: int = 0) -> SweepReport:
    """Witness decompositions validate within one of the input treewidths."""
    start = time.monotonic()
    report = SweepReport("exact composition treewidth witness")
    rng = random.Random(seed)
    pool = cut_instance_pool(40, nmax, seed + 1)
    for parts in _equal_cut_tuples(pool, rng, tuples, max_len=3, min_cut=0):
        composition = exact_compose(parts)
        if composition.metadata.branch == "trivial":
            continue
        check = validate_tree_decomposition(composition.graph, composition.witness)
        report.check(check.ok, f"witness invalid: {check.violation}")
        bound = max(2, max(oracles.exact_treewidth(g)[0] for g, _ in parts) + 1)
        report.check(check.width <= bound,
                     f"witness width {check.width} > bound {bound}")
    return _timed(report, start)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def run_suite(name: str, nmax: int = 6, kmax: int = 4, seed: int = 0,
              trials: int | None = None) -> list[SweepReport]:
    """Run one named verification suite; ``all`` runs everything."""

    def n(default: int) -> int:
        return trials if trials is not None else default

    suites = {
        "vc-kernel": lambda: [
            sweep_vc_kernel(n(2000), nmax, kmax, seed),
            sweep_map_size(seed, cases=n(120)),
            sweep_dominance(kmax=max(kmax, 6)),
            sweep_multiplicity_dp(limit=6),
            sweep_vc_size_bounds(min(n(400), 400), nmax, kmax, seed),
        ],
        "minvc-kernel": lambda: [sweep_minimal_vc(n(2000), nmax, kmax, seed)],
        "sum": lambda: [sweep_sum(n(500), nmax, seed)],
        "exact": lambda: [sweep_exact(n(20), seed), sweep_exact_td(n(12), 10, seed)],
        "ppt-oct": lambda: [sweep_ppt_oct(n(300), seed)],
        "ppt-vc": lambda: [sweep_ppt_vc(n(200), nmax, 3, seed)],
    }
    if name == "all":
        reports = []
        for make in suites.values():
            reports.extend(make())
        return reports
    if name not in suites:
        raise ValueError(f"unknown suite {name!r}")
    return suites[name]()
