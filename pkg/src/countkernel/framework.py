"""Reduce/lift machinery for counting problems.

A compression is a pair of polynomial-time procedures: ``reduce`` maps
an instance to a parameter-bounded instance plus a serializable
``LiftContext``, and ``lift`` maps the reduced instance's exact count
back to the original count.  A parameter transformation (PPT) has the
same shape but only bounds the output parameter, not the output size.
Composing a PPT with a compression yields a compression again, with
both contexts nested.

Compressions and PPTs are first-class values addressed by name through
a registry, so the CLI can pipeline them across processes; contexts
round-trip through JSON with counts as decimal strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from . import oracles
from .graphs import Graph, TerminalPair

PARAM_KINDS = (
    "solution-size",
    "min-cut-size",
    "treewidth",
    "k-minus-matching",
    "k-minus-lp",
)

PROBLEMS = (
    "vertex-cover",
    "minimal-vertex-cover",
    "odd-cycle-transversal",
    "min-st-cut",
)


class ProtocolError(Exception):
    """A lift context was fed to the wrong compression or is corrupted."""


class CompositionError(Exception):
    """Handles or instances that cannot be composed."""


class PreconditionError(Exception):
    """A declared precondition was checked and does not hold."""


class IntegrityError(Exception):
    """A count fed to a lift procedure is inconsistent with its context."""


@dataclass(frozen=True)
class CountingInstance:
    """A graph instance of one of the counting problems.

    ``k`` is the solution-size budget where the problem has one;
    derived parameters (minimum cut size, treewidth, k minus matching)
    are recomputed from the instance via ``parameter_value``.
    """

    graph: Graph
    terminals: TerminalPair | None = None
    k: int | None = None
    param_kind: str = "solution-size"

    def __post_init__(self):
        if self.param_kind not in PARAM_KINDS:
            raise ValueError(f"unknown parameter kind {self.param_kind!r}")
        if self.terminals is not None:
            self.terminals.check_in(self.graph)
        if self.k is not None and self.k < 0:
            raise ValueError("parameter budget must be nonnegative")
        if self.param_kind in ("solution-size", "k-minus-matching", "k-minus-lp"):
            if self.k is None:
                raise ValueError(f"{self.param_kind} instances need a budget k")
        if self.param_kind == "min-cut-size" and self.terminals is None:
            raise ValueError("min-cut-size instances need terminals")


def parameter_value(inst: CountingInstance):
    """The instance's parameter under its declared kind."""
    if inst.param_kind == "solution-size":
        return inst.k
    if inst.param_kind == "min-cut-size":
        return oracles.min_cut_size(inst.graph, inst.terminals)
    if inst.param_kind == "treewidth":
        return oracles.exact_treewidth(inst.graph)[0]
    if inst.param_kind == "k-minus-matching":
        return inst.k - oracles.max_matching_size(inst.graph)
    if inst.param_kind == "k-minus-lp":
        return inst.k - oracles.lp_vc_value(inst.graph)
    raise ValueError(inst.param_kind)


def oracle_count(problem: str, inst: CountingInstance) -> int:
    """Solve an instance exactly by the matching brute-force oracle."""
    if problem == "vertex-cover":
        return oracles.count_vertex_covers(inst.graph, inst.k)
    if problem == "minimal-vertex-cover":
        return oracles.count_minimal_vertex_covers(inst.graph, inst.k)
    if problem == "odd-cycle-transversal":
        return oracles.count_odd_cycle_transversals(inst.graph, inst.k)
    if problem == "min-st-cut":
        if inst.terminals is None:
            raise ProtocolError("min-st-cut instance without terminals")
        return oracles.count_min_st_cuts(inst.graph, inst.terminals)[0]
    raise ValueError(f"unknown problem {problem!r}")


# ---------------------------------------------------------------------------
# Contexts
# ---------------------------------------------------------------------------

CONTEXT_VERSION = 1


@dataclass(frozen=True)
class LiftContext:
    """Everything a lift step needs from its matching reduce run.

    The payload is a flat JSON object; numeric fields are stored as
    decimal strings so arbitrary-precision values survive any JSON
    implementation.
    """

    compression: str
    payload: dict
    version: int = CONTEXT_VERSION

    def to_json(self) -> str:
        doc = {"compression": self.compression, "version": self.version,
               "payload": self.payload}
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "LiftContext":
        doc = json.loads(text)
        try:
            return cls(doc["compression"], doc["payload"], doc["version"])
        except (KeyError, TypeError) as exc:
            raise ProtocolError(f"malformed lift context: {exc}") from None

    def expect(self, compression: str) -> dict:
        """Return the payload after checking ownership and version."""
        if self.compression != compression:
            raise ProtocolError(
                f"context belongs to {self.compression!r}, not {compression!r}")
        if self.version != CONTEXT_VERSION:
            raise ProtocolError(f"unsupported context version {self.version}")
        return self.payload


@dataclass(frozen=True)
class CompressionResult:
    reduced: CountingInstance
    context: LiftContext


@dataclass(frozen=True)
class Compression:
    """A named (reduce, lift) pair between two counting problems.

    ``reference_reduced_count`` supplies the reduced instance's true
    count when plain enumeration is infeasible (its padding may be
    huge); implementations must rest on an identity that is itself
    brute-force verified at enumerable scale.
    """

    name: str
    source_problem: str
    target_problem: str
    reduce: Callable[[CountingInstance], CompressionResult]
    lift: Callable[[LiftContext, int], int]
    # Optional bound on |V| of the reduced instance as a function of k.
    size_bound: Callable[[int], int] | None = None
    reference_reduced_count: Callable[[CountingInstance, CompressionResult], int] | None = None


@dataclass(frozen=True)
class Ppt:
    """A polynomial parameter transformation in reduce/lift form."""

    name: str
    source_problem: str
    target_problem: str
    reduce: Callable[[CountingInstance], CompressionResult]
    lift: Callable[[LiftContext, int], int]


def identity_compression(problem: str) -> Compression:
    name = f"identity-{problem}"

    def reduce(inst: CountingInstance) -> CompressionResult:
        return CompressionResult(inst, LiftContext(name, {}))

    def lift(ctx: LiftContext, count: int) -> int:
        ctx.expect(name)
        return count

    return Compression(name, problem, problem, reduce, lift)


def identity_ppt(problem: str) -> Ppt:
    c = identity_compression(problem)
    return Ppt(f"identity-ppt-{problem}", problem, problem, c.reduce, c.lift)


# ---------------------------------------------------------------------------
# Running and composing
# ---------------------------------------------------------------------------

def run_compression(c: Compression, inst: CountingInstance, reduced_count: int) -> int:
    """Reduce, then lift the supplied count of the reduced instance.

    ``reduced_count`` must be the true count of ``c.reduce(inst).reduced``;
    under that precondition the return value is the true count of ``inst``.
    """
    result = c.reduce(inst)
    if result.context.compression != c.name:
        raise ProtocolError(
            f"reduce of {c.name!r} emitted a context for {result.context.compression!r}")
    return c.lift(result.context, reduced_count)


def compose_ppt_compression(ppt: Ppt, c: Compression) -> Compression:
    """Compression for the PPT's source problem: reduce chains forward,
    lift chains backward, with both contexts nested."""
    if ppt.target_problem != c.source_problem:
        raise CompositionError(
            f"PPT targets {ppt.target_problem!r} but compression reads {c.source_problem!r}")
    name = f"{ppt.name}+{c.name}"

    def reduce(inst: CountingInstance) -> CompressionResult:
        first = ppt.reduce(inst)
        second = c.reduce(first.reduced)
        payload = {
            "outer": json.loads(first.context.to_json()),
            "inner": json.loads(second.context.to_json()),
        }
        return CompressionResult(second.reduced, LiftContext(name, payload))

    def lift(ctx: LiftContext, count: int) -> int:
        payload = ctx.expect(name)
        inner = LiftContext.from_json(json.dumps(payload["inner"]))
        outer = LiftContext.from_json(json.dumps(payload["outer"]))
        return ppt.lift(outer, c.lift(inner, count))

    reference = None
    if c.reference_reduced_count is not None:
        def reference(inst: CountingInstance, _result: CompressionResult) -> int:
            # Reduces are deterministic, so replaying the chain recovers
            # the intermediate instance the inner hook needs.
            first = ppt.reduce(inst)
            return c.reference_reduced_count(first.reduced, c.reduce(first.reduced))

    return Compression(name, ppt.source_problem, c.target_problem, reduce, lift,
                       size_bound=None, reference_reduced_count=reference)


@dataclass(frozen=True)
class VerificationReport:
    compression: str
    instance_size: tuple[int, int]
    reduced_size: tuple[int, int]
    reduced_k: int | None
    direct_count: int
    reduced_count: int
    lifted_count: int
    size_bound_ok: bool | None
    passed: bool

    def to_jsonable(self) -> dict:
        return {
            "compression": self.compression,
            "instance": {"n": self.instance_size[0], "m": self.instance_size[1]},
            "reduced": {"n": self.reduced_size[0], "m": self.reduced_size[1],
                        "k": self.reduced_k},
            "direct_count": str(self.direct_count),
            "reduced_count": str(self.reduced_count),
            "lifted_count": str(self.lifted_count),
            "size_bound_ok": self.size_bound_ok,
            "passed": self.passed,
        }


def verify_compression(c: Compression, inst: CountingInstance) -> VerificationReport:
    """Round-trip check against the oracles on one small instance.

    Reduces, solves the reduced instance by oracle, lifts, and compares
    with a direct oracle run.  Oracle size errors propagate.
    """
    direct = oracle_count(c.source_problem, inst)
    result = c.reduce(inst)
    try:
        reduced_count = oracle_count(c.target_problem, result.reduced)
    except oracles.OracleSizeError:
        if c.reference_reduced_count is None:
            raise
        reduced_count = c.reference_reduced_count(inst, result)
    lifted = c.lift(result.context, reduced_count)
    bound_ok = None
    if c.size_bound is not None and inst.k is not None:
        bound_ok = result.reduced.graph.n <= c.size_bound(inst.k)
    return VerificationReport(
        compression=c.name,
        instance_size=(inst.graph.n, inst.graph.m),
        reduced_size=(result.reduced.graph.n, result.reduced.graph.m),
        reduced_k=result.reduced.k,
        direct_count=direct,
        reduced_count=reduced_count,
        lifted_count=lifted,
        size_bound_ok=bound_ok,
        passed=lifted == direct and bound_ok is not False,
    )


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

@dataclass
class Registry:
    compressions: dict[str, Compression] = field(default_factory=dict)
    ppts: dict[str, Ppt] = field(default_factory=dict)

    def add_compression(self, c: Compression) -> None:
        if c.name in self.compressions:
            raise ValueError(f"duplicate compression {c.name!r}")
        self.compressions[c.name] = c

    def add_ppt(self, p: Ppt) -> None:
        if p.name in self.ppts:
            raise ValueError(f"duplicate PPT {p.name!r}")
        self.ppts[p.name] = p

    def compression(self, name: str) -> Compression:
        try:
            return self.compressions[name]
        except KeyError:
            raise KeyError(f"no compression named {name!r}") from None

    def ppt(self, name: str) -> Ppt:
        try:
            return self.ppts[name]
        except KeyError:
            raise KeyError(f"no PPT named {name!r}") from None


def default_registry() -> Registry:
    """Registry with the shipped kernels and transformations."""
    from . import compositions, vc_kernel

    reg = Registry()
    reg.add_compression(vc_kernel.vertex_cover_kernel())
    reg.add_compression(vc_kernel.minimal_vertex_cover_kernel())
    for problem in PROBLEMS:
        reg.add_compression(identity_compression(problem))
    reg.add_ppt(compositions.mincut_to_oct_ppt())
    reg.add_ppt(compositions.oct_to_vc_ppt())
    return reg
