"""Command-line front end.

Counts cross this boundary as decimal strings only; graphs as the
``p/e/t/k`` text format; lift contexts and composition metadata as the
owning modules' JSON documents.  Exit codes: 0 success, 1 verification
failure, 2 usage error, 3 input or parse error, 4 oracle size guard.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import compositions, oracles, verification
from .framework import (
    CompositionError,
    CountingInstance,
    IntegrityError,
    LiftContext,
    PreconditionError,
    ProtocolError,
    default_registry,
)
from .graphs import ParseError, ParsedGraph, parse_graph, serialize_graph
from .vc_kernel import MINIMAL_VC_KERNEL, VC_KERNEL


class CliUsageError(Exception):
    pass


@dataclass
class RunReport:
    """One run's machine- and human-readable record; both renderings
    are produced from the same fields."""

    subcommand: str
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    def to_jsonable(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "checks": self.checks,
            "seconds": round(self.seconds, 3),
        }

    def human_lines(self) -> list[str]:
        lines = list(self.outputs.get("primary", []))
        for check in self.checks:
            verdict = "PASS" if check["passed"] else "FAIL"
            lines.append(f"{verdict} {check['name']}: {check['detail']}")
        return lines


def _emit(args, report: RunReport) -> None:
    if getattr(args, "json", False):
        print(json.dumps(report.to_jsonable(), sort_keys=True))
    else:
        for line in report.human_lines():
            print(line)


def _load(path: str) -> ParsedGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def _budget(args, parsed: ParsedGraph, required: bool = True) -> int | None:
    k = args.k if args.k is not None else parsed.k
    if k is None and required:
        raise CliUsageError("a budget is required: pass --k or put a k record in the file")
    return k


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_oracle(args) -> int:
    parsed = _load(args.graph)
    g = parsed.graph
    report = RunReport("oracle", inputs={"graph": args.graph, "which": args.which})
    if args.which in ("vc", "minvc", "oct"):
        k = _budget(args, parsed)
        counters = {
            "vc": oracles.count_vertex_covers,
            "minvc": oracles.count_minimal_vertex_covers,
            "oct": oracles.count_odd_cycle_transversals,
        }
        value = str(counters[args.which](g, k))
        report.inputs["k"] = k
    elif args.which == "mincut":
        if parsed.terminals is None:
            raise ValueError(f"{args.graph}: mincut needs a t record")
        count, size = oracles.count_min_st_cuts(g, parsed.terminals)
        value = str(count)
        report.outputs["cut_size"] = size
    elif args.which == "matching":
        value = str(oracles.max_matching_size(g))
    elif args.which == "lpvc":
        value = str(oracles.lp_vc_value(g))
    else:  # tw
        width, _ = oracles.exact_treewidth(g)
        value = str(width)
    report.outputs["value"] = value
    report.outputs["primary"] = [value]
    _emit(args, report)
    return 0


def cmd_kernel(args) -> int:
    registry = default_registry()
    name = VC_KERNEL if args.which == "vc" else MINIMAL_VC_KERNEL
    compression = registry.compression(name)
    report = RunReport(f"kernel {args.which} {args.action}")
    if args.action == "reduce":
        parsed = _load(args.graph)
        k = _budget(args, parsed)
        result = compression.reduce(CountingInstance(parsed.graph, None, k))
        Path(args.out).write_text(
            serialize_graph(result.reduced.graph, k=result.reduced.k), encoding="utf-8")
        Path(args.context).write_text(result.context.to_json(), encoding="utf-8")
        summary = (f"reduced to n={result.reduced.graph.n} m={result.reduced.graph.m} "
                   f"k={result.reduced.k} branch={result.context.payload['branch']}")
        report.inputs.update(graph=args.graph, k=k)
        report.outputs.update(out=args.out, context=args.context,
                              reduced_n=result.reduced.graph.n,
                              reduced_m=result.reduced.graph.m,
                              reduced_k=result.reduced.k,
                              primary=[summary])
    else:
        ctx = LiftContext.from_json(Path(args.context).read_text(encoding="utf-8"))
        value = str(compression.lift(ctx, int(args.count)))
        report.inputs.update(context=args.context, count=args.count)
        report.outputs.update(value=value, primary=[value])
    _emit(args, report)
    return 0


def _load_cut_instances(paths: str):
    instances = []
    for path in paths.split(","):
        parsed = _load(path)
        if parsed.terminals is None:
            raise ValueError(f"{path}: composition inputs need a t record")
        instances.append((parsed.graph, parsed.terminals))
    return instances


def cmd_compose(args) -> int:
    instances = _load_cut_instances(args.inputs)
    report = RunReport(f"compose {args.how}", inputs={"inputs": args.inputs})
    if args.how == "sum":
        composed = compositions.sum_compose(instances)
        Path(args.out).write_text(
            serialize_graph(composed.graph, composed.terminals, k=composed.cut_size),
            encoding="utf-8")
        summary = (f"composed n={composed.graph.n} m={composed.graph.m} "
                   f"cut_size={composed.cut_size}")
        report.outputs.update(out=args.out, cut_size=composed.cut_size, primary=[summary])
    else:
        composition = compositions.exact_compose(instances)
        Path(args.out).write_text(
            serialize_graph(composition.graph, composition.terminals), encoding="utf-8")
        Path(args.meta).write_text(composition.metadata.to_json(), encoding="utf-8")
        if args.td:
            Path(args.td).write_text(
                json.dumps(composition.witness.to_jsonable()), encoding="utf-8")
        summary = (f"composed n={composition.graph.n} m={composition.graph.m} "
                   f"branch={composition.metadata.branch} "
                   f"witness_width={composition.witness.width}")
        report.outputs.update(out=args.out, meta=args.meta,
                              branch=composition.metadata.branch,
                              witness_width=composition.witness.width,
                              primary=[summary])
    _emit(args, report)
    return 0


def cmd_extract(args) -> int:
    meta = compositions.ExactMetadata.from_json(Path(args.meta).read_text(encoding="utf-8"))
    counts = compositions.extract_counts(meta, int(args.count))
    report = RunReport("extract", inputs={"meta": args.meta, "count": args.count})
    report.outputs.update(values=[str(c) for c in counts],
                          primary=[str(c) for c in counts])
    _emit(args, report)
    return 0


def cmd_ppt(args) -> int:
    parsed = _load(args.graph)
    report = RunReport(f"ppt {args.which}", inputs={"graph": args.graph})
    if args.which == "mincut-oct":
        if parsed.terminals is None:
            raise ValueError(f"{args.graph}: mincut-oct needs a t record")
        inst = CountingInstance(parsed.graph, parsed.terminals, None, "min-cut-size")
        result = compositions.mincut_to_oct_reduce(inst)
    else:
        k = _budget(args, parsed)
        inst = CountingInstance(parsed.graph, None, k)
        result = compositions.oct_to_vc_reduce(inst, verify_nice=args.check_nice)
    Path(args.out).write_text(
        serialize_graph(result.reduced.graph, k=result.reduced.k), encoding="utf-8")
    summary = (f"transformed to n={result.reduced.graph.n} "
               f"m={result.reduced.graph.m} k={result.reduced.k}")
    report.outputs.update(out=args.out, reduced_n=result.reduced.graph.n,
                          reduced_k=result.reduced.k, primary=[summary])
    _emit(args, report)
    return 0


def cmd_verify(args) -> int:
    start = time.monotonic()
    reports = verification.run_suite(args.suite, nmax=args.nmax, kmax=args.kmax,
                                     seed=args.seed, trials=args.trials)
    run = RunReport(f"verify {args.suite}",
                    inputs={"nmax": args.nmax, "kmax": args.kmax,
                            "seed": args.seed, "trials": args.trials})
    for rep in reports:
        run.checks.append({"name": rep.name, "passed": rep.passed,
                           "detail": f"{rep.checked} checks in {rep.seconds:.1f}s"
                                     + (f"; {rep.failures[0]}" if rep.failures else "")})
    run.seconds = time.monotonic() - start
    ok = all(rep.passed for rep in reports)
    run.outputs["passed"] = ok
    _emit(args, run)
    return 0 if ok else 1


def cmd_gen(args) -> int:
    g = oracles.random_graph(args.n, args.p, args.seed)
    terminals = None
    if args.terminals:
        s, t = args.terminals
        from .graphs import TerminalPair

        terminals = TerminalPair(s, t)
        terminals.check_in(g)
    Path(args.out).write_text(serialize_graph(g, terminals, k=args.k), encoding="utf-8")
    report = RunReport("gen gnp",
                       inputs={"n": args.n, "p": args.p, "seed": args.seed})
    summary = f"wrote n={g.n} m={g.m} to {args.out}"
    report.outputs.update(out=args.out, m=g.m, primary=[summary])
    _emit(args, report)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="countkernel",
        description="Counting kernels, cut compositions, and their brute-force verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="emit a JSON run report")

    p = sub.add_parser("oracle", help="solve an instance by brute force")
    p.add_argument("which", choices=["vc", "minvc", "oct", "mincut", "matching", "lpvc", "tw"])
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int)
    add_json(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("kernel", help="run a kernel's reduce or lift step")
    p.add_argument("which", choices=["vc", "minvc"])
    p.add_argument("action", choices=["reduce", "lift"])
    p.add_argument("--graph")
    p.add_argument("--k", type=int)
    p.add_argument("--out")
    p.add_argument("--context", required=True)
    p.add_argument("--count")
    add_json(p)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("compose", help="compose equal-cut-size instances")
    p.add_argument("how", choices=["sum", "exact"])
    p.add_argument("--inputs", required=True, help="comma-separated graph files")
    p.add_argument("--out", required=True)
    p.add_argument("--meta", help="metadata output file (exact only)")
    p.add_argument("--td", help="optional witness decomposition output file (exact only)")
    add_json(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("extract", help="recover input counts from a composed count")
    p.add_argument("--meta", required=True)
    p.add_argument("--count", required=True)
    add_json(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("ppt", help="run a parameter transformation's reduce step")
    p.add_argument("which", choices=["mincut-oct", "oct-vc"])
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--check-nice", action="store_true",
                   help="verify niceness by brute force before transforming")
    add_json(p)
    p.set_defaults(func=cmd_ppt)

    p = sub.add_parser("verify", help="run a property suite against the oracles")
    p.add_argument("suite", choices=["vc-kernel", "minvc-kernel", "sum", "exact",
                                     "ppt-oct", "ppt-vc", "all"])
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None)
    add_json(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a random graph file")
    p.add_argument("model", choices=["gnp"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--terminals", type=int, nargs=2, metavar=("S", "T"),
                   help="0-based terminal pair to record")
    p.add_argument("--k", type=int)
    add_json(p)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "kernel":
        if args.action == "reduce" and not (args.graph and args.out):
            parser.error("kernel reduce needs --graph and --out")
        if args.action == "lift" and args.count is None:
            parser.error("kernel lift needs --count")
    if args.command == "compose" and args.how == "exact" and not args.meta:
        parser.error("compose exact needs --meta")
    try:
        return args.func(args)
    except oracles.OracleSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except CliUsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, OSError, ValueError, CompositionError, ProtocolError,
            PreconditionError, IntegrityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
