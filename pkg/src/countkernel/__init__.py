"""countkernel: exact reduce/lift preprocessing for counting problems
on graphs, verified against brute-force oracles at desk scale."""

from .framework import (
    CompressionResult,
    CountingInstance,
    LiftContext,
    compose_ppt_compression,
    default_registry,
    run_compression,
    verify_compression,
)
from .graphs import Graph, TerminalPair, TreeDecomposition, parse_graph, serialize_graph

__all__ = [
    "CompressionResult",
    "CountingInstance",
    "Graph",
    "LiftContext",
    "TerminalPair",
    "TreeDecomposition",
    "compose_ppt_compression",
    "default_registry",
    "parse_graph",
    "run_compression",
    "serialize_graph",
    "verify_compression",
]
