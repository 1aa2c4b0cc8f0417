"""Seeded random graph corpora for property tests and the gen subcommand.

A CorpusSpec pins node-count range, per-kind edge probabilities, a multi-edge
probability, an optional structural constraint, and the seed; the seed fully
determines the output. Constraints are enforced by rejection sampling (plus
the maximal completion for maximal-ribbonless), and every emitted graph is
rechecked against its constraint.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass

from .graph import GraphError, MixedGraph, build_graph
from .structure import is_maximal, is_ribbonless, maximalize

CONSTRAINTS = ("none", "ribbonless", "maximal-ribbonless")

_LABELS = string.ascii_lowercase


@dataclass(frozen=True)
class CorpusSpec:
    count: int
    nodes: tuple[int, int]  # inclusive range
    p_line: float = 0.25
    p_arrow: float = 0.3
    p_arc: float = 0.2
    p_multi: float = 0.1
    constraint: str = "none"
    seed: int = 0
    max_attempts_per_graph: int = 1000

    def __post_init__(self) -> None:
        lo, hi = self.nodes
        if not 1 <= lo <= hi <= len(_LABELS):
            raise GraphError(f"bad node range {self.nodes}")
        for p in (self.p_line, self.p_arrow, self.p_arc, self.p_multi):
            if not 0.0 <= p <= 1.0:
                raise GraphError(f"probability {p} outside [0, 1]")
        if self.constraint not in CONSTRAINTS:
            raise GraphError(f"unknown constraint {self.constraint!r}")
        if self.count < 0:
            raise GraphError("count must be non-negative")


def random_lmg(rng: random.Random, spec: CorpusSpec) -> MixedGraph:
    """One unconstrained draw: independent per-kind coins for every pair,
    then a chance to duplicate each chosen edge."""
    n = rng.randint(*spec.nodes)
    labels = list(_LABELS[:n])
    edges: list[tuple[str, str, str]] = []
    for i in range(n):
        for j in range(i + 1, n):
            a, b = labels[i], labels[j]
            if rng.random() < spec.p_line:
                edges.append((a, "--", b))
            if rng.random() < spec.p_arrow:
                edges.append((a, "->", b) if rng.random() < 0.5 else (b, "->", a))
            if rng.random() < spec.p_arc:
                edges.append((a, "<->", b))
    for e in list(edges):
        if rng.random() < spec.p_multi:
            edges.append(e)
    return build_graph(labels, edges)


def _satisfies(graph: MixedGraph, constraint: str) -> bool:
    if constraint == "none":
        return True
    if constraint == "ribbonless":
        return is_ribbonless(graph)
    return is_ribbonless(graph) and is_maximal(graph)


def generate_corpus(spec: CorpusSpec) -> list[MixedGraph]:
    rng = random.Random(spec.seed)
    graphs: list[MixedGraph] = []
    attempts = 0
    while len(graphs) < spec.count:
        budget = spec.max_attempts_per_graph
        produced = None
        for _ in range(budget):
            attempts += 1
            g = random_lmg(rng, spec)
            if spec.constraint == "maximal-ribbonless":
                if not is_ribbonless(g):
                    continue
                g = maximalize(g)
            if _satisfies(g, spec.constraint):
                produced = g
                break
        if produced is None:
            rate = len(graphs) / attempts if attempts else 0.0
            raise GraphError(
                f"rejection budget exhausted for constraint {spec.constraint!r} "
                f"(acceptance rate {rate:.3f} over {attempts} draws)"
            )
        graphs.append(produced)
    return graphs
