"""Loopless mixed graphs: nodes joined by lines, arrows, and arcs.

Edges are stored in mark form: each endpoint carries either a tail or an
arrowhead. Lines are tail-tail, arrows tail-head, arcs head-head. Multiple
edges between the same pair are allowed, so every edge carries a key that
distinguishes parallel copies within one graph.

Graphs are immutable after construction and all operations here are pure
functions; values can be shared freely across threads.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs, unknown nodes, or violated preconditions."""


class Mark(Enum):
    TAIL = "tail"
    HEAD = "head"


class EdgeKind(Enum):
    LINE = "line"
    ARROW = "arrow"
    ARC = "arc"


#: Textual edge operators, shared by the parser, serializer, and path rendering.
#: Keyed by (mark at left endpoint, mark at right endpoint).
EDGE_OPS = {
    (Mark.TAIL, Mark.TAIL): "--",
    (Mark.TAIL, Mark.HEAD): "->",
    (Mark.HEAD, Mark.TAIL): "<-",
    (Mark.HEAD, Mark.HEAD): "<->",
}

_KIND_RANK = {EdgeKind.LINE: 0, EdgeKind.ARROW: 1, EdgeKind.ARC: 2}


@dataclass(frozen=True)
class Edge:
    """One edge of a mixed graph, in mark form.

    ``key`` distinguishes parallel edges; it is assigned by the owning graph
    and takes part in equality so that a path may not silently reuse one of
    two identical copies.
    """

    a: str
    b: str
    mark_a: Mark
    mark_b: Mark
    key: int = 0

    @property
    def kind(self) -> EdgeKind:
        if self.mark_a is Mark.TAIL and self.mark_b is Mark.TAIL:
            return EdgeKind.LINE
        if self.mark_a is Mark.HEAD and self.mark_b is Mark.HEAD:
            return EdgeKind.ARC
        return EdgeKind.ARROW

    @property
    def source(self) -> str:
        """Tail endpoint of an arrow."""
        if self.kind is not EdgeKind.ARROW:
            raise GraphError(f"edge {self} is not an arrow")
        return self.a if self.mark_a is Mark.TAIL else self.b

    @property
    def target(self) -> str:
        """Head endpoint of an arrow."""
        if self.kind is not EdgeKind.ARROW:
            raise GraphError(f"edge {self} is not an arrow")
        return self.b if self.mark_a is Mark.TAIL else self.a

    def is_loop(self) -> bool:
        return self.a == self.b

    def touches(self, node: str) -> bool:
        return node == self.a or node == self.b

    def other(self, node: str) -> str:
        if node == self.a:
            return self.b
        if node == self.b:
            return self.a
        raise GraphError(f"node {node!r} is not an endpoint of {self}")

    def mark_at(self, node: str) -> Mark:
        if node == self.a:
            return self.mark_a
        if node == self.b:
            return self.mark_b
        raise GraphError(f"node {node!r} is not an endpoint of {self}")

    def head_at(self, node: str) -> bool:
        """True when this edge has an arrowhead pointing to ``node``."""
        return self.mark_at(node) is Mark.HEAD

    def canonical(self) -> tuple[str, str, str, str]:
        """Endpoint-sorted structural form, ignoring the key."""
        if self.a <= self.b:
            return (self.a, self.b, self.mark_a.value, self.mark_b.value)
        return (self.b, self.a, self.mark_b.value, self.mark_a.value)

    def __str__(self) -> str:
        l, r, ml, mr = self.canonical()
        op = EDGE_OPS[(Mark(ml), Mark(mr))]
        return f"{l} {op} {r}"


def _edge_from_spec(a: str, op: str, b: str, key: int) -> Edge:
    for (ma, mb), text in EDGE_OPS.items():
        if text == op:
            return Edge(a, b, ma, mb, key)
    raise GraphError(f"unknown edge operator {op!r}")


class MixedGraph:
    """A labeled mixed multigraph over string node labels."""

    def __init__(self, nodes: Iterable[str], edges: Iterable[Edge] = ()):
        node_list = list(nodes)
        seen: set[str] = set()
        for n in node_list:
            if not n:
                raise GraphError("empty node label")
            if n in seen:
                raise GraphError(f"duplicate node label {n!r}")
            seen.add(n)
        self._nodes = frozenset(seen)
        rekeyed = []
        for k, e in enumerate(edges):
            if e.a not in self._nodes or e.b not in self._nodes:
                raise GraphError(f"unknown endpoint label in edge {e}")
            rekeyed.append(Edge(e.a, e.b, e.mark_a, e.mark_b, k))
        self._edges = tuple(rekeyed)
        self._incidence: dict[str, list[Edge]] = {n: [] for n in node_list}
        for e in self._edges:
            self._incidence[e.a].append(e)
            if e.b != e.a:
                self._incidence[e.b].append(e)

    @property
    def nodes(self) -> frozenset[str]:
        return self._nodes

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def node_list(self) -> list[str]:
        return sorted(self._nodes)

    def edges_at(self, node: str) -> tuple[Edge, ...]:
        self._require(node)
        return tuple(self._incidence[node])

    def edges_between(self, u: str, v: str) -> tuple[Edge, ...]:
        self._require(u)
        self._require(v)
        return tuple(e for e in self._incidence[u] if e.touches(v) and e.touches(u))

    def adjacent(self, u: str, v: str) -> bool:
        return u != v and bool(self.edges_between(u, v))

    def _require(self, node: str) -> None:
        if node not in self._nodes:
            raise GraphError(f"unknown node {node!r}")

    def is_loopless(self) -> bool:
        return not any(e.is_loop() for e in self._edges)

    def require_loopless(self) -> None:
        for e in self._edges:
            if e.is_loop():
                raise GraphError(f"graph contains a loop at {e.a!r}")

    def with_edge(self, edge: Edge) -> "MixedGraph":
        return MixedGraph(self.node_list(), self._edges + (edge,))

    def simplify(self) -> "MixedGraph":
        """Collapse parallel edges of the same kind and direction to one copy.

        Separation queries are unchanged by this: the walk rules depend only
        on the marks an edge shows to each endpoint.
        """
        kept: list[Edge] = []
        seen: set[tuple] = set()
        for e in self._edges:
            c = e.canonical()
            if c not in seen:
                seen.add(c)
                kept.append(e)
        return MixedGraph(self.node_list(), kept)

    # -- neighborhood queries -------------------------------------------------

    def parents(self, node: str) -> set[str]:
        """Nodes j with an arrow j -> node."""
        self._require(node)
        return {
            e.other(node)
            for e in self._incidence[node]
            if e.kind is EdgeKind.ARROW and e.target == node and not e.is_loop()
        }

    def children(self, node: str) -> set[str]:
        self._require(node)
        return {
            e.other(node)
            for e in self._incidence[node]
            if e.kind is EdgeKind.ARROW and e.source == node and not e.is_loop()
        }

    def neighbors(self, node: str, kind: Optional[EdgeKind] = None) -> set[str]:
        """Adjacent nodes, optionally restricted to one edge kind."""
        self._require(node)
        return {
            e.other(node)
            for e in self._incidence[node]
            if (kind is None or e.kind is kind) and not e.is_loop()
        }

    # -- ancestry -------------------------------------------------------------

    def ancestors(self, targets: Iterable[str]) -> set[str]:
        """Union of an(i) over the targets: nodes with a direction-preserving
        all-arrow route into some target.

        A target is excluded from the result unless it lies on a directed
        cycle back to itself.
        """
        result: set[str] = set()
        stack: list[str] = []
        for t in targets:
            self._require(t)
            stack.extend(self.parents(t))
        while stack:
            v = stack.pop()
            if v in result:
                continue
            result.add(v)
            stack.extend(self.parents(v))
        return result

    def descendants(self, sources: Iterable[str]) -> set[str]:
        result: set[str] = set()
        stack: list[str] = []
        for s in sources:
            self._require(s)
            stack.extend(self.children(s))
        while stack:
            v = stack.pop()
            if v in result:
                continue
            result.add(v)
            stack.extend(self.children(v))
        return result

    def on_directed_cycle(self, node: str) -> bool:
        """True when some all-arrow cycle passes through ``node``."""
        return node in self.ancestors([node])

    # -- anterior machinery ---------------------------------------------------

    def line_endpoints(self) -> set[str]:
        ends: set[str] = set()
        for e in self._edges:
            if e.kind is EdgeKind.LINE:
                ends.add(e.a)
                ends.add(e.b)
        return ends

    def is_anterior(self) -> bool:
        """True when no arrowhead points at the endpoint of a line."""
        ends = self.line_endpoints()
        for e in self._edges:
            if (e.mark_a is Mark.HEAD and e.a in ends) or (
                e.mark_b is Mark.HEAD and e.b in ends
            ):
                return False
        return True

    def anterior_graph(self, rng: Optional[random.Random] = None) -> "MixedGraph":
        """Fixpoint of removing arrowheads that point at endpoints of lines.

        The fixpoint is independent of removal order; passing ``rng`` removes
        one eligible arrowhead at a time in random order, which exists so that
        order-independence can be exercised by tests. Edge keys are preserved,
        so edges of the result correspond one-to-one to edges of the input.
        """
        self.require_loopless()
        marks: list[list[Mark]] = [[e.mark_a, e.mark_b] for e in self._edges]

        def candidates() -> list[tuple[int, int]]:
            ends: set[str] = set()
            for e, (ma, mb) in zip(self._edges, marks):
                if ma is Mark.TAIL and mb is Mark.TAIL:
                    ends.add(e.a)
                    ends.add(e.b)
            found = []
            for idx, e in enumerate(self._edges):
                if marks[idx][0] is Mark.HEAD and e.a in ends:
                    found.append((idx, 0))
                if marks[idx][1] is Mark.HEAD and e.b in ends:
                    found.append((idx, 1))
            return found

        while True:
            todo = candidates()
            if not todo:
                break
            if rng is None:
                for idx, side in todo:
                    marks[idx][side] = Mark.TAIL
            else:
                idx, side = todo[rng.randrange(len(todo))]
                marks[idx][side] = Mark.TAIL

        edges = [
            Edge(e.a, e.b, ma, mb, e.key)
            for e, (ma, mb) in zip(self._edges, marks)
        ]
        return MixedGraph(self.node_list(), edges)

    def anteriors(self, node: str) -> set[str]:
        """ant(node): nodes that reach ``node`` in the anterior graph along a
        path of lines followed by arrows. The node itself is never included.
        """
        self._require(node)
        self.require_loopless()
        g = self if self.is_anterior() else self.anterior_graph()
        arrow_part = g.ancestors([node]) | {node}
        reached = set(arrow_part)
        queue = deque(arrow_part)
        while queue:
            v = queue.popleft()
            for e in g._incidence[v]:
                if e.kind is EdgeKind.LINE:
                    w = e.other(v)
                    if w not in reached:
                        reached.add(w)
                        queue.append(w)
        reached.discard(node)
        return reached

    # -- structural identity ----------------------------------------------

    def canonical_form(self) -> tuple:
        return (
            tuple(sorted(self._nodes)),
            tuple(sorted(e.canonical() for e in self._edges)),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return self.canonical_form() == other.canonical_form()

    def __hash__(self) -> int:
        return hash(self.canonical_form())

    def __repr__(self) -> str:
        return (
            f"MixedGraph({len(self._nodes)} nodes, "
            f"{len(self._edges)} edges: "
            + "; ".join(str(e) for e in self._edges)
            + ")"
        )


def build_graph(
    nodes: Iterable[str], edges: Iterable[tuple[str, str, str]] = ()
) -> MixedGraph:
    """Build a graph from node labels and (left, operator, right) edge specs.

    Operators are ``--`` (line), ``->`` / ``<-`` (arrow), ``<->`` (arc).
    Endpoints must appear in the node list; parallel edge specs create
    multi-edges.
    """
    built = [_edge_from_spec(a, op, b, k) for k, (a, op, b) in enumerate(edges)]
    return MixedGraph(nodes, built)


# -- paths ------------------------------------------------------------------


@dataclass(frozen=True)
class Path:
    """An alternating node/edge sequence with no repeated node or edge.

    Edge references keep parallel edges apart; a single node is allowed as the
    degenerate result of combining fully overlapping paths.
    """

    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if not self.nodes:
            raise GraphError("a path needs at least one node")
        if len(self.edges) != len(self.nodes) - 1:
            raise GraphError("node/edge counts do not alternate")
        if len(set(self.nodes)) != len(self.nodes):
            raise GraphError(f"repeated node in path {self.nodes}")
        if len(set(self.edges)) != len(self.edges):
            raise GraphError("repeated edge in path")
        for u, e, v in zip(self.nodes, self.edges, self.nodes[1:]):
            if not (e.touches(u) and e.touches(v)) or u == v:
                raise GraphError(f"edge {e} does not join {u!r} and {v!r}")

    @property
    def first(self) -> str:
        return self.nodes[0]

    @property
    def last(self) -> str:
        return self.nodes[-1]

    def is_degenerate(self) -> bool:
        return len(self.nodes) == 1

    def inner_nodes(self) -> tuple[str, ...]:
        return self.nodes[1:-1]

    def reversed(self) -> "Path":
        return Path(tuple(reversed(self.nodes)), tuple(reversed(self.edges)))

    def arrowhead_at(self, endpoint: str) -> bool:
        """Arrowhead pointing to one of the path's endpoints, on the path."""
        if self.is_degenerate():
            raise GraphError("degenerate path has no incident edges")
        if endpoint == self.nodes[0]:
            return self.edges[0].head_at(endpoint)
        if endpoint == self.nodes[-1]:
            return self.edges[-1].head_at(endpoint)
        raise GraphError(f"{endpoint!r} is not an endpoint of this path")

    def is_collider_at(self, index: int) -> bool:
        """Collider test for the inner node at ``index``: arrowheads from both
        flanking edges."""
        if not 0 < index < len(self.nodes) - 1:
            raise GraphError(f"index {index} is not an inner position")
        v = self.nodes[index]
        return self.edges[index - 1].head_at(v) and self.edges[index].head_at(v)

    def __str__(self) -> str:
        if self.is_degenerate():
            return self.nodes[0]
        parts = [self.nodes[0]]
        for e, v in zip(self.edges, self.nodes[1:]):
            u = e.other(v)
            op = EDGE_OPS[(e.mark_at(u), e.mark_at(v))]
            parts.append(op)
            parts.append(v)
        return " ".join(parts)


def make_path(graph: MixedGraph, nodes: Sequence[str], picks: Sequence[Optional[Edge]] = ()) -> Path:
    """Build a path in ``graph`` from a node sequence.

    When several parallel edges join a consecutive pair the choice must be
    disambiguated through ``picks`` (entries may be None where unambiguous).
    """
    node_tuple = tuple(nodes)
    edges: list[Edge] = []
    for i, (u, v) in enumerate(zip(node_tuple, node_tuple[1:])):
        pick = picks[i] if i < len(picks) else None
        if pick is not None:
            if not (pick.touches(u) and pick.touches(v)):
                raise GraphError(f"edge {pick} does not join {u!r} and {v!r}")
            edges.append(pick)
            continue
        options = graph.edges_between(u, v)
        if not options:
            raise GraphError(f"no edge between {u!r} and {v!r}")
        if len(options) > 1:
            raise GraphError(
                f"ambiguous edge between {u!r} and {v!r}; pass picks to choose"
            )
        edges.append(options[0])
    return Path(node_tuple, tuple(edges))


def path_in_graph(graph: MixedGraph, path: Path) -> bool:
    """True when every node and edge of ``path`` belongs to ``graph``."""
    if any(n not in graph.nodes for n in path.nodes):
        return False
    return all(e.key < len(graph.edges) and graph.edges[e.key] == e for e in path.edges)


def combine_paths(p1: Path, p2: Path) -> Path:
    """Combine a path ending at h with a path starting at h.

    The result follows p1 up to its first node that lies on p2, then follows
    p2 from there; with disjoint interiors this is plain concatenation. Fully
    overlapping inputs collapse to a degenerate single-node path, which
    callers must treat as "no usable connecting path".
    """
    if p1.last != p2.first:
        raise GraphError(
            f"cannot combine: {p1.last!r} does not match {p2.first!r}"
        )
    on_p2 = set(p2.nodes)
    cut = next(i for i, v in enumerate(p1.nodes) if v in on_p2)
    k = p1.nodes[cut]
    j = p2.nodes.index(k)
    return Path(
        p1.nodes[: cut + 1] + p2.nodes[j + 1 :],
        p1.edges[:cut] + p2.edges[j:],
    )


class TripathClass(Enum):
    COLLIDER = "collider"
    NON_COLLIDER = "non-collider"


def classify_tripath(graph: MixedGraph, tripath: Path) -> TripathClass:
    """Collider iff both flanking edges put an arrowhead on the inner node."""
    if len(tripath.nodes) != 3:
        raise GraphError("a tripath has exactly three nodes")
    if not path_in_graph(graph, tripath):
        raise GraphError("tripath is not a path of this graph")
    if tripath.is_collider_at(1):
        return TripathClass.COLLIDER
    return TripathClass.NON_COLLIDER


def endpoint_identical(first: Path | Edge, second: Path | Edge) -> bool:
    """True when two paths (or edges) between the same endpoints agree on
    having an arrowhead at each shared endpoint."""

    def as_path(obj: Path | Edge) -> Path:
        if isinstance(obj, Edge):
            return Path((obj.a, obj.b), (obj,))
        return obj

    p, q = as_path(first), as_path(second)
    ends_p = {p.first, p.last}
    ends_q = {q.first, q.last}
    if ends_p != ends_q or len(ends_p) != 2:
        raise GraphError(f"endpoint sets differ: {ends_p} vs {ends_q}")
    return all(p.arrowhead_at(x) == q.arrowhead_at(x) for x in ends_p)
