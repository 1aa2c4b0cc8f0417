"""m-separation queries over loopless mixed graphs.

A path is m-connecting given C when every collider on it lies in C or has a
directed route into C, and every non-collider avoids C. Two node sets are
m-separated by C when no m-connecting path joins them.

Two independent routes are provided: a breadth-first reachability engine over
(node, arrived-with-arrowhead) walk states, and a literal oracle that
enumerates all simple paths and applies the definition. The engine works on
walks while the definition speaks of paths; their equivalence is not assumed,
it is enforced by agreement tests on randomized corpora, and any divergence
is a bug.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .graph import Edge, GraphError, MixedGraph, Path, combine_paths, path_in_graph

DEFAULT_ORACLE_LIMIT = 8


@dataclass(frozen=True)
class SeparationQuery:
    """An ordered query <A, B | C> over pairwise disjoint node sets."""

    a: frozenset[str]
    b: frozenset[str]
    c: frozenset[str]

    def __post_init__(self) -> None:
        if not self.a or not self.b:
            raise GraphError("separation queries need non-empty A and B")
        if self.a & self.b or self.a & self.c or self.b & self.c:
            raise GraphError("A, B, C must be pairwise disjoint")

    @staticmethod
    def of(a: Iterable[str], b: Iterable[str], c: Iterable[str] = ()) -> "SeparationQuery":
        return SeparationQuery(frozenset(a), frozenset(b), frozenset(c))


def _check_pair(graph: MixedGraph, x: str, y: str, given: frozenset[str]) -> None:
    graph.require_loopless()
    for n in (x, y, *given):
        if n not in graph.nodes:
            raise GraphError(f"unknown node {n!r}")
    if x == y:
        raise GraphError("endpoints of a separation query must differ")
    if x in given or y in given:
        raise GraphError("query endpoints may not appear in the conditioning set")


def _walk_reach(
    graph: MixedGraph,
    x: str,
    open_colliders: frozenset[str],
    c: frozenset[str],
    stop_at: Optional[str],
) -> set[str]:
    """Mark-state walk reachability: nodes with an m-connecting walk from x.

    States are (node, arrived-with-arrowhead); a walk may leave a node over
    an edge when the node, acting as collider between the arriving and
    departing marks, lies in C or its ancestor closure, or, acting as
    non-collider, lies outside C. Walks may revisit nodes, so this is only
    used on anterior graphs, where a connecting walk can always be cut down
    to a connecting path.
    """
    reached: set[str] = set()
    seen: set[tuple[str, bool]] = set()
    queue: deque[tuple[str, bool]] = deque()

    def arrive(w: str, head: bool) -> None:
        reached.add(w)
        state = (w, head)
        if state not in seen:
            seen.add(state)
            queue.append(state)

    for e in graph.edges_at(x):
        arrive(e.other(x), e.head_at(e.other(x)))
        if stop_at is not None and stop_at in reached:
            return reached
    while queue:
        v, head_in = queue.popleft()
        for e in graph.edges_at(v):
            head_out = e.head_at(v)
            if head_in and head_out:
                if v not in open_colliders:
                    continue
            elif v in c:
                continue
            w = e.other(v)
            arrive(w, e.head_at(w))
            if stop_at is not None and stop_at in reached:
                return reached
    return reached


def _path_reach(
    graph: MixedGraph,
    x: str,
    open_colliders: frozenset[str],
    c: frozenset[str],
    stop_at: Optional[str],
) -> set[str]:
    """Simple-path reachability: the walk state is extended with the set of
    visited nodes, so revisits are impossible and the search is exact for
    paths on any loopless mixed graph. Exponential in the worst case, meant
    for desk-scale graphs.
    """
    bit = {n: 1 << k for k, n in enumerate(graph.node_list())}
    reached: set[str] = set()
    seen: set[tuple[str, int, bool]] = set()
    queue: deque[tuple[str, int, bool]] = deque()

    def arrive(w: str, mask: int, head: bool) -> None:
        reached.add(w)
        state = (w, mask | bit[w], head)
        if state not in seen:
            seen.add(state)
            queue.append(state)

    for e in graph.edges_at(x):
        arrive(e.other(x), bit[x], e.head_at(e.other(x)))
        if stop_at is not None and stop_at in reached:
            return reached
    while queue:
        v, mask, head_in = queue.popleft()
        for e in graph.edges_at(v):
            head_out = e.head_at(v)
            if head_in and head_out:
                if v not in open_colliders:
                    continue
            elif v in c:
                continue
            w = e.other(v)
            if mask & bit[w]:
                continue
            arrive(w, mask, e.head_at(w))
            if stop_at is not None and stop_at in reached:
                return reached
    return reached


def _m_reachable(
    graph: MixedGraph, x: str, c: frozenset[str], stop_at: Optional[str] = None
) -> set[str]:
    """All nodes joined to x by an m-connecting path given C.

    On anterior graphs walk reachability is exact and cheap (two states per
    node); elsewhere walks can fake connections that no simple path realizes
    (a walk may bounce off a line below a collider and return with a plain
    tail), so the visited-set variant is used instead.
    """
    open_colliders = c | graph.ancestors(c)
    if graph.is_anterior():
        return _walk_reach(graph, x, open_colliders, c, stop_at)
    return _path_reach(graph, x, open_colliders, c, stop_at)


def m_connecting_path_exists(
    graph: MixedGraph, x: str, y: str, given: Iterable[str] = ()
) -> bool:
    """Reachability engine: is there an m-connecting path from x to y given C?"""
    c = frozenset(given)
    _check_pair(graph, x, y, c)
    return y in _m_reachable(graph, x, c, stop_at=y)


def m_separated(
    graph: MixedGraph,
    a: Iterable[str],
    b: Iterable[str],
    c: Iterable[str] = (),
) -> bool:
    """True when no pair i in A, j in B is m-connected given C.

    The reduction to singleton pairs is licensed by decomposition and
    composition of the induced independence model.
    """
    query = SeparationQuery.of(a, b, c)
    for i in sorted(query.a):
        for j in sorted(query.b):
            if m_connecting_path_exists(graph, i, j, query.c):
                return False
    return True


def is_m_connecting_path(
    graph: MixedGraph, path: Path, given: Iterable[str] = ()
) -> bool:
    """Literal per-node check of the m-connecting predicate for one path."""
    if not path_in_graph(graph, path):
        raise GraphError("path does not belong to this graph")
    if path.is_degenerate():
        return False
    c = frozenset(given)
    open_colliders = c | graph.ancestors(c)
    for idx in range(1, len(path.nodes) - 1):
        v = path.nodes[idx]
        if path.is_collider_at(idx):
            if v not in open_colliders:
                return False
        elif v in c:
            return False
    return True


def _simple_paths(graph: MixedGraph, x: str, y: str) -> Iterable[Path]:
    """All simple paths from x to y, parallel edges kept distinct."""

    def edge_order(e: Edge, at: str):
        return (e.other(at), e.canonical(), e.key)

    stack_nodes: list[str] = [x]
    stack_edges: list[Edge] = []
    visited: set[str] = {x}

    def walk() -> Iterable[Path]:
        here = stack_nodes[-1]
        for e in sorted(graph.edges_at(here), key=lambda e: edge_order(e, here)):
            w = e.other(here)
            if w == y:
                yield Path(tuple(stack_nodes) + (y,), tuple(stack_edges) + (e,))
                continue
            if w in visited:
                continue
            stack_nodes.append(w)
            stack_edges.append(e)
            visited.add(w)
            yield from walk()
            visited.discard(w)
            stack_edges.pop()
            stack_nodes.pop()

    return walk()


def oracle_m_separated(
    graph: MixedGraph,
    a: Iterable[str],
    b: Iterable[str],
    c: Iterable[str] = (),
    limit: int = DEFAULT_ORACLE_LIMIT,
) -> bool:
    """Brute-force ground truth: enumerate every simple path between the two
    sets and test the m-connecting predicate on each.

    Exponential in graph size; refuses graphs larger than ``limit`` nodes.
    """
    if len(graph.nodes) > limit:
        raise GraphError(
            f"oracle limit exceeded: {len(graph.nodes)} nodes > {limit}"
        )
    query = SeparationQuery.of(a, b, c)
    for i in sorted(query.a):
        for j in sorted(query.b):
            _check_pair(graph, i, j, query.c)
            for path in _simple_paths(graph, i, j):
                if is_m_connecting_path(graph, path, query.c):
                    return False
    return True


def find_m_connecting_path(
    graph: MixedGraph, x: str, y: str, given: Iterable[str] = ()
) -> Optional[Path]:
    """Return a concrete m-connecting witness path, or None.

    Depth-first search over simple paths, pruning a partial path as soon as
    its newest inner node violates the predicate. Deterministic: edges are
    explored in sorted order, so the same witness is returned every run.
    """
    c = frozenset(given)
    _check_pair(graph, x, y, c)
    open_colliders = c | graph.ancestors(c)

    def ok_inner(prev: Edge, v: str, nxt: Edge) -> bool:
        if prev.head_at(v) and nxt.head_at(v):
            return v in open_colliders
        return v not in c

    def edge_order(e: Edge, at: str):
        return (e.other(at), e.canonical(), e.key)

    def extend(nodes: list[str], edges: list[Edge], visited: set[str]) -> Optional[Path]:
        here = nodes[-1]
        for e in sorted(graph.edges_at(here), key=lambda e: edge_order(e, here)):
            if edges and not ok_inner(edges[-1], here, e):
                continue
            w = e.other(here)
            if w == y:
                return Path(tuple(nodes) + (y,), tuple(edges) + (e,))
            if w in visited:
                continue
            found = extend(nodes + [w], edges + [e], visited | {w})
            if found is not None:
                return found
        return None

    return extend([x], [], {x})


def combine_m_connecting(
    graph: MixedGraph, p1: Path, p2: Path, given: Iterable[str] = ()
) -> Optional[Path]:
    """Combine two m-connecting paths that meet at a common node h, when the
    junction is safe.

    Requires an anterior graph (no arrowhead meets a line). With i_n the node
    before h on p1 and j_m the node after h on p2, the combination is
    returned in exactly these situations:

    a1) <i_n, h, j_m> is a collider and h is in C or an ancestor of C;
    a2) i_n equals j_m, both paths put an arrowhead at h, and h is in C or an
        ancestor of C;
    b1) <i_n, h, j_m> is a non-collider and h is outside C;
    b2) i_n equals j_m and the paths' edges at h do not both carry arrowheads.

    Otherwise, and for combinations that collapse to a degenerate path, None
    is returned.
    """
    if not graph.is_anterior():
        raise GraphError("combination rules require an anterior graph")
    c = frozenset(given)
    if not (path_in_graph(graph, p1) and path_in_graph(graph, p2)):
        raise GraphError("paths do not belong to this graph")
    if p1.last != p2.first:
        raise GraphError("paths do not share an endpoint")
    if p1.is_degenerate() or p2.is_degenerate():
        raise GraphError("degenerate paths cannot be combined")
    if not is_m_connecting_path(graph, p1, c) or not is_m_connecting_path(graph, p2, c):
        raise GraphError("inputs must be m-connecting given C")

    h = p1.last
    i_n = p1.nodes[-2]
    j_m = p2.nodes[1]
    head_1 = p1.edges[-1].head_at(h)
    head_2 = p2.edges[0].head_at(h)
    open_colliders = c | graph.ancestors(c)

    if i_n == j_m:
        both_heads = head_1 and head_2
        allowed = (both_heads and h in open_colliders) or not both_heads
    else:
        if head_1 and head_2:
            allowed = h in open_colliders
        else:
            allowed = h not in c
    if not allowed:
        return None
    combined = combine_paths(p1, p2)
    if combined.is_degenerate():
        return None
    return combined
