"""Vertex connectivity oracles.

Local connectivity between non-adjacent vertices is computed as the number
of internally disjoint paths, via unit-capacity maximum flow on the
vertex-split digraph.  Global answers scan all non-adjacent pairs, which is
exact and cheap at the instance sizes this toolkit targets.  All tie-breaks
are lexicographic so repeated runs give identical answers.
"""

from __future__ import annotations

from itertools import combinations

from .graphs import Graph, connected_components, induced_subgraph, is_connected


class Complete:
    """Marker returned by min_vertex_cut for complete graphs (no cut exists)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:  # pragma: no cover - repr only
        return "Complete"


COMPLETE = Complete()

_INF = 1 << 30


def _local_connectivity(g: Graph, s: int, t: int, cap_at: int | None = None) -> int:
    """Max number of internally disjoint s-t paths (s, t non-adjacent).

    Vertex w is split into w_in = 2w and w_out = 2w+1 joined by a unit arc;
    each graph edge becomes two infinite arcs between the split halves.
    BFS augmentation; optionally stops early once `cap_at` paths are found.
    """
    residual: dict[int, dict[int, int]] = {}

    def add_arc(a: int, b: int, c: int) -> None:
        residual.setdefault(a, {})[b] = residual.get(a, {}).get(b, 0) + c
        residual.setdefault(b, {}).setdefault(a, 0)

    for w in g.vertices:
        add_arc(2 * w, 2 * w + 1, _INF if w in (s, t) else 1)
    for u, v in g.edges:
        add_arc(2 * u + 1, 2 * v, _INF)
        add_arc(2 * v + 1, 2 * u, _INF)

    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while cap_at is None or flow < cap_at:
        # BFS for an augmenting path in the residual network.
        parent = {source: source}
        queue = [source]
        while queue and sink not in parent:
            nxt = []
            for a in queue:
                for b, c in residual[a].items():
                    if c > 0 and b not in parent:
                        parent[b] = a
                        nxt.append(b)
            queue = nxt
        if sink not in parent:
            break
        bottleneck = _INF
        b = sink
        while b != source:
            a = parent[b]
            bottleneck = min(bottleneck, residual[a][b])
            b = a
        b = sink
        while b != source:
            a = parent[b]
            residual[a][b] -= bottleneck
            residual[b][a] += bottleneck
            b = a
        flow += bottleneck
    return flow


def _nonadjacent_pairs(g: Graph):
    vs = g.sorted_vertices()
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            if v not in g.adj[u]:
                yield u, v


def is_k_connected(g: Graph, k: int) -> bool:
    """True iff g has more than k vertices and no vertex cut of size < k."""
    if k <= 0:
        raise ValueError("k must be a positive integer")
    if g.n <= k:
        return False
    if not is_connected(g):
        return False
    if g.is_complete():
        return True
    for u, v in _nonadjacent_pairs(g):
        if _local_connectivity(g, u, v, cap_at=k) < k:
            return False
    return True


def connectivity(g: Graph) -> int:
    """kappa(g): n-1 for complete graphs, 0 when disconnected."""
    if g.n == 0:
        return 0
    if not is_connected(g):
        return 0
    if g.is_complete():
        return g.n - 1
    return min(_local_connectivity(g, u, v) for u, v in _nonadjacent_pairs(g))


def min_vertex_cut(g: Graph):
    """A minimum vertex cut of g, or COMPLETE when g is complete.

    Disconnected graphs return the empty cut.  Among all minimum cuts the
    lexicographically smallest (as a sorted vertex tuple) is returned, so
    the answer is deterministic.
    """
    if not is_connected(g):
        return frozenset()
    if g.is_complete():
        return COMPLETE
    kappa = connectivity(g)
    vs = g.sorted_vertices()
    for cut in combinations(vs, kappa):
        rest = g.vertices - set(cut)
        if rest and not is_connected(induced_subgraph(g, rest)):
            return frozenset(cut)
    raise RuntimeError("max-flow connectivity and cut enumeration disagree")


def split_by_cut(g: Graph, x: frozenset[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Split V - x into (Y, Z) with no Y-Z edges.

    Y is the connected component of g - x containing the smallest vertex
    id; Z is everything else.  Raises if x does not disconnect g.
    """
    stray = set(x) - g.vertices
    if stray:
        raise ValueError(f"cut contains non-vertices {sorted(stray)}")
    rest = g.vertices - x
    if not rest:
        raise ValueError("removing x leaves no vertices")
    comps = connected_components(induced_subgraph(g, rest))
    if len(comps) < 2:
        raise ValueError(f"{sorted(x)} is not a vertex cut")
    y = comps[0]
    z = frozenset().union(*comps[1:])
    return y, z
