"""Independent brute-force reference oracles.

Everything here answers by enumeration straight from the definitions, with
none of the ordering heuristics, propagation or symmetry pruning the main
oracles use.  The verification suites run both routes and demand exact
agreement.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Mapping

import numpy as np

from .graphs import Graph, induced_subgraph, is_connected


@lru_cache(maxsize=32)
def _assignment_matrix(n: int, t: int) -> np.ndarray:
    """All t^n colour assignments as a (t^n, n) array."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    grids = np.meshgrid(*[np.arange(t, dtype=np.int8)] * n, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def brute_colourable(g: Graph, t: int) -> bool:
    """Is there a proper t-colouring?  Checks every one of the t^n
    assignments against every edge."""
    if g.n == 0:
        return True
    if t == 0:
        return False
    ranks = {v: i for i, v in enumerate(g.sorted_vertices())}
    assignments = _assignment_matrix(g.n, t)
    ok = np.ones(assignments.shape[0], dtype=bool)
    for u, v in g.edges:
        ok &= assignments[:, ranks[u]] != assignments[:, ranks[v]]
        if not ok.any():
            return False
    return bool(ok.any())


def brute_chromatic_number(g: Graph, upper: int) -> int | None:
    """Smallest t <= upper admitting a proper colouring, else None."""
    for t in range(0, upper + 1):
        if brute_colourable(g, t):
            return t
    return None


def brute_first_colouring(g: Graph, t: int) -> dict[int, int] | None:
    """Lexicographically first proper t-colouring by plain recursion in
    vertex id order (no ordering heuristics, no symmetry breaking)."""
    order = g.sorted_vertices()
    col: dict[int, int] = {}

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in range(t):
            if all(col.get(u) != c for u in g.adj[v]):
                col[v] = c
                if rec(i + 1):
                    return True
                del col[v]
        return False

    if rec(0):
        return dict(col)
    return None


def brute_list_colour(g: Graph, lists: Mapping[int, frozenset[int]]) -> dict[int, int] | None:
    """First proper colouring in the product of the lists, or None."""
    order = g.sorted_vertices()
    domains = [sorted(lists[v]) for v in order]
    for assignment in product(*domains):
        col = dict(zip(order, assignment))
        if all(col[u] != col[v] for u, v in g.edges):
            return col
    return None


def brute_min_cut(g: Graph) -> tuple[int, frozenset[int]] | None:
    """Smallest disconnecting vertex set by subset enumeration in
    lexicographic order; None when the graph is complete."""
    if not is_connected(g):
        return 0, frozenset()
    if g.is_complete():
        return None
    vs = g.sorted_vertices()
    for size in range(0, g.n - 1):
        for cut in combinations(vs, size):
            rest = g.vertices - set(cut)
            if len(rest) > 1 and not is_connected(induced_subgraph(g, rest)):
                return size, frozenset(cut)
    return None


def brute_is_k_connected(g: Graph, k: int) -> bool:
    """Definition check: more than k vertices and no disconnecting set of
    fewer than k vertices."""
    if g.n <= k:
        return False
    vs = g.sorted_vertices()
    for size in range(0, k):
        for cut in combinations(vs, size):
            rest = g.vertices - set(cut)
            if len(rest) > 1 and not is_connected(induced_subgraph(g, rest)):
                return False
    return True
