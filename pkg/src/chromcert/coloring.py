"""Exact colourability and choosability oracles.

These are deliberately separate code paths from the template extension
solver so the two can cross-check each other: is_colourable is a
DSATUR-style decision search, list_colour is plain backtracking in a static
order, and the choosability test enumerates list assignments canonically up
to colour renaming.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator, Mapping

from .graphs import Graph, induced_subgraph

ListAssignment = Mapping[int, frozenset[int]]

CHOOSABILITY_CAP = 8


def is_colourable(g: Graph, t: int) -> dict[int, int] | None:
    """A proper t-colouring of g, or None when none exists.  Exact.

    Search: DSATUR vertex selection (max saturation, then max degree, then
    min id) with the usual new-colour cap, which is sound because colour
    classes of a bare colouring are interchangeable.
    """
    if t < 0:
        raise ValueError("colour count must be nonnegative")
    if g.n == 0:
        return {}
    if t == 0:
        return None
    adj = g.adj
    colour: dict[int, int] = {}
    nbr_colours: dict[int, set[int]] = {v: set() for v in g.vertices}
    degrees = {v: len(adj[v]) for v in g.vertices}
    uncoloured = set(g.vertices)

    def pick() -> int:
        return min(uncoloured, key=lambda v: (-len(nbr_colours[v]), -degrees[v], v))

    def dfs(used: int) -> bool:
        if not uncoloured:
            return True
        v = pick()
        limit = min(used + 1, t)
        for c in range(limit):
            if c in nbr_colours[v]:
                continue
            colour[v] = c
            uncoloured.discard(v)
            touched = []
            for u in adj[v]:
                if u in uncoloured and c not in nbr_colours[u]:
                    nbr_colours[u].add(c)
                    touched.append(u)
            if dfs(max(used, c + 1)):
                return True
            for u in touched:
                nbr_colours[u].discard(c)
            uncoloured.add(v)
            del colour[v]
        return False

    if dfs(0):
        return dict(colour)
    return None


def _check_lists(g: Graph, lists: ListAssignment) -> None:
    for v in g.vertices:
        if v not in lists:
            raise ValueError(f"vertex {v} has no colour list")
        if not lists[v]:
            raise ValueError(f"vertex {v} has an empty colour list")


def list_colour(g: Graph, lists: ListAssignment) -> dict[int, int] | None:
    """A proper colouring drawing each vertex from its own list, or None.

    Exact; static order (shortest list, then largest degree, then id) with
    simple backtracking against already-coloured neighbours.
    """
    _check_lists(g, lists)
    adj = g.adj
    order = sorted(g.vertices, key=lambda v: (len(lists[v]), -len(adj[v]), v))
    colour: dict[int, int] = {}

    def dfs(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        blocked = {colour[u] for u in adj[v] if u in colour}
        for c in sorted(lists[v]):
            if c in blocked:
                continue
            colour[v] = c
            if dfs(i + 1):
                return True
            del colour[v]
        return False

    if dfs(0):
        return dict(colour)
    return None


def greedy_list_colour(g: Graph, lists: ListAssignment) -> dict[int, int] | None:
    """First-fit in id order; success certifies colourability, failure says
    nothing.  Used to fast-path the choosability search."""
    colour: dict[int, int] = {}
    for v in g.sorted_vertices():
        blocked = {colour[u] for u in g.adj[v] if u in colour}
        for c in sorted(lists[v]):
            if c not in blocked:
                colour[v] = c
                break
        else:
            return None
    return colour


def _canonical_list_assignments(g: Graph, s: int) -> Iterator[dict[int, frozenset[int]]]:
    """All assignments of s-element lists, up to renaming of colours.

    Vertices are processed in id order; each list mixes j already-seen
    colours with s - j fresh ones, fresh colours taken as the next unused
    integers.  Every assignment is thus drawn from a universe of at most
    n*s colours, which suffices for a complete witness search.  Subsets of
    old colours are enumerated largest-j first, which reaches the classic
    identical-list witnesses early.
    """
    order = g.sorted_vertices()
    assignment: dict[int, frozenset[int]] = {}

    def rec(i: int, used: int) -> Iterator[dict[int, frozenset[int]]]:
        if i == len(order):
            yield dict(assignment)
            return
        v = order[i]
        for j in range(min(s, used), -1, -1):
            fresh = tuple(range(used, used + s - j))
            for old in combinations(range(used), j):
                assignment[v] = frozenset(old + fresh)
                yield from rec(i + 1, used + s - j)
        assignment.pop(v, None)

    yield from rec(0, 0)


def list_chromatic_at_least(
    g: Graph, t: int, cap: int = CHOOSABILITY_CAP
) -> tuple[bool, dict[int, frozenset[int]] | None]:
    """Decide chi_ell(g) >= t; on success also return a witness assignment
    of (t-1)-element lists admitting no proper list colouring.

    t = 1 and t = 2 have closed forms; for t >= 3 the graph must have at
    most `cap` vertices and the search enumerates list assignments up to
    colour renaming, after peeling vertices whose degree is below the list
    size (they can always be coloured last, so no witness depends on them).
    """
    if t < 1:
        raise ValueError("t must be a positive integer")
    if t == 1:
        if g.n >= 1:
            return True, {v: frozenset() for v in g.vertices}
        return False, None
    if t == 2:
        if g.m >= 1:
            return True, {v: frozenset({0}) for v in g.vertices}
        return False, None
    if g.n > cap:
        raise ValueError(f"graph has {g.n} > {cap} vertices; cap exceeded for t >= 3")

    s = t - 1
    core = g
    peeled: list[int] = []
    while True:
        removable = [v for v in core.sorted_vertices() if core.degree(v) < s]
        if not removable:
            break
        peeled.extend(removable)
        core = induced_subgraph(core, core.vertices - set(removable))
    if core.n == 0:
        return False, None

    for lists in _canonical_list_assignments(core, s):
        if greedy_list_colour(core, lists) is not None:
            continue
        if list_colour(core, lists) is None:
            witness = dict(lists)
            for v in peeled:
                witness[v] = frozenset(range(s))
            return True, witness
    return False, None
