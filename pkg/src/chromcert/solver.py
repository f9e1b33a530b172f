"""The extensibility oracle: decide whether a proper palette (or list)
colouring respecting a template exists, returning either a colouring or a
definite UNSAT.  A budget exhaustion is a third, loudly distinct outcome.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product

from .errors import ResourceLimitError
from .graphs import Graph
from .templates import Palette, Template, respects, validate_template

BRUTE_FORCE_VERTEX_CAP = 8
BRUTE_FORCE_SPACE_CAP = 2_000_000

_TIME_CHECK_EVERY = 512


@dataclass(frozen=True)
class SolverBudget:
    """Limits for one solver run; zero means unlimited."""

    max_decisions: int = 0
    wall_clock_seconds: float = 0.0

    def __post_init__(self):
        if self.max_decisions < 0 or self.wall_clock_seconds < 0:
            raise ValueError("budget limits must be nonnegative")


@dataclass
class SolverStats:
    decisions: int = 0
    backtracks: int = 0
    elapsed: float = 0.0


@dataclass(frozen=True)
class SolveResult:
    outcome: str  # "sat" | "unsat" | "resource_limit"
    colouring: dict[int, int] | None
    stats: SolverStats = field(default_factory=SolverStats)

    def raise_if_limited(self) -> None:
        if self.outcome == "resource_limit":
            raise ResourceLimitError(
                f"solver budget exhausted after {self.stats.decisions} decisions"
            )


class _BudgetExceeded(Exception):
    pass


def _anonymity_classes(g: Graph, t: Template, palette: Palette) -> dict[int, int | None]:
    """Group palette colours the template cannot tell apart.

    A colour is anonymous when it is mentioned nowhere in the template
    (pre-colouring or forbidden lists); two anonymous colours belong to the
    same class when exactly the same vertices carry them in their lists
    (in plain mode every vertex carries every colour).  While searching,
    at most one *unused* colour per class needs to be tried at any node:
    swapping two unused same-class colours maps respecting colourings to
    respecting colourings.  Mentioned colours map to None and are never
    skipped.
    """
    mentioned = set(t.precolour.values())
    for fs in t.forbidden.values():
        mentioned |= fs
    order = g.sorted_vertices()
    classes: dict[int, int | None] = {}
    keys: dict[tuple[int, ...], int] = {}
    for c in sorted(palette.universe()):
        if c in mentioned:
            classes[c] = None
            continue
        key = tuple(v for v in order if c in palette.colours_of(v))
        if key not in keys:
            keys[key] = len(keys)
        classes[c] = keys[key]
    return classes


def extend(g: Graph, t: Template, palette: Palette, budget: SolverBudget | None = None) -> SolveResult:
    """Complete backtracking search for a colouring respecting t.

    Variable order: smallest candidate set first, then larger degree, then
    smaller id.  Candidate sets shrink by forward checking; candidate
    colours are tried in increasing order with interchangeable unused
    colours collapsed to their smallest representative.  A Sat answer is
    re-verified against the respects predicate before being returned;
    Unsat means the (pruned but exhaustive) search space is empty.
    """
    validate_template(g, t, palette)
    budget = budget or SolverBudget()
    stats = SolverStats()
    start = time.perf_counter()

    colour = dict(t.precolour)
    adj = g.adj
    degree_of = {v: len(adj[v]) for v in g.vertices}
    uncoloured = set(t.forbidden)
    remaining: dict[int, set[int]] = {}
    for v in uncoloured:
        cand = set(palette.colours_of(v)) - t.forbidden[v]
        for u in adj[v]:
            if u in colour:
                cand.discard(colour[u])
        remaining[v] = cand
    classes = _anonymity_classes(g, t, palette)
    usage = {c: 0 for c in classes}

    def note_decision() -> None:
        stats.decisions += 1
        if budget.max_decisions and stats.decisions > budget.max_decisions:
            raise _BudgetExceeded
        if budget.wall_clock_seconds and stats.decisions % _TIME_CHECK_EVERY == 0:
            if time.perf_counter() - start > budget.wall_clock_seconds:
                raise _BudgetExceeded

    def dfs() -> bool:
        if not uncoloured:
            return True
        v = min(uncoloured, key=lambda u: (len(remaining[u]), -degree_of[u], u))
        seen_classes: set[int] = set()
        for c in sorted(remaining[v]):
            cls = classes[c]
            if cls is not None and usage[c] == 0:
                if cls in seen_classes:
                    continue
                seen_classes.add(cls)
            note_decision()
            colour[v] = c
            usage[c] += 1
            uncoloured.discard(v)
            pruned: list[int] = []
            wipeout = False
            for u in adj[v]:
                if u in uncoloured and c in remaining[u]:
                    remaining[u].discard(c)
                    pruned.append(u)
                    if not remaining[u]:
                        wipeout = True
            if not wipeout and dfs():
                return True
            for u in pruned:
                remaining[u].add(c)
            uncoloured.add(v)
            usage[c] -= 1
            del colour[v]
        stats.backtracks += 1
        return False

    try:
        found = dfs()
    except _BudgetExceeded:
        stats.elapsed = time.perf_counter() - start
        return SolveResult("resource_limit", None, stats)
    stats.elapsed = time.perf_counter() - start
    if not found:
        return SolveResult("unsat", None, stats)
    if not respects(g, t, colour, palette):
        raise RuntimeError("solver produced a colouring that fails the respects check")
    return SolveResult("sat", dict(colour), stats)


def brute_force_extend(g: Graph, t: Template, palette: Palette) -> SolveResult:
    """Independent oracle: enumerate every assignment of non-forbidden
    palette colours to the uncoloured vertices, in lexicographic order, and
    test each against the respects predicate.  Intentionally free of the
    search machinery used by extend."""
    validate_template(g, t, palette)
    if g.n > BRUTE_FORCE_VERTEX_CAP:
        raise ValueError(f"brute force capped at {BRUTE_FORCE_VERTEX_CAP} vertices")
    order = sorted(t.forbidden)
    domains = [sorted(palette.colours_of(v) - t.forbidden[v]) for v in order]
    space = 1
    for d in domains:
        space *= len(d)
        if space > BRUTE_FORCE_SPACE_CAP:
            raise ValueError("brute force candidate space exceeds the cap")
    stats = SolverStats()
    start = time.perf_counter()
    for assignment in product(*domains):
        stats.decisions += 1
        col = dict(t.precolour)
        col.update(zip(order, assignment))
        if respects(g, t, col, palette):
            stats.elapsed = time.perf_counter() - start
            return SolveResult("sat", col, stats)
    stats.elapsed = time.perf_counter() - start
    return SolveResult("unsat", None, stats)
