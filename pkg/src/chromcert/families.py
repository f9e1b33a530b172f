"""Deterministic graph-family generators used as test inputs."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .graphs import Graph


@dataclass(frozen=True)
class FamilySpec:
    """A recipe for a generated graph; equal specs generate equal graphs."""

    tag: str
    sizes: tuple[int, ...] = ()
    shared: int = 0
    p: float = 0.0
    seed: int = 0
    rounds: int = 0
    parts: tuple["FamilySpec", ...] = field(default=())

    # -- constructors ------------------------------------------------------
    @staticmethod
    def complete(n: int) -> "FamilySpec":
        return FamilySpec("complete", sizes=(n,))

    @staticmethod
    def cycle(n: int) -> "FamilySpec":
        return FamilySpec("cycle", sizes=(n,))

    @staticmethod
    def kneser(n: int, r: int) -> "FamilySpec":
        return FamilySpec("kneser", sizes=(n, r))

    @staticmethod
    def mycielski(rounds: int) -> "FamilySpec":
        return FamilySpec("mycielski", rounds=rounds)

    @staticmethod
    def glued_cliques(sizes: tuple[int, ...], shared: int) -> "FamilySpec":
        return FamilySpec("glued_cliques", sizes=tuple(sizes), shared=shared)

    @staticmethod
    def join(*parts: "FamilySpec") -> "FamilySpec":
        return FamilySpec("join", parts=tuple(parts))

    @staticmethod
    def random(n: int, p: float, seed: int = 0) -> "FamilySpec":
        return FamilySpec("random", sizes=(n,), p=p, seed=seed)

    def label(self) -> str:
        if self.tag == "complete":
            return f"complete({self.sizes[0]})"
        if self.tag == "cycle":
            return f"cycle({self.sizes[0]})"
        if self.tag == "kneser":
            return f"kneser({self.sizes[0]},{self.sizes[1]})"
        if self.tag == "mycielski":
            return f"mycielski({self.rounds})"
        if self.tag == "glued_cliques":
            inner = ",".join(str(s) for s in self.sizes)
            return f"glued_cliques([{inner}],s={self.shared})"
        if self.tag == "join":
            return "join(" + ",".join(p.label() for p in self.parts) + ")"
        if self.tag == "random":
            return f"random({self.sizes[0]},p={self.p},seed={self.seed})"
        return self.tag


def _complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph.build(n, combinations(range(n), 2))


def _cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.build(n, [(i, (i + 1) % n) for i in range(n)])


def _kneser(n: int, r: int) -> Graph:
    if r < 1 or n < 2 * r:
        raise ValueError("kneser(n, r) needs r >= 1 and n >= 2r")
    subsets = [frozenset(c) for c in combinations(range(n), r)]
    edges = [
        (i, j)
        for i, j in combinations(range(len(subsets)), 2)
        if not (subsets[i] & subsets[j])
    ]
    return Graph.build(len(subsets), edges)


def _mycielskian(g: Graph) -> Graph:
    """One Mycielski step: raises chromatic number by one, adds no triangle."""
    n = g.n
    ranks = {v: i for i, v in enumerate(g.sorted_vertices())}
    edges: list[tuple[int, int]] = []
    for u, v in g.edges:
        a, b = ranks[u], ranks[v]
        edges.append((a, b))
        edges.append((a, n + b))
        edges.append((b, n + a))
    apex = 2 * n
    edges.extend((n + i, apex) for i in range(n))
    return Graph.build(2 * n + 1, edges)


def _mycielski(rounds: int) -> Graph:
    if rounds < 2:
        raise ValueError("mycielski family starts at rounds = 2 (a single edge)")
    g = _complete(2)
    for _ in range(rounds - 2):
        g = _mycielskian(g)
    return g


def _glued_cliques(sizes: tuple[int, ...], shared: int) -> Graph:
    if not sizes:
        raise ValueError("glued_cliques needs at least one clique")
    if shared < 0:
        raise ValueError("shared vertex count must be nonnegative")
    for s in sizes:
        if s < max(shared, 1):
            raise ValueError(f"clique size {s} below shared set size {shared}")
    edges: set[tuple[int, int]] = set()
    next_id = shared
    core = list(range(shared))
    for size in sizes:
        own = list(range(next_id, next_id + size - shared))
        next_id += size - shared
        members = core + own
        edges.update((u, v) for u, v in combinations(members, 2))
    return Graph.build(next_id, edges)


def _join(parts: tuple[FamilySpec, ...]) -> Graph:
    if not parts:
        raise ValueError("join needs at least one part")
    graphs = [generate(p) for p in parts]
    offset = 0
    vertices: list[int] = []
    edges: list[tuple[int, int]] = []
    blocks: list[list[int]] = []
    for g in graphs:
        ranks = {v: offset + i for i, v in enumerate(g.sorted_vertices())}
        blocks.append(sorted(ranks.values()))
        vertices.extend(ranks.values())
        edges.extend((ranks[u], ranks[v]) for u, v in g.edges)
        offset += g.n
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            edges.extend((u, v) for u in blocks[i] for v in blocks[j])
    return Graph.build(len(vertices), edges)


def _random(n: int, p: float, seed: int) -> Graph:
    if n < 0:
        raise ValueError("random graph needs n >= 0")
    if not (0.0 <= p <= 1.0):
        raise ValueError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    # Pairs visited in lexicographic order so the edge set is a pure
    # function of (n, p, seed).
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Graph.build(n, edges)


def generate(spec: FamilySpec) -> Graph:
    """Generate the graph described by spec.  Deterministic."""
    if spec.tag == "complete":
        return _complete(*spec.sizes)
    if spec.tag == "cycle":
        return _cycle(*spec.sizes)
    if spec.tag == "kneser":
        return _kneser(*spec.sizes)
    if spec.tag == "mycielski":
        return _mycielski(spec.rounds)
    if spec.tag == "glued_cliques":
        return _glued_cliques(spec.sizes, spec.shared)
    if spec.tag == "join":
        return _join(spec.parts)
    if spec.tag == "random":
        return _random(spec.sizes[0], spec.p, spec.seed)
    raise ValueError(f"unknown family tag {spec.tag!r}")


def parse_atom(atom: str) -> FamilySpec:
    """Parse compact family atoms like 'complete:5', 'cycle:5' or
    'kneser:5:2' (used for the parts of a join on the command line)."""
    parts = atom.split(":")
    tag = parts[0]
    args = parts[1:]
    try:
        if tag == "complete" and len(args) == 1:
            return FamilySpec.complete(int(args[0]))
        if tag == "cycle" and len(args) == 1:
            return FamilySpec.cycle(int(args[0]))
        if tag == "kneser" and len(args) == 2:
            return FamilySpec.kneser(int(args[0]), int(args[1]))
        if tag == "mycielski" and len(args) == 1:
            return FamilySpec.mycielski(int(args[0]))
    except ValueError as exc:
        raise ValueError(f"bad family atom {atom!r}: {exc}") from exc
    raise ValueError(f"bad family atom {atom!r}")
