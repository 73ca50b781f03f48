"""Canonical forms and isomorph-free generation of hypertrees and cacti.

Canonical labels come from an individualization-refinement search: colour
refinement on the vertex/edge incidence structure, then branching over the
first non-singleton cell, keeping the lexicographically smallest relabelled
edge list. Automorphisms found at equal leaves prune sibling branches.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .hypergraph import Hypergraph, HypergraphError
from .spectral import SpectralResult, spectral_radius
from .hypergraph import distance_matrix

UNIVERSES = ("hypertree-rank3", "cactus-all", "cactus-triangles-only")

# Separation required before argmax_rho calls a maximiser unique.
UNIQUE_MARGIN = 1e-7


class InfeasibleSpecError(HypergraphError):
    pass


@dataclass(frozen=True)
class ClassSpec:
    n: int
    k: int
    universe: str = "hypertree-rank3"

    def __post_init__(self):
        if self.universe not in UNIVERSES:
            raise InfeasibleSpecError(f"unknown universe {self.universe!r}; expected one of {UNIVERSES}")
        if self.n < 1:
            raise InfeasibleSpecError(f"order must be positive, got {self.n}")
        if not 0 <= self.k <= (self.n - 1) // 2:
            raise InfeasibleSpecError(
                f"need 0 <= k <= floor((n-1)/2); got n={self.n}, k={self.k}")


# ---------------------------------------------------------------------------
# canonical form

def _refine(n, incidence, edges, colors):
    """Equitable refinement; returns colours renumbered 0..c-1 in invariant order."""
    ncolors = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            around = []
            for i in incidence[v]:
                others = sorted(colors[w] for w in edges[i] if w != v)
                around.append((len(others), tuple(others)))
            around.sort()
            sigs.append((colors[v], tuple(around)))
        order = {s: c for c, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if len(order) == ncolors:
            return new
        colors, ncolors = new, len(order)


def _serialize(edges, labels):
    return tuple(sorted(tuple(sorted(labels[v] for v in e)) for e in edges))


def _orbit_reps(cell, generators):
    parent = {v: v for v in cell}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for g in generators:
        for v in cell:
            w = g[v]
            if w in parent:
                a, b = find(v), find(w)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    return parent, find


def canonical_labeling(G: Hypergraph) -> tuple[bytes, list[int]]:
    """Canonical key and a labelling ``perm`` with ``G.relabel(perm)`` canonical."""
    n = G.n
    edges = G.edges
    incidence = [[] for _ in range(n)]
    for i, e in enumerate(edges):
        for v in e:
            incidence[v].append(i)
    start = _refine(n, incidence, edges, [0] * n)

    best = None
    best_labels = None
    automorphisms: list[list[int]] = []

    def search(colors, prefix):
        nonlocal best, best_labels
        counts: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            counts.setdefault(c, []).append(v)
        target = None
        for c in sorted(counts):
            if len(counts[c]) > 1:
                target = c
                break
        if target is None:
            ser = _serialize(edges, colors)
            if best is None or ser < best:
                best, best_labels = ser, colors
            elif ser == best:
                inv = [0] * n
                for v, lab in enumerate(best_labels):
                    inv[lab] = v
                automorphisms.append([inv[colors[v]] for v in range(n)])
            return
        cell = counts[target]
        explored = []
        for x in cell:
            stabilizer = [g for g in automorphisms if all(g[p] == p for p in prefix)]
            if explored and stabilizer:
                _, find = _orbit_reps(cell, stabilizer)
                if any(find(x) == find(y) for y in explored):
                    continue
            explored.append(x)
            split = [2 * c + (1 if c == target and v != x else 0) for v, c in enumerate(colors)]
            search(_refine(n, incidence, edges, split), prefix + [x])

    search(start, [])
    if best is None:  # n == 0
        best, best_labels = (), []
    return _encode(n, best), list(best_labels)


def _encode(n, serialized) -> bytes:
    if n > 255:
        raise HypergraphError("canonical keys support at most 255 vertices")
    out = bytearray([n])
    for e in serialized:
        out.append(len(e))
        out.extend(e)
    return bytes(out)


def canonical_form(G: Hypergraph) -> bytes:
    return canonical_labeling(G)[0]


def canonical_representative(G: Hypergraph) -> Hypergraph:
    key, perm = canonical_labeling(G)
    return Hypergraph(G.n, sorted(G.relabel(perm).edges))


def is_isomorphic(G: Hypergraph, H: Hypergraph) -> bool:
    return G.n == H.n and G.m == H.m and canonical_form(G) == canonical_form(H)


# ---------------------------------------------------------------------------
# generation

def _attach_blocks(G: Hypergraph, v: int, universe: str, new_vertices_max: int):
    """All ways of hanging one new block at ``v`` using at most the budget."""
    n = G.n
    if new_vertices_max >= 1:
        yield Hypergraph(n + 1, G.edges + ((v, n),)), 0
    if new_vertices_max >= 2:
        if universe == "hypertree-rank3":
            yield Hypergraph(n + 2, G.edges + ((v, n, n + 1),)), 1
        else:
            longest = new_vertices_max + 1 if universe == "cactus-all" else 3
            for length in range(3, longest + 1):
                cyc = [v] + list(range(n, n + length - 1))
                ring = [(cyc[i], cyc[(i + 1) % length]) for i in range(length)]
                yield Hypergraph(n + length - 1, G.edges + tuple(ring)), 1


def _cycles(G: Hypergraph, universe: str) -> int:
    if universe == "hypertree-rank3":
        return sum(1 for e in G.edges if len(e) == 3)
    return G.m - G.n + 1


def _generate(spec: ClassSpec, seed: int | None = None) -> dict[bytes, Hypergraph]:
    n, k, universe = spec.n, spec.k, spec.universe
    rng = random.Random(seed) if seed is not None else None
    level = {canonical_form(Hypergraph(1)): Hypergraph(1)}
    levels_by_order: dict[int, dict[bytes, Hypergraph]] = {1: level}
    # each partial member has at most k cycles and room for the missing ones
    for order in range(1, n):
        current = levels_by_order.pop(order, {})
        items = list(current.values())
        if rng is not None:
            rng.shuffle(items)
        for G in items:
            have = _cycles(G, universe)
            budget = n - order
            verts = list(range(G.n))
            if rng is not None:
                rng.shuffle(verts)
            for v in verts:
                for H, is_cycle in _attach_blocks(G, v, universe, budget):
                    c = have + is_cycle
                    if c > k or n - H.n < 2 * (k - c):
                        continue
                    key, perm = canonical_labeling(H)
                    bucket = levels_by_order.setdefault(H.n, {})
                    if key not in bucket:
                        bucket[key] = Hypergraph(H.n, sorted(H.relabel(perm).edges))
    final = levels_by_order.get(n, {})
    return {key: G for key, G in final.items() if _cycles(G, universe) == k}


def enumerate_hypertrees(spec: ClassSpec, seed: int | None = None) -> Iterator[Hypergraph]:
    """One canonical representative per isomorphism class, in key order.

    ``seed`` shuffles the internal expansion order; the output does not
    depend on it.
    """
    if spec.universe != "hypertree-rank3":
        raise InfeasibleSpecError("enumerate_hypertrees needs the hypertree-rank3 universe")
    members = _generate(spec, seed)
    for key in sorted(members):
        yield members[key]


def enumerate_cacti(spec: ClassSpec, seed: int | None = None) -> Iterator[Hypergraph]:
    if spec.universe not in ("cactus-all", "cactus-triangles-only"):
        raise InfeasibleSpecError("enumerate_cacti needs a cactus universe")
    members = _generate(spec, seed)
    for key in sorted(members):
        yield members[key]


def enumerate_class(spec: ClassSpec, seed: int | None = None) -> Iterator[Hypergraph]:
    if spec.universe == "hypertree-rank3":
        return enumerate_hypertrees(spec, seed)
    return enumerate_cacti(spec, seed)


def is_cactus(G: Hypergraph) -> bool:
    """Connected graph whose every edge lies on at most one cycle."""
    if G.rank > 2 or G.n == 0:
        return False
    adj = G.adjacency()
    parent = {0: None}
    depth = {0: 0}
    order = []
    stack = [0]
    while stack:
        u = stack.pop()
        order.append(u)
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                depth[w] = depth[u] + 1
                stack.append(w)
    if len(parent) != G.n:
        return False
    covered = set()
    for a, b in G.edges:
        if parent[a] == b or parent[b] == a:
            continue
        # non-tree edge: walk both ends up to their meeting point
        x, y = a, b
        while x != y:
            if depth[x] < depth[y]:
                x, y = y, x
            step = (x, parent[x])
            if step in covered:
                return False
            covered.add(step)
            x = parent[x]
    return True


# ---------------------------------------------------------------------------
# extremal search

@dataclass(frozen=True)
class ExtremalResult:
    graph: Hypergraph
    spectrum: SpectralResult
    unique: bool
    gap: float
    count: int
    ties: tuple[Hypergraph, ...] = ()
    runner_up: Hypergraph | None = None

    @property
    def key(self) -> bytes:
        return canonical_form(self.graph)


def argmax_rho(spec: ClassSpec, tol: float | None = None,
               margin: float = UNIQUE_MARGIN) -> ExtremalResult:
    """Class member with largest distance spectral radius.

    ``unique`` holds when the runner-up trails by more than both ``margin``
    and the numerical guard band; members within that band are reported in
    ``ties`` rather than silently discarded. A one-member class is unique
    with an infinite gap.
    """
    members = list(enumerate_class(spec))
    if not members:
        raise InfeasibleSpecError(f"no members for {spec}")
    scored = [(spectral_radius(distance_matrix(G), tol), G) for G in members]
    scored.sort(key=lambda t: -t[0].rho)
    best_res, best = scored[0]
    if len(scored) == 1:
        return ExtremalResult(best, best_res, True, float("inf"), 1)
    second_res, second = scored[1]
    gap = best_res.rho - second_res.rho
    band = max(margin, best_res.guard + second_res.guard)
    ties = tuple(G for res, G in scored[1:] if best_res.rho - res.rho <= band)
    return ExtremalResult(best, best_res, not ties, gap, len(scored), ties, second)
