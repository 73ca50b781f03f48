"""Hypergraph data model, structural predicates and loose-path distances.

Vertices are dense integer ids ``0..n-1``. Edges are stored as sorted tuples
and kept in insertion order; duplicate edges (as sets) are dropped at
construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable

import numpy as np


class HypergraphError(ValueError):
    """Raised for malformed hypergraphs or violated preconditions."""


class DisconnectedError(HypergraphError):
    pass


class ParseError(HypergraphError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[tuple[int, ...], ...]

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise HypergraphError(f"vertex count must be non-negative, got {n}")
        seen = set()
        stored = []
        for raw in edges:
            e = tuple(sorted(set(int(v) for v in raw)))
            if len(e) < 2:
                raise HypergraphError(f"edge {tuple(raw)} has fewer than two vertices")
            if e[0] < 0 or e[-1] >= n:
                raise HypergraphError(f"edge {e} has a vertex outside 0..{n - 1}")
            if e in seen:
                continue
            seen.add(e)
            stored.append(e)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", tuple(stored))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def rank(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    def edge_sets(self) -> set[frozenset[int]]:
        return {frozenset(e) for e in self.edges}

    def same_edges(self, other: "Hypergraph") -> bool:
        """Vertex count and edge set equal, ignoring edge order."""
        return self.n == other.n and self.edge_sets() == other.edge_sets()

    def incident_edges(self, u: int) -> list[int]:
        _check_vertex(self, u)
        return [i for i, e in enumerate(self.edges) if u in e]

    def neighbors(self, u: int) -> set[int]:
        _check_vertex(self, u)
        out: set[int] = set()
        for e in self.edges:
            if u in e:
                out.update(e)
        out.discard(u)
        return out

    def adjacency(self) -> list[set[int]]:
        """Neighbor sets of the 2-section."""
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for e in self.edges:
            for a, b in combinations(e, 2):
                adj[a].add(b)
                adj[b].add(a)
        return adj

    def relabel(self, perm) -> "Hypergraph":
        """Apply the vertex map ``v -> perm[v]``."""
        return Hypergraph(self.n, [[perm[v] for v in e] for e in self.edges])

    def canonical_text(self) -> str:
        return to_text(Hypergraph(self.n, sorted(self.edges)))


def _check_vertex(G: Hypergraph, u: int) -> None:
    if not 0 <= u < G.n:
        raise HypergraphError(f"vertex {u} out of range 0..{G.n - 1}")


def degree(G: Hypergraph, u: int) -> int:
    _check_vertex(G, u)
    return sum(1 for e in G.edges if u in e)


def degrees(G: Hypergraph) -> list[int]:
    deg = [0] * G.n
    for e in G.edges:
        for v in e:
            deg[v] += 1
    return deg


def two_section(G: Hypergraph) -> Hypergraph:
    """The graph O_G: every edge of size r becomes an r-clique."""
    pairs = []
    seen = set()
    for e in G.edges:
        for pair in combinations(e, 2):
            if pair not in seen:
                seen.add(pair)
                pairs.append(pair)
    return Hypergraph(G.n, pairs)


def components(G: Hypergraph, vertices: Iterable[int] | None = None,
               edges: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components of the sub-hypergraph on ``vertices`` using ``edges``.

    Edges are given by index into ``G.edges``; each edge is restricted to
    ``vertices``. Components are sorted lists ordered by smallest vertex.
    """
    verts = set(range(G.n)) if vertices is None else set(vertices)
    idx = range(G.m) if edges is None else edges
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i in idx:
        inside = [v for v in G.edges[i] if v in verts]
        for a, b in zip(inside, inside[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for v in sorted(verts):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values(), key=lambda c: c[0])


def is_connected(G: Hypergraph) -> bool:
    if G.n == 0:
        raise HypergraphError("connectivity is undefined for the empty hypergraph")
    return len(components(G)) == 1


def has_loose_cycle(G: Hypergraph) -> bool:
    """Direct search for a loose cycle.

    Two edges sharing two or more vertices form a loose cycle of length 2.
    Otherwise a longer loose cycle exists exactly when the bipartite
    vertex-edge incidence graph contains a cycle.
    """
    for e, f in combinations(G.edges, 2):
        if len(set(e) & set(f)) >= 2:
            return True
    # union-find over incidence graph nodes: vertices 0..n-1, edges n..n+m-1
    parent = list(range(G.n + G.m))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, e in enumerate(G.edges):
        for v in e:
            ra, rb = find(v), find(G.n + i)
            if ra == rb:
                return True
            parent[ra] = rb
    return False


def is_hypertree(G: Hypergraph) -> bool:
    if G.n == 0 or not is_connected(G):
        return False
    for e, f in combinations(G.edges, 2):
        if len(set(e) & set(f)) > 1:
            return False
    return sum(len(e) - 1 for e in G.edges) == G.n - 1


def pendant_edges(G: Hypergraph) -> list[tuple[int, int]]:
    """All ``(edge_index, anchor)`` pairs with the edge pendant at ``anchor``."""
    deg = degrees(G)
    out = []
    for i, e in enumerate(G.edges):
        anchors = [v for v in e if deg[v] > 1]
        if len(anchors) == 1:
            out.append((i, anchors[0]))
    return out


def distance_matrix(G: Hypergraph) -> np.ndarray:
    """Loose-path distances, computed by BFS on the 2-section.

    Raises DisconnectedError when some pair has no connecting path.
    """
    adj = [sorted(s) for s in G.adjacency()]
    n = G.n
    d = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        row = d[s]
        row[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            nxt = row[u] + 1
            for w in adj[u]:
                if row[w] < 0:
                    row[w] = nxt
                    queue.append(w)
        if (row < 0).any():
            raise DisconnectedError("distance matrix is defined only for connected hypergraphs")
    d.setflags(write=False)
    return d


def validate_distance_matrix(d) -> None:
    """Raise HypergraphError unless ``d`` satisfies the distance-matrix invariants."""
    d = np.asarray(d)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise HypergraphError("distance matrix must be square")
    if not np.array_equal(d, d.T):
        raise HypergraphError("distance matrix must be symmetric")
    if np.any(np.diag(d) != 0):
        raise HypergraphError("distance matrix must have zero diagonal")
    off = ~np.eye(len(d), dtype=bool)
    if np.any(d[off] < 1):
        raise HypergraphError("off-diagonal distances must be at least 1")
    # d[u, w] <= d[u, v] + d[v, w] for every v
    via = (d[:, :, None] + d[None, :, :]).min(axis=1)
    if np.any(d > via):
        raise HypergraphError("triangle inequality violated")


def to_text(G: Hypergraph) -> str:
    lines = [str(G.n)]
    lines.extend(" ".join(map(str, e)) for e in G.edges)
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Hypergraph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", lineno) from None
        if n is None:
            if len(values) != 1 or values[0] < 0:
                raise ParseError("first line must be a single non-negative vertex count", lineno)
            n = values[0]
            continue
        if len(values) < 2:
            raise ParseError("an edge needs at least two vertices", lineno)
        if len(set(values)) != len(values):
            raise ParseError("repeated vertex inside an edge", lineno)
        bad = [v for v in values if not 0 <= v < n]
        if bad:
            raise ParseError(f"vertex {bad[0]} outside 0..{n - 1}", lineno)
        edges.append(values)
    if n is None:
        raise ParseError("missing vertex count", 1)
    return Hypergraph(n, edges)


def read_hypergraph(path) -> Hypergraph:
    return from_text(Path(path).read_text())


def write_hypergraph(G: Hypergraph, path) -> None:
    Path(path).write_text(to_text(G))
