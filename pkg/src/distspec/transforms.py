"""Edge-move and vertex-move grafts, and checks that they raise rho."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .families import HypertreeParams, t_hypertree
from .hypergraph import Hypergraph, HypergraphError, components, distance_matrix, is_connected
from .spectral import SpectralResult, spectral_radius


class GraftError(HypergraphError):
    pass


@dataclass(frozen=True)
class GraftReport:
    before: SpectralResult
    after: SpectralResult
    hypothesis_held: bool
    rho_increased: bool
    margin: float
    # hypothesis sat inside the numerical band; excluded from pass/fail
    inconclusive: bool = False

    @property
    def passed(self) -> bool:
        """A lemma instance passes unless the hypothesis held and rho did not rise."""
        return self.inconclusive or not self.hypothesis_held or self.rho_increased


def move_edges(G: Hypergraph, source: int, target: int, which: Iterable[int]) -> Hypergraph:
    """Move the selected edges (by index) from ``source`` to ``target``.

    Each selected edge e becomes ``(e - {source}) | {target}``.
    """
    which = sorted(set(which))
    existing = G.edge_sets()
    replaced = {}
    for i in which:
        e = set(G.edges[i])
        if target in e:
            raise GraftError(f"u-in-edge: target {target} already lies in edge {G.edges[i]}")
        if source not in e:
            raise GraftError(f"v-not-in-edge: source {source} is not in edge {G.edges[i]}")
        new = frozenset((e - {source}) | {target})
        if new in existing or new in replaced.values():
            raise GraftError(f"duplicate-result-edge: {sorted(new)} is already an edge")
        replaced[i] = new
    return Hypergraph(G.n, [sorted(replaced[i]) if i in replaced else e for i, e in enumerate(G.edges)])


def move_vertices(G: Hypergraph, e2: int, e1: int, verts: Iterable[int]) -> Hypergraph:
    """Move ``verts`` out of edge ``e2`` into edge ``e1`` (indices into G.edges)."""
    verts = set(verts)
    if not verts:
        return G
    if e1 == e2:
        raise GraftError("same-edge: source and destination edges coincide")
    src, dst = set(G.edges[e2]), set(G.edges[e1])
    if not verts <= src:
        raise GraftError(f"not-in-source: {sorted(verts - src)} not in edge {G.edges[e2]}")
    if verts & dst:
        raise GraftError(f"already-in-destination: {sorted(verts & dst)} already in edge {G.edges[e1]}")
    if len(src) - len(verts) < 2:
        raise GraftError("source-too-small: source edge would keep fewer than two vertices")
    new1, new2 = frozenset(dst | verts), frozenset(src - verts)
    existing = G.edge_sets()
    if new1 in existing or new2 in existing:
        raise GraftError("duplicate-result-edge: a resulting edge is already present")
    edges = list(G.edges)
    edges[e1], edges[e2] = sorted(new1), sorted(new2)
    return Hypergraph(G.n, edges)


def branches_at(G: Hypergraph, u: int) -> list[list[int]]:
    """Branches at ``u``: the components of G - u (edges through ``u`` keep
    their other vertices together), each with ``u`` added back.

    Ordered by smallest vertex other than ``u``.
    """
    if not is_connected(G):
        raise GraftError("hypergraph is disconnected")
    comps = components(G, [v for v in range(G.n) if v != u])
    return [sorted(c + [u]) for c in comps]


def check_edge_move_lemma(G: Hypergraph, u: int, branches: Sequence[Iterable[int]], v: int,
                          I: Iterable[int], tol: float | None = None) -> GraftReport:
    """Edge-move graft at a cut vertex.

    ``branches`` lists G_1..G_t as vertex sets sharing only ``u``; ``I``
    holds 0-based positions (each >= 2) of the branches whose edges at ``u``
    move to ``v`` in G_2.
    """
    parts = [set(b) for b in branches]
    t = len(parts)
    if t < 3:
        raise GraftError(f"decomposition needs t >= 3 branches, got {t}")
    if not is_connected(G):
        raise GraftError("hypergraph is disconnected")
    union = set()
    for i, part in enumerate(parts):
        if u not in part or len(part) < 2:
            raise GraftError(f"branch {i} must contain u and at least two vertices")
        if union & part - {u}:
            raise GraftError("branches must share only u")
        union |= part
    if union != set(range(G.n)):
        raise GraftError("branches must cover every vertex")
    owner = {}
    for i, e in enumerate(G.edges):
        homes = [j for j, part in enumerate(parts) if set(e) <= part]
        if len(homes) != 1:
            raise GraftError(f"edge {e} does not lie inside exactly one branch")
        owner[i] = homes[0]
    for j, part in enumerate(parts):
        sub = [i for i, o in owner.items() if o == j]
        if len(components(G, part, sub)) != 1:
            raise GraftError(f"branch {j} is not connected")
    I = sorted(set(I))
    if not I or any(not 2 <= i < t for i in I):
        raise GraftError("I must be a non-empty subset of branch positions 2..t-1")
    if v not in parts[1] or v == u:
        raise GraftError("v must lie in branch G_2 and differ from u")
    moved = [i for i, e in enumerate(G.edges) if u in e and owner[i] in I]
    G2 = move_edges(G, u, v, moved)
    before = spectral_radius(distance_matrix(G), tol)
    x = before.perron
    gap = sum(x[w] for w in parts[0]) - sum(x[w] for w in parts[1])
    return _graft_report(before, G2, gap, tol)


def check_vertex_move_lemma(G: Hypergraph, e: int, I: Iterable[int], e_prime: int,
                            order: Sequence[int] | None = None,
                            tol: float | None = None) -> GraftReport:
    """Vertex-move graft off edge ``e`` into edge ``e_prime``.

    ``order`` lists the vertices w_1..w_t of edge ``e``; by default they are
    taken in increasing id. ``I`` holds 0-based positions (each >= 2) of the
    vertices to move. ``e_prime`` must lie in H_2, the part of G - e hanging
    off w_2.
    """
    edge = list(G.edges[e])
    ws = list(order) if order is not None else edge
    if sorted(ws) != edge:
        raise GraftError("order must be a permutation of the edge's vertices")
    t = len(ws)
    if t < 3:
        raise GraftError(f"edge must have at least three vertices, got {t}")
    rest = [i for i in range(G.m) if i != e]
    comps = components(G, edges=rest)
    if len(comps) != t:
        raise GraftError(f"G - e must split into exactly {t} components, got {len(comps)}")
    home = {}
    for c in comps:
        inside = [w for w in ws if w in c]
        if len(inside) != 1:
            raise GraftError("each component of G - e must hold exactly one vertex of e")
        home[inside[0]] = set(c)
    H = [home[w] for w in ws]
    if len(H[0]) < 2 or len(H[1]) < 2:
        raise GraftError("H_1 and H_2 must both have at least two vertices")
    if e_prime == e or not set(G.edges[e_prime]) <= H[1]:
        raise GraftError("e_prime must be an edge of H_2")
    I = sorted(set(I))
    if not I or any(not 2 <= i < t for i in I):
        raise GraftError("I must be a non-empty subset of positions 2..t-1")
    G2 = move_vertices(G, e, e_prime, [ws[i] for i in I])
    before = spectral_radius(distance_matrix(G), tol)
    x = before.perron
    gap = sum(x[w] for w in H[0]) - sum(x[w] for w in H[1])
    return _graft_report(before, G2, gap, tol)


def _graft_report(before: SpectralResult, G2: Hypergraph, hypothesis_gap, tol) -> GraftReport:
    after = spectral_radius(distance_matrix(G2), tol)
    margin = after.rho - before.rho
    band = max(before.guard, after.guard)
    if hypothesis_gap is None:
        held, unsure = True, False
    else:
        unsure = abs(hypothesis_gap) <= before.guard
        held = hypothesis_gap >= -before.guard
    return GraftReport(before, after, bool(held), bool(margin > band), float(margin), bool(unsure))


def check_entry_inequality(G: Hypergraph, u: int, v: int, w: int, tol: float | None = None) -> bool:
    """x_w + x_u - x_v exceeds the guard band, for non-adjacent neighbours v, w of u."""
    adj = G.adjacency()
    if v not in adj[u] or w not in adj[u]:
        raise GraftError("v and w must both be neighbours of u")
    if v == w or w in adj[v]:
        raise GraftError("v and w must be distinct and non-adjacent")
    res = spectral_radius(distance_matrix(G), tol)
    x = res.perron
    return x[w] + x[u] - x[v] > res.guard


def entry_triples(G: Hypergraph) -> list[tuple[int, int, int]]:
    """Every (u, v, w) with v, w distinct non-adjacent neighbours of u."""
    adj = G.adjacency()
    out = []
    for u in range(G.n):
        for v in sorted(adj[u]):
            for w in sorted(adj[u]):
                if w != v and w not in adj[v]:
                    out.append((u, v, w))
    return out


def check_rebalance(n: int, a: int, b: int, tol: float | None = None) -> GraftReport:
    """Compare rho(T(n, a+1, b-1)) against rho(T(n, a, b))."""
    if not b >= a + 2:
        raise GraftError(f"rebalance needs b >= a + 2, got a={a}, b={b}")
    if not 2 * (a + b) < n - 1:
        raise GraftError(f"rebalance needs 2(a+b) < n-1, got n={n}, a={a}, b={b}")
    if a < 0:
        raise GraftError("a must be non-negative")
    T = t_hypertree(HypertreeParams(n, a, b))
    T2 = t_hypertree(HypertreeParams(n, a + 1, b - 1))
    return _graft_report(spectral_radius(distance_matrix(T), tol), T2, None, tol)


def rebalance_by_vertex_move(params: HypertreeParams) -> Hypergraph:
    """Move w_{l-b} from e_{l-b} to e_{a+1}; the result is isomorphic to T(n, a+1, b-1)."""
    T = t_hypertree(params)
    ell, a, b = params.ell, params.a, params.b
    return move_vertices(T, params.edge_index(ell - b), params.edge_index(a + 1), [params.w(ell - b)])
