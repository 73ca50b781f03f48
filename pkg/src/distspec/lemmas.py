"""Numerical checks of the Perron-vector lemmas on T(n, a, b) and hypertrees.

Each check returns a LemmaOutcome. A strict inequality counts only when its
gap exceeds the guard band of the spectral result (ten residuals); a gap
inside the band makes the verdict ``inconclusive`` unless some other
inequality clearly fails. Identities are accepted within a hundred residuals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Callable, Iterator

import numpy as np

from .enumeration import ClassSpec, enumerate_hypertrees
from .families import HypertreeParams, t_hypertree
from .hypergraph import (Hypergraph, HypergraphError, components, degrees,
                         distance_matrix, is_connected, is_hypertree)
from .spectral import SpectralResult, spectral_radius
from .transforms import (GraftError, branches_at, check_edge_move_lemma,
                         check_rebalance, check_vertex_move_lemma, entry_triples)

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


class HypothesisError(HypergraphError):
    """The instance does not satisfy the lemma's hypotheses."""


@dataclass
class LemmaOutcome:
    lemma: str
    instance: dict
    verdict: str
    margin: float
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict != FAIL


class _Inequalities:
    """Collects ``lhs > rhs`` claims and grades them against one guard band."""

    def __init__(self, guard: float):
        self.guard = guard
        self.gaps: dict[str, float] = {}

    def greater(self, name: str, lhs: float, rhs: float) -> None:
        self.gaps[name] = float(lhs - rhs)

    def verdict(self) -> tuple[str, float]:
        if not self.gaps:
            return PASS, float("inf")
        worst = min(self.gaps.values())
        if worst < -self.guard:
            return FAIL, worst
        if worst <= self.guard:
            return INCONCLUSIVE, worst
        return PASS, worst


def _spectrum(G: Hypergraph, tol):
    D = distance_matrix(G)
    return D, spectral_radius(D, tol)


# ---------------------------------------------------------------------------
# two-edge identities on hypertrees

def check_two_edge_identity(T: Hypergraph, e1: int, e2: int, u1: int, v1: int, u2: int, v2: int,
                            tol: float | None = None, spectrum=None) -> LemmaOutcome:
    """Both two-edge identities relating Perron entries to component sums.

    ``spectrum`` may pass a precomputed ``(D, SpectralResult)`` pair.
    """
    if e1 == e2:
        raise HypothesisError("the two edges must differ")
    E1, E2 = T.edges[e1], T.edges[e2]
    if u1 == v1 or u2 == v2 or not {u1, v1} <= set(E1) or not {u2, v2} <= set(E2):
        raise HypothesisError("need distinct u_i, v_i inside e_i")
    if spectrum is None:
        if not is_hypertree(T):
            raise HypothesisError("input must be a hypertree")
        spectrum = _spectrum(T, tol)
    D, res = spectrum
    if D[u1, u2] != D[v1, v2] + 2:
        raise HypothesisError(f"need d(u1,u2) = d(v1,v2) + 2, got {D[u1, u2]} and {D[v1, v2]}")
    x, rho = res.perron, res.rho

    def side_of(ei, vertex):
        rest = [i for i in range(T.m) if i != ei]
        return next(c for c in components(T, edges=rest) if vertex in c)

    T1, T2 = side_of(e1, u1), side_of(e2, u2)
    A1 = np.flatnonzero(D[:, u1] == D[:, v1])
    A2 = np.flatnonzero(D[:, u2] == D[:, v2])
    s = lambda S: float(x[list(S)].sum()) if len(S) else 0.0

    lhs = rho * (x[u1] - x[u2]) - rho * (x[v1] - x[v2])
    rhs = 2 * (s(T2) - s(T1)) + s(A2) - s(A1)
    errors = {"i": abs(lhs - rhs)}

    rest1, rest2 = set(E1) - {u1, v1}, set(E2) - {u2, v2}
    deg = degrees(T)
    if len(rest1) == 1 and len(rest2) == 1:
        (w1,), (w2,) = rest1, rest2
        if deg[w1] == 1 and deg[w2] == 1:
            lhs_a = (rho + 1) * (x[w1] - x[w2]) - rho * (x[v1] - x[v2])
            rhs_a = x[w2] - x[w1] + s(T2) - s(T1)
            lhs_b = rho * (x[u1] - x[u2]) - (rho + 1) * (x[w1] - x[w2])
            rhs_b = s(T2) - s(T1)
            errors["ii.a"] = abs(lhs_a - rhs_a)
            errors["ii.b"] = abs(lhs_b - rhs_b)

    allowed = 10.0 * res.guard
    worst = max(errors.values())
    verdict = PASS if worst <= allowed else FAIL
    instance = {"edges": [list(E1), list(E2)], "u": [u1, u2], "v": [v1, v2]}
    return LemmaOutcome("two-edge", instance, verdict, allowed - worst,
                        {"errors": errors, "allowed": allowed, "residual": res.residual})


def two_edge_choices(T: Hypergraph, D) -> Iterator[tuple[int, int, int, int, int, int]]:
    """Every admissible (e1, e2, u1, v1, u2, v2) on a hypertree."""
    for e1, e2 in permutations(range(T.m), 2):
        for u1, v1 in permutations(T.edges[e1], 2):
            for u2, v2 in permutations(T.edges[e2], 2):
                if D[u1, u2] == D[v1, v2] + 2:
                    yield e1, e2, u1, v1, u2, v2


# ---------------------------------------------------------------------------
# T(n, a, b) lemmas

def _base_hypotheses(n, a, b) -> HypertreeParams:
    if a < 0 or b < a + 2 or not 2 * (a + b) < n - 1:
        raise HypothesisError(f"need a >= 0, b >= a+2, 2(a+b) < n-1; got n={n}, a={a}, b={b}")
    return HypertreeParams(n, a, b)


def _outcome(name, P: HypertreeParams, res: SpectralResult, ineq: _Inequalities, **extra):
    verdict, margin = ineq.verdict()
    detail = {"gaps": ineq.gaps, "guard": ineq.guard, "rho": res.rho, **extra}
    return LemmaOutcome(name, {"n": P.n, "a": P.a, "b": P.b}, verdict, margin, detail)


def check_sigma_split(n: int, a: int, b: int, tol: float | None = None) -> LemmaOutcome:
    """Across the edge joining v_{l-b} and v_{l-b+1}, the far side carries more Perron mass."""
    P = _base_hypotheses(n, a, b)
    ell = P.ell
    if not 2 * b >= ell:
        raise HypothesisError(f"need b >= l/2; got b={b}, l={ell}")
    T = t_hypertree(P)
    _, res = _spectrum(T, tol)
    x = res.perron
    ei = P.edge_index(ell - b)
    rest = [i for i in range(T.m) if i != ei]
    comps = components(T, edges=rest)
    T1 = next(c for c in comps if P.v(ell - b) in c)
    T2 = next(c for c in comps if P.v(ell - b + 1) in c)
    ineq = _Inequalities(res.guard)
    ineq.greater("sigma(T2) > sigma(T1)", x[T2].sum(), x[T1].sum())
    return _outcome("sigma-split", P, res, ineq)


def check_perron_ordering(n: int, a: int, b: int, tol: float | None = None) -> LemmaOutcome:
    P = _base_hypotheses(n, a, b)
    ell = P.ell
    if not 2 * b < ell:
        raise HypothesisError(f"need b < l/2; got b={b}, l={ell}")
    _, res = _spectrum(t_hypertree(P), tol)
    x = res.perron
    v, w = (lambda i: x[P.v(i)]), (lambda i: x[P.w(i)])
    ineq = _Inequalities(res.guard)
    ineq.greater(f"x_v{P.p} > x_v{P.p1 + 1}", v(P.p), v(P.p1 + 1))
    for i in range(1, a + 1):
        ineq.greater(f"x_v{i} > x_v{ell + 1 - i}", v(i), v(ell + 1 - i))
        ineq.greater(f"x_w{i} > x_w{ell - i}", w(i), w(ell - i))
    ineq.greater(f"x_v{a + 1} > x_v{ell - a}", v(a + 1), v(ell - a))
    return _outcome("ordering", P, res, ineq)


def check_difference_monotonicity(n: int, a: int, b: int, tol: float | None = None) -> LemmaOutcome:
    P = _base_hypotheses(n, a, b)
    ell = P.ell
    if not 2 * b < ell:
        raise HypothesisError(f"need b < l/2; got b={b}, l={ell}")
    _, res = _spectrum(t_hypertree(P), tol)
    x = res.perron
    v, w = (lambda i: x[P.v(i)]), (lambda i: x[P.w(i)])
    ineq = _Inequalities(res.guard)
    for i in range(1, a + 1):
        right = v(i + 1) - v(ell - i)
        ineq.greater(f"(i) v-chain i={i}", right, v(i) - v(ell + 1 - i))
        ineq.greater(f"(i) w-vs-v i={i}", right, w(i) - w(ell - i))

    def diff(i):
        return v(a + 1 + i) - v(ell - b + 1 - i)

    top = (ell - b - a - 1) // 2 - 1
    for i in range(1, top + 1):
        ineq.greater(f"(ii) decreasing i={i}", diff(i), diff(i + 1))
        ineq.greater(f"(ii) positive i={i + 1}", diff(i + 1), 0.0)
    ineq.greater("(iii)", v(ell - a), v(ell - b + 1))
    return _outcome("monotonicity", P, res, ineq, chain_length=max(top, 0))


def status_lower_bound(a: int, r: int) -> Fraction:
    """(2a+1)(r-1) + r/(r-1) * sum_{i=1}^{floor((r-1)/2)} (r - 2i), exactly."""
    tail = sum(r - 2 * i for i in range(1, (r - 1) // 2 + 1))
    return (2 * a + 1) * (r - 1) + Fraction(r, r - 1) * tail


def check_status_bound(n: int, a: int, b: int, tol: float | None = None) -> LemmaOutcome:
    P = _base_hypotheses(n, a, b)
    if not 2 * b < P.ell:
        raise HypothesisError(f"need b < l/2; got b={b}, l={P.ell}")
    if P.r <= 2:
        raise HypothesisError(f"need r = l - b - a > 2, got r={P.r}")
    _, res = _spectrum(t_hypertree(P), tol)
    bound = status_lower_bound(a, P.r)
    ineq = _Inequalities(res.guard)
    ineq.greater("rho > bound", res.rho, float(bound))
    return _outcome("status-bound", P, res, ineq, bound=float(bound), r=P.r)


# ---------------------------------------------------------------------------
# parameter grids and sweeps

def lemma_grid(nmax: int, lower_half: bool, nmin: int = 1) -> list[tuple[int, int, int]]:
    """All (n, a, b) with a >= 0, b >= a+2, 2(a+b) < n-1 and either b < l/2
    (``lower_half``) or b >= l/2."""
    out = []
    for n in range(nmin, nmax + 1):
        for a in range(0, n):
            for b in range(a + 2, n):
                if not 2 * (a + b) < n - 1:
                    continue
                ell = n - a - b
                if (2 * b < ell) == lower_half:
                    out.append((n, a, b))
    return out


def rebalance_grid(nmax: int) -> list[tuple[int, int, int]]:
    return [(n, a, b) for n in range(1, nmax + 1) for a in range(n) for b in range(a + 2, n)
            if 2 * (a + b) < n - 1]


FAMILY_CHECKS: dict[str, tuple[Callable, bool]] = {
    "sigma-split": (check_sigma_split, False),
    "ordering": (check_perron_ordering, True),
    "monotonicity": (check_difference_monotonicity, True),
    "status-bound": (check_status_bound, True),
}


def sweep_family(suite: str, nmax: int = 20, tol: float | None = None) -> list[LemmaOutcome]:
    check, lower = FAMILY_CHECKS[suite]
    return [check(n, a, b, tol) for n, a, b in lemma_grid(nmax, lower)]


def hypertrees_upto(nmax: int, nmin: int = 2) -> Iterator[Hypergraph]:
    for n in range(nmin, nmax + 1):
        for k in range((n - 1) // 2 + 1):
            yield from enumerate_hypertrees(ClassSpec(n, k))


def sweep_two_edge(nmax: int = 8, tol: float | None = None) -> list[LemmaOutcome]:
    out = []
    for T in hypertrees_upto(nmax):
        spectrum = _spectrum(T, tol)
        for choice in two_edge_choices(T, spectrum[0]):
            out.append(check_two_edge_identity(T, *choice, tol=tol, spectrum=spectrum))
    return out


def _graft_outcome(name, G, params, report) -> LemmaOutcome:
    # a hypothesis inside the band is only excluded when the conclusion is not certified
    if report.inconclusive and not report.rho_increased:
        verdict = INCONCLUSIVE
    elif report.passed:
        verdict = PASS
    else:
        verdict = FAIL
    instance = {"edges": [list(e) for e in G.edges], **params}
    detail = {"hypothesis_held": report.hypothesis_held, "hypothesis_in_band": report.inconclusive,
              "rho_increased": report.rho_increased,
              "rho_before": report.before.rho, "rho_after": report.after.rho}
    return LemmaOutcome(name, instance, verdict, report.margin, detail)


def sweep_edge_moves(nmax: int = 8, tol: float | None = None) -> list[LemmaOutcome]:
    """Every cut vertex with >= 3 branches, ordered branch pair, v and I."""
    out = []
    for G in hypertrees_upto(nmax):
        for u in range(G.n):
            branches = branches_at(G, u)
            t = len(branches)
            if t < 3:
                continue
            for i1, i2 in permutations(range(t), 2):
                others = [j for j in range(t) if j not in (i1, i2)]
                order = [branches[i1], branches[i2]] + [branches[j] for j in others]
                for size in range(1, len(others) + 1):
                    for I in combinations(range(2, t), size):
                        for v in order[1]:
                            if v == u:
                                continue
                            rep = check_edge_move_lemma(G, u, order, v, I, tol)
                            params = {"u": u, "v": v, "branches": order, "I": list(I)}
                            out.append(_graft_outcome("edge-move", G, params, rep))
    return out


def sweep_vertex_moves(nmax: int = 8, tol: float | None = None) -> list[LemmaOutcome]:
    out = []
    for G in hypertrees_upto(nmax):
        for e, edge in enumerate(G.edges):
            if len(edge) < 3:
                continue
            rest = [i for i in range(G.m) if i != e]
            comps = components(G, edges=rest)
            home = {w: next(c for c in comps if w in c) for w in edge}
            for order in permutations(edge):
                if len(home[order[0]]) < 2 or len(home[order[1]]) < 2:
                    continue
                h2 = set(home[order[1]])
                targets = [i for i in rest if set(G.edges[i]) <= h2]
                for size in range(1, len(edge) - 1):
                    for I in combinations(range(2, len(edge)), size):
                        for ep in targets:
                            try:
                                rep = check_vertex_move_lemma(G, e, I, ep, order=order, tol=tol)
                            except GraftError:
                                continue
                            params = {"e": list(edge), "order": list(order), "I": list(I),
                                      "e_prime": list(G.edges[ep])}
                            out.append(_graft_outcome("vertex-move", G, params, rep))
    return out


def random_connected_hypergraph(rng: random.Random, nmin: int = 3, nmax: int = 12,
                                max_rank: int = 4) -> Hypergraph:
    """Random spanning hypertree plus a few extra random edges."""
    n = rng.randint(nmin, nmax)
    order = list(range(n))
    rng.shuffle(order)
    edges = []
    placed = [order[0]]
    i = 1
    while i < n:
        size = min(rng.randint(2, max_rank), n - i + 1)
        new = order[i:i + size - 1]
        edges.append([rng.choice(placed)] + new)
        placed.extend(new)
        i += size - 1
    for _ in range(rng.randint(0, n // 2)):
        size = rng.randint(2, min(max_rank, n))
        edges.append(rng.sample(range(n), size))
    return Hypergraph(n, edges)


def _entry_outcomes(G, tol, source) -> list[LemmaOutcome]:
    triples = entry_triples(G)
    if not triples:
        return []
    _, res = _spectrum(G, tol)
    x = res.perron
    out = []
    for u, v, w in triples:
        ineq = _Inequalities(res.guard)
        ineq.greater("x_w + x_u - x_v > 0", x[w] + x[u] - x[v], 0.0)
        verdict, margin = ineq.verdict()
        instance = {"source": source, "n": G.n, "edges": [list(e) for e in G.edges],
                    "u": u, "v": v, "w": w}
        out.append(LemmaOutcome("entry", instance, verdict, margin, {"guard": res.guard}))
    return out


def sweep_entry(nmax: int = 8, trials: int = 500, seed: int = 7, rand_nmax: int = 12,
                tol: float | None = None) -> list[LemmaOutcome]:
    out = []
    for G in hypertrees_upto(nmax):
        out.extend(_entry_outcomes(G, tol, "hypertree"))
    rng = random.Random(seed)
    for _ in range(trials):
        G = random_connected_hypergraph(rng, nmax=rand_nmax)
        assert is_connected(G)
        out.extend(_entry_outcomes(G, tol, "random"))
    return out


def sweep_rebalance(nmax: int = 30, tol: float | None = None) -> list[LemmaOutcome]:
    out = []
    for n, a, b in rebalance_grid(nmax):
        rep = check_rebalance(n, a, b, tol)
        verdict = PASS if rep.rho_increased else FAIL
        out.append(LemmaOutcome("rebalance", {"n": n, "a": a, "b": b}, verdict, rep.margin,
                                {"rho_before": rep.before.rho, "rho_after": rep.after.rho}))
    return out


def summarize(outcomes: list[LemmaOutcome]) -> dict[str, int]:
    counts = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
    for o in outcomes:
        counts[o.verdict] += 1
    counts["total"] = len(outcomes)
    return counts
