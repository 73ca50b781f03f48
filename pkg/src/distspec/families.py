"""Paths, saw-graphs S(p, q; l) and the hypertrees T(n, a, b).

Vertex-id layout (part of the public contract):

* ``path(n)``: vertex ``i`` is ``v_{i+1}``.
* ``t_hypertree``: path vertices ``v_1..v_l`` get ids ``0..l-1``; the pendant
  vertices ``w_i`` follow in increasing edge index ``i``.
* ``saw_graph``: same layout, with the triangle apex of path edge ``i``
  taking the place of ``w_i``. Hence ``saw_graph(p, q, l)`` is edge-set equal
  to ``two_section(t_hypertree(2p + 2q + l + 1, p, q))`` when ``p <= q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .hypergraph import Hypergraph, HypergraphError, two_section


@dataclass(frozen=True)
class HypertreeParams:
    n: int
    a: int
    b: int

    def __post_init__(self):
        n, a, b = self.n, self.a, self.b
        if n < 1:
            raise HypergraphError(f"T(n,a,b) needs n >= 1, got n={n}")
        if not 0 <= a <= b:
            raise HypergraphError(f"T(n,a,b) needs 0 <= a <= b, got a={a}, b={b}")
        if a + b > (n - 1) // 2:
            raise HypergraphError(f"T(n,a,b) needs a + b <= floor((n-1)/2), got {a}+{b} with n={n}")

    @property
    def ell(self) -> int:
        """Order of the underlying path."""
        return self.n - self.a - self.b

    @property
    def r(self) -> int:
        return self.ell - self.b - self.a

    @property
    def p(self) -> int:
        return self.ell // 2

    @property
    def p1(self) -> int:
        return (self.ell + 1) // 2

    @property
    def k(self) -> int:
        return self.a + self.b

    def pendant_indices(self) -> list[int]:
        """Path-edge indices i (1-based) whose edge carries a pendant w_i."""
        ell = self.ell
        return list(range(1, self.a + 1)) + list(range(ell - self.b, ell))

    @cached_property
    def _w_ids(self) -> dict[int, int]:
        return {i: self.ell + j for j, i in enumerate(self.pendant_indices())}

    def v(self, i: int) -> int:
        """Vertex id of v_i (1-based)."""
        if not 1 <= i <= self.ell:
            raise IndexError(f"v_{i} does not exist (l={self.ell})")
        return i - 1

    def w(self, i: int) -> int:
        """Vertex id of w_i; only defined for edges carrying a pendant vertex."""
        try:
            return self._w_ids[i]
        except KeyError:
            raise IndexError(f"w_{i} does not exist in T({self.n},{self.a},{self.b})") from None

    def edge_index(self, i: int) -> int:
        """Position of path edge e_i in the hypergraph's edge list."""
        if not 1 <= i < self.ell:
            raise IndexError(f"e_{i} does not exist")
        return i - 1


@dataclass(frozen=True)
class SawParams:
    p: int
    q: int
    ell: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or self.ell < 0:
            raise HypergraphError("S(p,q;l) needs p, q, l >= 0")
        if self.order < 2:
            raise HypergraphError("S(p,q;l) needs order >= 2")

    @property
    def order(self) -> int:
        return 2 * self.p + 2 * self.q + self.ell + 1

    @property
    def k(self) -> int:
        return self.p + self.q


def path(n: int) -> Hypergraph:
    if n < 1:
        raise HypergraphError(f"path needs n >= 1, got {n}")
    return Hypergraph(n, [(i, i + 1) for i in range(n - 1)])


def t_hypertree(params: HypertreeParams | tuple[int, int, int]) -> Hypergraph:
    if not isinstance(params, HypertreeParams):
        params = HypertreeParams(*params)
    ell = params.ell
    edges = []
    for i in range(1, ell):
        e = [params.v(i), params.v(i + 1)]
        if i in params._w_ids:
            e.append(params.w(i))
        edges.append(e)
    return Hypergraph(params.n, edges)


def saw_graph(params: SawParams | tuple[int, int, int]) -> Hypergraph:
    if not isinstance(params, SawParams):
        params = SawParams(*params)
    p, q = params.p, params.q
    L = p + q + params.ell + 1
    tri = list(range(1, p + 1)) + list(range(L - q, L))
    apex = {i: L + j for j, i in enumerate(tri)}
    edges = []
    for i in range(1, L):
        a, b = i - 1, i
        edges.append((a, b))
        if i in apex:
            edges.append((a, apex[i]))
            edges.append((apex[i], b))
    return Hypergraph(params.order, edges)


def check_o_correspondence(params: HypertreeParams | tuple[int, int, int]) -> bool:
    """Whether the 2-section of T(n,a,b) is isomorphic to S(a, b; n-2(a+b)-1)."""
    from .enumeration import canonical_form

    if not isinstance(params, HypertreeParams):
        params = HypertreeParams(*params)
    saw = saw_graph(SawParams(params.a, params.b, params.n - 2 * params.k - 1))
    return canonical_form(two_section(t_hypertree(params))) == canonical_form(saw)


def parse_family(text: str) -> Hypergraph:
    """Build a family member from ``P:n``, ``T:n,a,b`` or ``S:p,q,l``."""
    kind, _, args = text.partition(":")
    try:
        values = [int(v) for v in args.split(",")] if args else []
    except ValueError:
        raise HypergraphError(f"bad family arguments in {text!r}") from None
    kind = kind.strip().upper()
    if kind == "P" and len(values) == 1:
        return path(values[0])
    if kind == "T" and len(values) == 3:
        return t_hypertree(HypertreeParams(*values))
    if kind == "S" and len(values) == 3:
        return saw_graph(SawParams(*values))
    raise HypergraphError(f"unrecognised family spec {text!r}; expected P:n, T:n,a,b or S:p,q,l")
