import random
from collections import Counter
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from distspec import Hypergraph
from distspec.enumeration import (ClassSpec, InfeasibleSpecError, argmax_rho,
                                  canonical_form, canonical_labeling, canonical_representative,
                                  enumerate_cacti, enumerate_hypertrees, is_cactus)
from distspec.families import saw_graph, t_hypertree
from distspec.hypergraph import is_connected, is_hypertree, two_section

from conftest import connected_hypergraphs
from oracles import (has_loose_cycle_bruteforce, labeled_cacti_classes, nx_isomorphic, to_nx)


def relabel_randomly(G, rng):
    perm = list(range(G.n))
    rng.shuffle(perm)
    return G.relabel(perm)


class TestCanonicalForm:
    def test_triangle_relabelled(self):
        a = Hypergraph(3, [(0, 1), (1, 2), (0, 2)])
        b = Hypergraph(3, [(2, 0), (1, 0), (2, 1)])
        assert canonical_form(a) == canonical_form(b)

    def test_p4_vs_star(self):
        p4 = Hypergraph(4, [(0, 1), (1, 2), (2, 3)])
        star = Hypergraph(4, [(0, 1), (0, 2), (0, 3)])
        assert canonical_form(p4) != canonical_form(star)

    def test_fuzz_t912(self, rng):
        T = t_hypertree((9, 1, 2))
        keys = {canonical_form(relabel_randomly(T, rng)) for _ in range(200)}
        assert keys == {canonical_form(T)}

    def test_representative_is_relabelling(self, rng):
        T = t_hypertree((11, 2, 3))
        rep = canonical_representative(relabel_randomly(T, rng))
        assert rep.same_edges(canonical_representative(T))
        assert nx_isomorphic(rep, T)

    def test_labeling_reproduces_key(self):
        G = saw_graph((1, 2, 3))
        key, perm = canonical_labeling(G)
        assert sorted(perm) == list(range(G.n))
        assert canonical_form(G.relabel(perm)) == key

    def test_symmetric_inputs_are_fast(self):
        star = Hypergraph(12, [(0, i) for i in range(1, 12)])
        assert canonical_form(star) == canonical_form(star.relabel(list(range(11, -1, -1))))
        K = Hypergraph(9, list(combinations(range(9), 2)))
        assert len(canonical_form(K)) == 1 + 36 * 3

    def test_distinguishes_edge_sizes(self):
        a = Hypergraph(4, [(0, 1, 2), (2, 3)])
        b = Hypergraph(4, [(0, 1), (1, 2), (2, 3)])
        assert canonical_form(a) != canonical_form(b)

    @settings(max_examples=200, deadline=None)
    @given(connected_hypergraphs(max_n=7), connected_hypergraphs(max_n=7), st.randoms())
    def test_agrees_with_networkx(self, G, H, r):
        assert canonical_form(G) == canonical_form(relabel_randomly(G, r))
        same = G.n == H.n and nx_isomorphic(G, H)
        assert (canonical_form(G) == canonical_form(H)) == same


class TestClassSpec:
    @pytest.mark.parametrize("args", [(7, 4, "hypertree-rank3"), (7, -1, "cactus-all"),
                                      (7, 1, "trees"), (0, 0, "cactus-all")])
    def test_infeasible(self, args):
        with pytest.raises(InfeasibleSpecError):
            ClassSpec(*args)

    def test_wrong_universe_for_generator(self):
        with pytest.raises(InfeasibleSpecError):
            list(enumerate_cacti(ClassSpec(5, 1)))
        with pytest.raises(InfeasibleSpecError):
            list(enumerate_hypertrees(ClassSpec(5, 1, "cactus-all")))


class TestHypertreeEnumeration:
    @pytest.mark.parametrize("n, k", [(3, 1), (4, 1), (5, 2)])
    def test_single_class(self, n, k):
        assert len(list(enumerate_hypertrees(ClassSpec(n, k)))) == 1

    def test_members_valid_and_distinct(self):
        for n in range(1, 10):
            for k in range((n - 1) // 2 + 1):
                members = list(enumerate_hypertrees(ClassSpec(n, k)))
                keys = [canonical_form(G) for G in members]
                assert len(set(keys)) == len(keys)
                for G in members:
                    assert G.n == n and is_hypertree(G) and G.rank <= 3
                    assert sum(1 for e in G.edges if len(e) == 3) == k
                    assert sum(len(e) - 1 for e in G.edges) == n - 1

    def test_pairwise_non_isomorphic_networkx(self):
        members = list(enumerate_hypertrees(ClassSpec(8, 2)))
        for G, H in combinations(members, 2):
            assert not nx_isomorphic(G, H)

    def test_shuffled_order_same_keys(self):
        spec = ClassSpec(9, 2)
        base = Counter(canonical_form(G) for G in enumerate_hypertrees(spec))
        for seed in (1, 2, 3):
            assert Counter(canonical_form(G) for G in enumerate_hypertrees(spec, seed)) == base

    def test_every_t_family_member_once(self):
        for n in range(3, 11):
            for k in range(1, (n - 1) // 2 + 1):
                keys = [canonical_form(G) for G in enumerate_hypertrees(ClassSpec(n, k))]
                for a in range(0, k // 2 + 1):
                    assert keys.count(canonical_form(t_hypertree((n, a, k - a)))) == 1

    def test_matches_brute_force(self):
        # every labelled rank <= 3 edge set on n vertices, filtered by the definition
        for n in range(2, 6):
            cands = [c for r in (2, 3) for c in combinations(range(n), r)]
            classes = {}
            for m in range(1, n):
                for chosen in combinations(cands, m):
                    if sum(len(c) - 1 for c in chosen) != n - 1:
                        continue
                    G = Hypergraph(n, chosen)
                    if not is_connected(G) or has_loose_cycle_bruteforce(G):
                        continue
                    k = sum(1 for c in chosen if len(c) == 3)
                    reps = classes.setdefault(k, [])
                    if not any(nx_isomorphic(G, R) for R in reps):
                        reps.append(G)
            for k, reps in classes.items():
                ours = {canonical_form(G) for G in enumerate_hypertrees(ClassSpec(n, k))}
                assert ours == {canonical_form(R) for R in reps}

    def test_bijection_with_triangle_cacti(self):
        for n in range(3, 10):
            for k in range((n - 1) // 2 + 1):
                trees = {canonical_form(two_section(G)) for G in enumerate_hypertrees(ClassSpec(n, k))}
                cacti = {canonical_form(G)
                         for G in enumerate_cacti(ClassSpec(n, k, "cactus-triangles-only"))}
                assert trees == cacti

    def test_tree_counts(self):
        # unlabelled trees on 1..10 vertices
        counts = [len(list(enumerate_hypertrees(ClassSpec(n, 0)))) for n in range(1, 11)]
        assert counts == [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]


class TestCactusEnumeration:
    def test_triangle(self):
        (G,) = enumerate_cacti(ClassSpec(3, 1, "cactus-all"))
        assert G.m == 3

    def test_triangle_with_pendant(self):
        assert len(list(enumerate_cacti(ClassSpec(4, 1, "cactus-triangles-only")))) == 1

    def test_n6_k1_against_brute_force(self):
        oracle = [R for R in labeled_cacti_classes(6) if R.number_of_edges() == 6]
        ours = list(enumerate_cacti(ClassSpec(6, 1, "cactus-all")))
        assert len(ours) == len(oracle)
        for R in oracle:
            assert sum(nx.is_isomorphic(to_nx(G), R) for G in ours) == 1

    def test_members_are_cacti(self):
        for n in range(3, 9):
            for k in range((n - 1) // 2 + 1):
                for mode in ("cactus-all", "cactus-triangles-only"):
                    for G in enumerate_cacti(ClassSpec(n, k, mode)):
                        H = to_nx(G)
                        assert nx.is_connected(H) and G.rank == 2
                        cycles = nx.cycle_basis(H)
                        assert len(cycles) == k
                        if mode == "cactus-triangles-only":
                            assert all(len(c) == 3 for c in cycles)

    def test_shuffled_order_same_keys(self):
        spec = ClassSpec(8, 2, "cactus-all")
        base = Counter(canonical_form(G) for G in enumerate_cacti(spec))
        assert Counter(canonical_form(G) for G in enumerate_cacti(spec, seed=11)) == base

    def test_total_counts(self):
        # unlabelled cacti on 1..9 vertices, summed over cycle counts
        totals = [sum(len(list(enumerate_cacti(ClassSpec(n, k, "cactus-all"))))
                      for k in range((n - 1) // 2 + 1)) for n in range(1, 10)]
        assert totals == [1, 1, 2, 4, 9, 23, 63, 188, 596]


class TestIsCactus:
    def test_examples(self):
        bowtie = Hypergraph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
        assert is_cactus(bowtie)
        diamond = Hypergraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
        assert not is_cactus(diamond)
        assert not is_cactus(Hypergraph(3, [(0, 1, 2)]))
        assert not is_cactus(Hypergraph(4, [(0, 1), (2, 3)]))

    def test_against_blocks(self):
        rng = random.Random(5)
        for _ in range(2000):
            n = rng.randint(1, 8)
            pairs = list(combinations(range(n), 2))
            G = Hypergraph(n, rng.sample(pairs, rng.randint(0, len(pairs))))
            H = to_nx(G)
            expected = nx.is_connected(H) and all(
                len(b) == 1 or len(b) == len({v for e in b for v in e})
                for b in map(list, nx.biconnected_component_edges(H)))
            assert is_cactus(G) == expected


class TestArgmax:
    def test_hypertrees_7_2(self):
        res = argmax_rho(ClassSpec(7, 2))
        assert res.unique and res.gap > 1e-7
        assert canonical_form(res.graph) == canonical_form(t_hypertree((7, 1, 1)))

    def test_triangle_cacti_7_2(self):
        res = argmax_rho(ClassSpec(7, 2, "cactus-triangles-only"))
        assert res.unique
        assert canonical_form(res.graph) == canonical_form(saw_graph((1, 1, 2)))

    @pytest.mark.parametrize("n", [6, 7, 8])
    def test_one_cycle(self, n):
        res = argmax_rho(ClassSpec(n, 1, "cactus-all"))
        assert res.unique
        assert canonical_form(res.graph) == canonical_form(saw_graph((0, 1, n - 3)))

    def test_singleton_class(self):
        res = argmax_rho(ClassSpec(5, 2))
        assert res.count == 1 and res.unique and res.gap == float("inf")

    def test_ties_reported(self):
        # a huge margin forces every runner-up into the tie list
        res = argmax_rho(ClassSpec(7, 1), margin=1e6)
        assert not res.unique and len(res.ties) == res.count - 1
