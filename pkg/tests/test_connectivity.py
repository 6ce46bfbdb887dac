import itertools
import random

import pytest

from rigidlink.connectivity import (
    SeparatingPairOutcome,
    SeparatorPair,
    augmented_graph,
    cleave,
    is_k_connected,
    kappa_pair,
    small_vertex_cut,
    three_block,
    two_separators,
)
from rigidlink.errors import PreconditionError
from rigidlink.graph import Graph, complete_bipartite, complete_graph, cycle_graph, path_graph, wheel_graph
from rigidlink.sparsity import is_linked2

import brute

# two copies of K4 - ab glued along the non-adjacent pair a = 0, b = 1
TWO_K4 = Graph(6, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (1, 4), (1, 5), (4, 5)])

# W5 (hub 0, rim 1..5) without the rim edge 12, plus a K4-like lobe on {6, 7, 8} hanging off {1, 2}
LOBED_WHEEL = Graph(9, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (2, 3), (3, 4), (4, 5), (5, 1),
                        (6, 1), (7, 1), (7, 2), (8, 2), (6, 7), (7, 8), (6, 8)])


def test_kappa_examples():
    assert kappa_pair(path_graph(3), 0, 2) == 1
    assert kappa_pair(cycle_graph(4), 0, 2) == 2
    # vertex 0 keeps only two neighbours once 03 is deleted
    G = complete_bipartite(3, 3).without_edges([(0, 3)])
    assert kappa_pair(G, 0, 3) == brute.kappa(G, 0, 3) == 2
    assert kappa_pair(complete_bipartite(3, 3), 0, 1) == brute.kappa(complete_bipartite(3, 3), 0, 1) == 3


def test_kappa_stops_at_three_unless_full():
    G = complete_graph(7).without_edges([(0, 1)])
    assert kappa_pair(G, 0, 1) == 3
    assert kappa_pair(G, 0, 1, full=True) == 5


def test_kappa_rejects_edges_and_equal_vertices():
    with pytest.raises(PreconditionError) as info:
        kappa_pair(complete_graph(3), 0, 1)
    assert info.value.kind == "adjacent-pair"
    with pytest.raises(PreconditionError):
        kappa_pair(complete_graph(3), 1, 1)


def test_kappa_disconnected_is_zero():
    assert kappa_pair(Graph(4, [(0, 1), (2, 3)]), 0, 3) == 0


def test_k_connected_examples():
    assert is_k_connected(complete_graph(4), 3)
    assert not is_k_connected(cycle_graph(4), 3)
    W5 = wheel_graph(5)
    assert is_k_connected(W5, 3) and brute.k_connected(W5, 3)
    assert not is_k_connected(complete_graph(3), 3)
    assert small_vertex_cut(cycle_graph(5), 3) in {(a, b) for a, b in brute.vertex_cuts(cycle_graph(5), 2)}


def test_two_separators_examples():
    assert two_separators(complete_graph(4).without_edges([(2, 3)])) == [SeparatorPair(0, 1)]
    assert two_separators(cycle_graph(4)) == [SeparatorPair(0, 2), SeparatorPair(1, 3)]
    assert [(s.a, s.b) for s in two_separators(TWO_K4)] == brute.two_separators(TWO_K4) == [(0, 1)]
    with pytest.raises(PreconditionError):
        two_separators(path_graph(4))


def test_augmented_graph_examples():
    assert augmented_graph(cycle_graph(4)) == complete_graph(4)
    assert augmented_graph(wheel_graph(5)) == wheel_graph(5)
    assert augmented_graph(TWO_K4) == TWO_K4.with_edges([(0, 1)])
    with pytest.raises(PreconditionError):
        augmented_graph(path_graph(3))


def test_cleave_examples():
    assert cleave(cycle_graph(4), SeparatorPair(0, 2), [1]) == complete_graph(3)
    two_triangles = Graph(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    assert cleave(two_triangles, SeparatorPair(0, 1), [2]) == complete_graph(3)
    assert cleave(two_triangles, SeparatorPair(0, 1), [3]) == complete_graph(3)
    with pytest.raises(PreconditionError):
        cleave(cycle_graph(4), SeparatorPair(0, 2), [1, 3])


def test_cleave_nine_vertex_instance():
    H, to_parent = cleave(LOBED_WHEEL, SeparatorPair(1, 2), [0, 3, 4, 5], return_mapping=True)
    assert to_parent == [0, 1, 2, 3, 4, 5]
    assert H == wheel_graph(5)
    H, to_parent = cleave(LOBED_WHEEL, SeparatorPair(1, 2), [6, 7, 8], return_mapping=True)
    assert to_parent == [1, 2, 6, 7, 8]
    assert H == Graph(5, [(0, 1), (0, 2), (0, 3), (1, 3), (1, 4), (2, 3), (3, 4), (2, 4)])


def test_three_block_of_three_connected_graph_is_itself():
    tb = three_block(wheel_graph(5), 1, 3)
    assert tb.block == wheel_graph(5)
    assert tb.to_parent == tuple(range(6)) and tb.added_edges == ()


def test_three_block_separating_pair():
    assert three_block(TWO_K4, 0, 1) == SeparatingPairOutcome(0, 1)


def test_three_block_lobed_wheel():
    tb = three_block(LOBED_WHEEL, 3, 5)
    assert tb.to_parent == (0, 1, 2, 3, 4, 5)
    assert tb.parent_edges(tb.added_edges) == [(1, 2)]
    assert tb.block == wheel_graph(5)
    aug = brute.augmented(LOBED_WHEEL)
    assert brute.maximal_three_connected(aug, 3, 5) == [tb.to_parent]
    assert three_block(LOBED_WHEEL, 3, 5, method="cleave") == tb


def test_three_block_preconditions():
    with pytest.raises(PreconditionError) as info:
        three_block(cycle_graph(6), 0, 3)
    assert info.value.kind == "kappa-at-most-two"
    with pytest.raises(PreconditionError):
        three_block(path_graph(4), 0, 3)
    with pytest.raises(PreconditionError):
        three_block(wheel_graph(5), 0, 1)


# properties against brute force

SMALL = brute.random_corpus(400, 9, seed=11, nmin=2)
BICONNECTED = brute.sample(brute.two_connected, 250, 4, 9, seed=12, p=(0.3, 0.7))


def _kappa3_pairs(G):
    for u, v in itertools.combinations(range(G.n), 2):
        if not G.has_edge(u, v) and brute.kappa(G, u, v) >= 3:
            yield u, v


def test_kappa_matches_cut_enumeration():
    for G in SMALL:
        for u, v in itertools.combinations(range(G.n), 2):
            if G.has_edge(u, v):
                continue
            ref = brute.kappa(G, u, v)
            assert kappa_pair(G, u, v, full=True) == ref
            assert kappa_pair(G, u, v) == min(ref, 3)


def test_k_connectivity_matches_enumeration():
    for G in SMALL:
        for k in (1, 2, 3):
            assert is_k_connected(G, k) == brute.k_connected(G, k), (G.edge_list(), k)


def test_small_vertex_cut_is_a_cut():
    for G in SMALL:
        cut = small_vertex_cut(G, 3)
        if cut:
            assert not brute.connected_after(G.n, G.edges, cut)


def test_two_separators_match_enumeration():
    for G in BICONNECTED:
        assert [(s.a, s.b) for s in two_separators(G)] == brute.two_separators(G)


def test_augmentation_reaches_fixpoint_in_one_step():
    # adding separator edges never creates new separators, so one round is the fixpoint
    for G in BICONNECTED:
        A = augmented_graph(G)
        assert augmented_graph(A) == A


def test_cleave_shrinks_and_keeps_two_connectivity():
    for G in BICONNECTED:
        for s in two_separators(G):
            for C in brute._components_within(G, [x for x in range(G.n) if x not in (s.a, s.b)]):
                H = cleave(G, s, C)
                assert H.n < G.n
                assert brute.k_connected(H, 2) or H.n == 3


def test_three_block_fast_matches_iterative_cleaving():
    count = 0
    for G in BICONNECTED:
        for u, v in _kappa3_pairs(G):
            assert three_block(G, u, v) == three_block(G, u, v, method="cleave")
            count += 1
    assert count > 200


def test_three_block_is_maximal_three_connected_subgraph_of_augmented_graph():
    for G in BICONNECTED:
        aug = brute.augmented(G)
        for u, v in _kappa3_pairs(G):
            tb = three_block(G, u, v)
            if isinstance(tb, SeparatingPairOutcome):
                assert not brute.connected_after(G.n, G.edges, (u, v))
                continue
            assert brute.maximal_three_connected(aug, u, v) == [tb.to_parent]
            assert tb.block.n == 3 or brute.k_connected(tb.block, 3)
            bu, bv = tb.to_parent.index(u), tb.to_parent.index(v)
            assert not tb.block.has_edge(bu, bv)
            if brute.olinked(G, u, v):
                assert brute.olinked(tb.block, bu, bv)


def test_three_block_isomorphism_invariance():
    rng = random.Random(5)
    for G in BICONNECTED[:120]:
        perm = brute.random_permutation(rng, G.n)
        H = G.relabel(perm)
        for u, v in _kappa3_pairs(G):
            a = three_block(G, u, v)
            b = three_block(H, perm[u], perm[v])
            if isinstance(a, SeparatingPairOutcome):
                assert isinstance(b, SeparatingPairOutcome)
                continue
            assert sorted(perm[x] for x in a.to_parent) == list(b.to_parent)
            assert sorted(tuple(sorted((perm[x], perm[y]))) for x, y in a.parent_edges(a.added_edges)) == \
                b.parent_edges(b.added_edges)
