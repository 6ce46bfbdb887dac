import itertools
import random

import pytest

from rigidlink.errors import PreconditionError
from rigidlink.graph import Graph, clique_graph, complete_bipartite, complete_graph, cycle_graph, induced, wheel_graph
from rigidlink.linkedness import (
    Reason,
    Verdict,
    audit_minimally_globally_rigid,
    audit_subset,
    classify_all_pairs,
    classify_pair,
    is_globally_rigid2,
    is_minimally_globally_rigid2,
    sufficient_condition_wgl,
    weakly_linked_pairs,
)
from rigidlink.sparsity import is_rigid2

import brute

K4 = complete_graph(4)
W5 = wheel_graph(5)
TWO_K4 = Graph(6, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (1, 4), (1, 5), (4, 5)])

# 2-connected, not globally rigid; {3, 8} separates vertex 5, and the pair (0, 2)
# is decided by a 4-vertex circuit inside the 3-block
TEN = Graph(10, [(0, 1), (0, 3), (0, 6), (0, 8), (1, 2), (1, 3), (1, 6), (1, 7), (2, 6), (2, 8), (2, 9),
                 (3, 4), (3, 5), (3, 7), (4, 7), (4, 8), (4, 9), (5, 8), (6, 8), (7, 9)])

# 3-connected; for the pair (4, 7) no (u,v)-rigid set has a u-v path avoiding it,
# yet Clique(G, X) is globally rigid for X = {1, 2, 4, 5, 7}
CUBE = Graph(8, [(a, a ^ 1 << i) for a in range(8) for i in range(3) if a < a ^ 1 << i])

EIGHT = Graph(8, [(0, 1), (0, 3), (0, 6), (1, 2), (1, 4), (1, 5), (2, 4), (2, 7), (3, 5), (3, 6), (4, 5),
                  (5, 7), (6, 7)])


# global rigidity

def test_global_rigidity_examples():
    assert is_globally_rigid2(K4).globally_rigid
    v = is_globally_rigid2(K4.without_edges([(0, 1)]))
    assert not v and v.failure == "NotThreeConnected" and v.detail == (2, 3)
    assert is_globally_rigid2(W5)
    assert brute.k_connected(W5, 3) and brute.oredundantly_rigid(W5)


def test_global_rigidity_small_graphs():
    assert is_globally_rigid2(Graph(1))
    assert is_globally_rigid2(complete_graph(3))
    v = is_globally_rigid2(Graph(3, [(0, 1), (1, 2)]))
    assert not v and v.failure == "TooSmallNotComplete"


def test_global_rigidity_witnesses():
    v = is_globally_rigid2(complete_bipartite(3, 3))
    assert v.failure == "NotRedundantlyRigid" and v.detail in complete_bipartite(3, 3).edges
    assert is_globally_rigid2(complete_bipartite(3, 4))
    v = is_globally_rigid2(cycle_graph(5))
    assert v.failure == "NotThreeConnected"
    assert not brute.connected_after(5, cycle_graph(5).edges, v.detail)
    assert brute.k_connected(CUBE, 3)
    assert is_globally_rigid2(CUBE).failure == "NotRigid"


def test_global_rigidity_as_dict():
    assert is_globally_rigid2(K4).as_dict() == {"globally_rigid": True}
    d = is_globally_rigid2(cycle_graph(5)).as_dict()
    assert d["failure"] == "NotThreeConnected" and len(d["cut"]) == 2


# pair classification

def test_classify_adjacent():
    c = classify_pair(K4, 0, 1)
    assert (c.verdict, c.reason) == (Verdict.ADJACENT, Reason.ADJACENT_EDGE)


def test_classify_k4_minus_edge():
    c = classify_pair(K4.without_edges([(2, 3)]), 2, 3)
    assert (c.verdict, c.reason) == (Verdict.GLOBALLY_LOOSE, Reason.KAPPA_AT_MOST_TWO)
    assert c.certificate["kappa"] == 2


def test_classify_separating_pair():
    c = classify_pair(TWO_K4, 0, 1)
    assert (c.verdict, c.reason) == (Verdict.WEAKLY_GLOBALLY_LINKED, Reason.SEPARATING_PAIR)


def test_classify_not_linked_and_disconnected():
    C6 = cycle_graph(6)
    assert classify_pair(C6, 0, 3).reason is Reason.KAPPA_AT_MOST_TWO
    G = Graph(4, [(0, 1), (2, 3)])
    c = classify_pair(G, 0, 3)
    assert c.reason is Reason.KAPPA_AT_MOST_TWO and c.certificate == {"kappa": 0}


def test_classify_not_linked_reason():
    c = classify_pair(CUBE, 0, 3)
    assert brute.kappa(CUBE, 0, 3) == 3 and not brute.olinked(CUBE, 0, 3)
    assert (c.verdict, c.reason) == (Verdict.GLOBALLY_LOOSE, Reason.NOT_LINKED)


def test_globally_rigid_bipartite_pairs_are_linked():
    G = complete_bipartite(3, 4)
    assert all(c.weakly_globally_linked for c in classify_all_pairs(G))


def test_classify_clique_not_globally_rigid():
    K33 = complete_bipartite(3, 3)
    c = classify_pair(K33, 0, 1)
    assert (c.verdict, c.reason) == (Verdict.GLOBALLY_LOOSE, Reason.CLIQUE_NOT_GLOBALLY_RIGID)
    assert c.certificate["circuit"]["vertices"] == list(range(6))
    assert c.certificate["clique"]["verdict"]["failure"] == "NotRedundantlyRigid"


def test_classify_ten_vertex_instance():
    c = classify_pair(TEN, 0, 2)
    assert (c.verdict, c.reason) == (Verdict.WEAKLY_GLOBALLY_LINKED, Reason.CLIQUE_GLOBALLY_RIGID)
    cert = c.certificate
    assert cert["kappa"] == 3 and brute.kappa(TEN, 0, 2) >= 3
    assert cert["three_block"] == {"vertices": [0, 1, 2, 3, 4, 6, 7, 8, 9], "virtual_edges": [(3, 8)]}
    assert cert["circuit"]["vertices"] == [0, 1, 2, 6]
    assert not is_globally_rigid2(TEN)
    _replay(TEN, c)


def _replay(G, c):
    """Re-derive a certificate with the brute-force and numeric oracles."""
    cert = c.certificate
    tb = cert["three_block"]
    idx = {x: i for i, x in enumerate(tb["vertices"])}
    B = Graph(len(idx), [(idx[a], idx[b]) for a, b in brute.induced_edges(G, tb["vertices"]) + tb["virtual_edges"]])
    assert brute.k_connected(B, 3) or B.n <= 3
    bu, bv = idx[c.u], idx[c.v]
    circuit = tuple(sorted((idx[a], idx[b]) for a, b in cert["circuit"]["edges"]) + [tuple(sorted((bu, bv)))])
    assert tuple(sorted(circuit)) in brute.circuits_through(B, bu, bv)
    clique = brute.clique_graph_by_definition(B, [idx[x] for x in cert["circuit"]["vertices"]])
    assert brute.oglobally_rigid(clique) == cert["clique"]["verdict"]["globally_rigid"]
    assert brute.oglobally_rigid(clique) == c.weakly_globally_linked


def test_certificates_replay_on_random_three_connected_graphs():
    graphs = brute.sample(lambda G: brute.k_connected(G, 2), 60, 5, 8, seed=31, p=(0.35, 0.65))
    count = 0
    for G in graphs:
        for c in classify_all_pairs(G, certificate=True):
            if c.reason in (Reason.CLIQUE_GLOBALLY_RIGID, Reason.CLIQUE_NOT_GLOBALLY_RIGID):
                _replay(G, c)
                count += 1
    assert count > 30


def test_classify_errors():
    with pytest.raises(PreconditionError):
        classify_pair(K4, 2, 2)
    with pytest.raises(Exception):
        classify_pair(K4, 0, 9)


def test_weakly_linked_pairs_examples():
    assert weakly_linked_pairs(K4) == []
    assert weakly_linked_pairs(cycle_graph(4)) == []
    assert weakly_linked_pairs(W5) == [(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)]


def test_all_pairs_threads_and_single_pair_agree():
    G = TEN
    serial = classify_all_pairs(G, certificate=True)
    threaded = classify_all_pairs(G, certificate=True, threads=4)
    assert [c.as_dict() for c in serial] == [c.as_dict() for c in threaded]
    for c in serial:
        assert classify_pair(G, c.u, c.v).as_dict() == c.as_dict()


def test_isomorphism_invariance():
    rng = random.Random(8)
    for G in brute.random_corpus(150, 8, seed=32, nmin=4):
        perm = brute.random_permutation(rng, G.n)
        H = G.relabel(perm)
        for c in classify_all_pairs(G):
            d = classify_pair(H, perm[c.u], perm[c.v])
            assert (c.verdict, c.reason) == (d.verdict, d.reason)


# sufficient condition

def test_sufficient_condition_examples():
    assert sufficient_condition_wgl(W5, 1, 3, range(6))
    K33 = complete_bipartite(3, 3)
    assert not sufficient_condition_wgl(K33, 0, 1, range(6))
    with pytest.raises(PreconditionError) as info:
        sufficient_condition_wgl(cycle_graph(5), 0, 2, range(5))
    assert info.value.kind == "not-3-connected"
    with pytest.raises(PreconditionError) as info:
        sufficient_condition_wgl(W5, 1, 3, [1, 2, 3])
    assert info.value.kind == "not-uv-rigid"


def test_sufficient_condition_without_disjoint_path():
    u, v, X = 4, 7, [1, 2, 4, 5, 7]
    assert brute.k_connected(EIGHT, 3)
    assert sufficient_condition_wgl(EIGHT, u, v, X)
    assert classify_pair(EIGHT, u, v).weakly_globally_linked
    # every (u,v)-rigid set blocks all u-v paths through the rest of the graph
    rest = [x for x in range(8) if x not in (u, v)]
    for k in range(len(rest) + 1):
        for extra in itertools.combinations(rest, k):
            Y = sorted((u, v) + extra)
            if not is_rigid2(induced(EIGHT, Y)):
                continue
            inner = [x for x in range(8) if x not in Y]
            for comp in brute._components_within(EIGHT, inner):
                touched = {y for x in comp for y in EIGHT.adj[x]}
                assert not {u, v} <= touched


def test_sufficient_condition_is_sound():
    graphs = brute.sample(lambda G: brute.k_connected(G, 3), 40, 5, 8, seed=33, p=(0.4, 0.7))
    rng = random.Random(4)
    hits = 0
    for G in graphs:
        for u, v in itertools.combinations(range(G.n), 2):
            if G.has_edge(u, v):
                continue
            rest = [x for x in range(G.n) if x not in (u, v)]
            for _ in range(6):
                X = sorted([u, v] + rng.sample(rest, rng.randint(1, len(rest))))
                if not is_rigid2(induced(G, X)):
                    continue
                if sufficient_condition_wgl(G, u, v, X):
                    hits += 1
                    assert classify_pair(G, u, v).weakly_globally_linked
    assert hits > 20


def test_merge_of_globally_rigid_graphs():
    rng = random.Random(12)
    seeds = brute.sample(lambda G: bool(is_globally_rigid2(G)), 40, 4, 7, seed=34, p=(0.6, 0.95))
    for _ in range(150):
        G1, G2 = rng.choice(seeds), rng.choice(seeds)
        a, b = rng.choice(G1.edge_list())
        c = rng.choice([x for x in range(G1.n) if x not in (a, b)])
        a2, b2 = rng.choice(G2.edge_list())
        c2 = rng.choice([x for x in range(G2.n) if x not in (a2, b2)])
        place = {a2: a, b2: b, c2: c}
        rest = [x for x in range(G2.n) if x not in place]
        place.update({x: G1.n + i for i, x in enumerate(rest)})
        edges = set(G1.edges) | {tuple(sorted((place[x], place[y]))) for x, y in G2.edges}
        G = Graph(G1.n + len(rest), edges - {tuple(sorted((a, b)))})
        assert is_globally_rigid2(G)
        assert brute.oglobally_rigid(G)


# minimal global rigidity

def test_audit_examples():
    a = audit_minimally_globally_rigid(K4)
    assert a.minimally_globally_rigid and a.passed
    assert a.edge_count == a.edge_bound == 6
    w = audit_minimally_globally_rigid(W5)
    assert w.globally_rigid
    assert w.minimally_globally_rigid == all(not is_globally_rigid2(W5.without_edges([e])) for e in W5.edges)
    assert w.passed and w.exhaustive
    n = audit_minimally_globally_rigid(cycle_graph(5))
    assert not n.applicable and n.as_dict()["applicable"] is False


def test_audit_subset_on_k5():
    # K5 is globally rigid but not minimally so; its edge count breaks the bound
    assert not is_minimally_globally_rigid2(complete_graph(5))
    bad, ok = audit_subset(complete_graph(5), range(5))
    assert bad and ok
