"""The two-dimensional rigidity matroid via the (2,3) pebble game.

Edges are always inserted in canonical (sorted) order, so the accepted
basis, fundamental circuits and every derived answer are deterministic.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import PreconditionError
from .graph import Edge, Graph, VertexSet, _norm


@dataclass(frozen=True)
class PebbleState:
    """Final pebble-game orientation of a graph.

    ``out[v]`` holds the (at most two) heads of edges oriented out of ``v``,
    ``oeid`` their edge indices, ``peb`` the free pebbles, and ``accepted``
    flags the independent edges in canonical order.
    """

    accepted: np.ndarray
    out: np.ndarray
    oeid: np.ndarray
    peb: np.ndarray
    comp: np.ndarray

    @property
    def rank(self) -> int:
        return int(self.accepted.sum())


@dataclass(frozen=True)
class Circuit:
    """An R2-circuit; ``edges`` includes the closing edge ``pair`` when it came from a linked pair."""

    vertices: VertexSet
    edges: tuple[Edge, ...]
    pair: Edge | None = None

    @property
    def base_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e != self.pair)


@dataclass(frozen=True)
class MatroidSummary:
    rank: int
    bridges: tuple[Edge, ...]
    components: tuple[tuple[Edge, ...], ...]


def pebble_state(G: Graph) -> PebbleState:
    st = G.cache.get("pebble")
    if st is None:
        if G.m:
            eu, ev = G.edge_arrays()
        else:
            eu = ev = np.zeros(0, dtype=np.int64)
        st = PebbleState(*_kernels.pebble_game(G.n, eu, ev, True))
        G.cache["pebble"] = st
    return st


def rank2(G: Graph) -> int:
    if G.n <= 1:
        return 0
    return pebble_state(G).rank


def is_rigid2(G: Graph) -> bool:
    if G.n <= 2:
        return G.is_complete()
    return rank2(G) == 2 * G.n - 3


def _check_pair(G: Graph, u: int, v: int) -> None:
    G.check_vertex(u)
    G.check_vertex(v)
    if u == v:
        raise PreconditionError("u and v must be distinct", "same-vertex")
    if G.has_edge(u, v):
        raise PreconditionError(f"({u}, {v}) is already an edge", "adjacent-pair")


def _closing_test(G: Graph, u: int, v: int):
    st = pebble_state(G)
    return _kernels.test_edge(st.out, st.oeid, st.peb, u, v)


def is_linked2(G: Graph, u: int, v: int) -> bool:
    """True iff adding ``uv`` does not raise the rank."""
    _check_pair(G, u, v)
    independent, _ = _closing_test(G, u, v)
    return not independent


def fundamental_circuit(G: Graph, u: int, v: int) -> Circuit:
    """The fundamental circuit of ``uv`` with respect to the canonical basis of ``G``.

    Its vertex set is the set reached by the failed pebble search for ``uv``.
    """
    _check_pair(G, u, v)
    independent, mask = _closing_test(G, u, v)
    if independent:
        raise PreconditionError(f"pair ({u}, {v}) is not linked", "not-linked")
    st = pebble_state(G)
    el = G.edge_list()
    edges = [el[e] for e in np.flatnonzero(st.accepted) if mask[el[e][0]] and mask[el[e][1]]]
    pair = _norm(u, v)
    return Circuit(tuple(int(x) for x in np.flatnonzero(mask)), tuple(sorted(edges + [pair])), pair)


def r2_components(G: Graph) -> list[tuple[Edge, ...]]:
    """Partition of the edges into connected components of the rigidity matroid.

    Classes are sorted internally and listed by their smallest edge.
    """
    st = pebble_state(G)
    el = G.edge_list()
    classes: dict[int, list[Edge]] = {}
    for e, c in enumerate(st.comp):
        classes.setdefault(int(c), []).append(el[e])
    return sorted((tuple(c) for c in classes.values()), key=lambda c: c[0])


def r2_bridges(G: Graph) -> tuple[Edge, ...]:
    st = pebble_state(G)
    sizes = Counter(st.comp.tolist())
    el = G.edge_list()
    return tuple(el[e] for e, c in enumerate(st.comp) if sizes[int(c)] == 1)


def is_r2_connected(G: Graph) -> bool:
    return G.m > 0 and len(set(pebble_state(G).comp.tolist())) == 1


def is_redundantly_rigid2(G: Graph) -> bool:
    if G.m < 3:
        raise PreconditionError("redundant rigidity is defined for graphs with at least three edges",
                                "too-few-edges")
    return is_rigid2(G) and not r2_bridges(G)


def matroid_summary(G: Graph) -> MatroidSummary:
    return MatroidSummary(rank2(G), r2_bridges(G), tuple(r2_components(G)))


def maximal_rigid_subgraphs(G: Graph) -> list[VertexSet]:
    """Vertex sets of the maximal rigid subgraphs, in order of their smallest edge.

    Every edge lies in exactly one of them.
    """
    isolated = [v for v in range(G.n) if not G.adj[v]]
    if isolated:
        raise PreconditionError(f"graph has isolated vertices {isolated[:5]}", "isolated-vertex")
    st = pebble_state(G)
    el = G.edge_list()
    done = np.zeros(G.m, dtype=bool)
    eu, ev = G.edge_arrays() if G.m else (np.zeros(0, int), np.zeros(0, int))
    result = []
    for e, (x, y) in enumerate(el):
        if done[e]:
            continue
        mask = _kernels.rigid_closure(st.out, st.oeid, st.peb, x, y)
        done |= mask[eu] & mask[ev]
        result.append(tuple(int(w) for w in np.flatnonzero(mask)))
    return result
