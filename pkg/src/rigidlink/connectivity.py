"""Vertex connectivity, 2-separators, cleaving and 3-blocks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import PreconditionError
from .graph import Edge, Graph, VertexSet, _norm, components, induced


@dataclass(frozen=True)
class SeparatorPair:
    a: int
    b: int


@dataclass(frozen=True)
class SeparatingPairOutcome:
    """Returned by :func:`three_block` when ``(u, v)`` itself separates the graph."""

    u: int
    v: int


@dataclass(frozen=True)
class ThreeBlock:
    """The 3-block of a pair.

    ``to_parent[i]`` is the vertex of the input graph behind block vertex
    ``i``; ``added_edges`` are the virtual edges, in block ids.
    """

    block: Graph
    to_parent: tuple[int, ...]
    added_edges: tuple[Edge, ...] = field(default=())

    def parent_edges(self, edges) -> list[Edge]:
        return [_norm(self.to_parent[a], self.to_parent[b]) for a, b in edges]


# ---------------------------------------------------------------------------
# vertex-disjoint paths


def kappa_pair(G: Graph, u: int, v: int, full: bool = False) -> int:
    """Maximum number of internally disjoint ``u``-``v`` paths.

    The search stops at 3 unless ``full`` is set, which is all the decision
    pipeline needs.
    """
    G.check_vertex(u)
    G.check_vertex(v)
    if u == v:
        raise PreconditionError("u and v must be distinct", "same-vertex")
    if G.has_edge(u, v):
        raise PreconditionError(f"kappa is only defined here for non-adjacent pairs, ({u}, {v}) is an edge",
                                "adjacent-pair")
    limit = G.n if full else 3
    return _disjoint_paths(G, u, v, limit)


def _disjoint_paths(G: Graph, s: int, t: int, limit: int) -> int:
    # Vertex x is split into x_in = 2x and x_out = 2x + 1 joined by a unit arc.
    # Edge arcs get capacity 1 as well, which does not change the maximum.
    cap: dict[tuple[int, int], int] = {}
    nbrs: dict[int, list[int]] = {}

    def arc(a, b):
        cap[(a, b)] = 1
        cap.setdefault((b, a), 0)
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)

    for x in range(G.n):
        if x not in (s, t):
            arc(2 * x, 2 * x + 1)
    for a, b in G.edges:
        arc(2 * a + 1, 2 * b)
        arc(2 * b + 1, 2 * a)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < limit:
        prev = {source: source}
        queue = deque([source])
        while queue and sink not in prev:
            x = queue.popleft()
            for y in nbrs.get(x, ()):
                if y not in prev and cap[(x, y)] > 0:
                    prev[y] = x
                    queue.append(y)
        if sink not in prev:
            break
        y = sink
        while y != source:
            x = prev[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
        flow += 1
    return flow


# ---------------------------------------------------------------------------
# k-connectivity and separators


def articulation_points(G: Graph, removed: int = -1) -> tuple[bool, list[int]]:
    """``(connected, cut_vertices)`` for ``G - removed``."""
    if G.n == 0:
        return True, []
    indptr, indices = G.csr()
    ok, flags = _kernels.articulation_points(indptr, indices, G.n, removed)
    return bool(ok), [int(x) for x in np.flatnonzero(flags)]


def small_vertex_cut(G: Graph, k: int) -> tuple[int, ...] | None:
    """A vertex set of size < k whose removal disconnects ``G``, or None if ``G`` is k-connected.

    Graphs with at most ``k`` vertices are never k-connected; for them the
    returned witness is the empty tuple.
    """
    if k not in (1, 2, 3):
        raise ValueError(f"k must be 1, 2 or 3, got {k}")
    if G.n <= k:
        return ()
    ok, cuts = articulation_points(G)
    if not ok:
        return ()
    if k == 1:
        return None
    if cuts:
        return (cuts[0],)
    if k == 2:
        return None
    indptr, indices = G.csr()
    a, b = _kernels.first_small_cut(indptr, indices, G.n)
    if a < 0:
        return None
    return (int(a),) if b < 0 else tuple(sorted((int(a), int(b))))


def is_k_connected(G: Graph, k: int) -> bool:
    return small_vertex_cut(G, k) is None


def _require_biconnected(G: Graph) -> None:
    if not is_k_connected(G, 2):
        raise PreconditionError("graph must be 2-connected", "not-2-connected")


def two_separators(G: Graph) -> list[SeparatorPair]:
    """All pairs ``(a, b)``, ``a < b``, with ``G - {a, b}`` disconnected, in lexicographic order."""
    _require_biconnected(G)
    if G.n < 4:
        raise PreconditionError("2-separators need at least four vertices", "too-small")
    out = []
    for a in range(G.n):
        _, cuts = articulation_points(G, a)
        out.extend(SeparatorPair(a, b) for b in cuts if b > a)
    return out


def augmented_graph(G: Graph) -> Graph:
    """G plus the edge ``ab`` for every 2-separator ``(a, b)`` of ``G``."""
    _require_biconnected(G)
    if G.n < 4:
        return G
    return G.with_edges((s.a, s.b) for s in two_separators(G))


def cleave(G: Graph, s: SeparatorPair, C, return_mapping: bool = False):
    """G[C + {a, b}] + ab for a component ``C`` of ``G - {a, b}``."""
    a, b = s.a, s.b
    C = tuple(sorted(set(C)))
    if C not in components(G, (a, b)):
        raise PreconditionError(f"{C} is not a component of G - {{{a}, {b}}}", "not-a-component")
    H, to_parent = induced(G, C + (a, b), return_mapping=True)
    index = {x: i for i, x in enumerate(to_parent)}
    H = H.with_edges([(index[a], index[b])])
    return (H, to_parent) if return_mapping else H


def block_containing(G: Graph, u: int, v: int):
    """The biconnected block of ``G`` holding both ``u`` and ``v`` as ``(block, to_parent)``, or None."""
    indptr, indices = G.csr()
    status, mask = _kernels.anchored_block(indptr, indices, G.n, -1, u, v)
    if status != 0:
        return None
    return induced(G, np.flatnonzero(mask).tolist(), return_mapping=True)


def _three_block_checks(G: Graph, u: int, v: int):
    G.check_vertex(u)
    G.check_vertex(v)
    if u == v or G.has_edge(u, v):
        raise PreconditionError("3-block needs a non-adjacent pair of distinct vertices", "adjacent-pair")
    _require_biconnected(G)
    if kappa_pair(G, u, v) < 3:
        raise PreconditionError(f"kappa({u}, {v}) < 3", "kappa-at-most-two")
    if len(components(G, (u, v))) > 1:
        return SeparatingPairOutcome(u, v)
    return None


def three_block(G: Graph, u: int, v: int, method: str = "fast"):
    """The 3-block of the pair ``{u, v}``, or :class:`SeparatingPairOutcome`.

    ``method="fast"`` takes the vertices that no 2-separator cuts off from
    ``u`` and ``v`` (one DFS per deleted vertex) and
    returns the augmented graph induced on them.  ``method="cleave"`` applies
    cleaving operations one at a time, always along the lexicographically
    smallest usable separator; it is slow and kept as a reference.
    """
    outcome = _three_block_checks(G, u, v)
    if outcome is not None:
        return outcome
    if method == "cleave":
        return _three_block_cleave(G, u, v)
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    return _three_block_fast(G, u, v)


def _three_block_fast(G: Graph, u: int, v: int) -> ThreeBlock:
    # preconditions: G 2-connected, uv not an edge, kappa >= 3, (u, v) not separating
    indptr, indices = G.csr()
    status, keep, pairs = _kernels.three_block_scan(indptr, indices, G.n, u, v)
    if status != 0:
        raise AssertionError(f"unexpected block structure while removing {-status - 1}")
    verts = [int(x) for x in np.flatnonzero(keep)]
    H, to_parent = induced(G, verts, return_mapping=True)
    index = {x: i for i, x in enumerate(to_parent)}
    virtual = {(int(a), int(b)) for a, b in pairs
               if keep[a] and keep[b] and not G.has_edge(int(a), int(b))}
    added = tuple(sorted(_norm(index[a], index[b]) for a, b in virtual))
    return ThreeBlock(H.with_edges(added), tuple(to_parent), added)


def _three_block_cleave(G: Graph, u: int, v: int) -> ThreeBlock:
    H = G
    to_parent = list(range(G.n))
    added: set[Edge] = set()
    while True:
        pu, pv = to_parent.index(u), to_parent.index(v)
        chosen = None
        if H.n >= 4:
            for s in two_separators(H):
                if {s.a, s.b} != {pu, pv}:
                    chosen = s
                    break
        if chosen is None:
            break
        anchor = pu if pu not in (chosen.a, chosen.b) else pv
        C = next(c for c in components(H, (chosen.a, chosen.b)) if anchor in c)
        had_edge = H.has_edge(chosen.a, chosen.b)
        H2, sub = cleave(H, chosen, C, return_mapping=True)
        old_added = {_norm(to_parent[a], to_parent[b]) for a, b in added}
        if not had_edge:
            old_added.add(_norm(to_parent[chosen.a], to_parent[chosen.b]))
        to_parent = [to_parent[x] for x in sub]
        index = {x: i for i, x in enumerate(to_parent)}
        added = {_norm(index[a], index[b]) for a, b in old_added if a in index and b in index}
        H = H2
    return ThreeBlock(H, tuple(to_parent), tuple(sorted(added)))
