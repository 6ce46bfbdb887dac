"""Immutable simple graphs, file formats and structural constructions.

Vertices are the dense integers ``0..n-1``; optional string labels live in a
side map.  Every construction returns a new simple graph.  Constructions that
drop or merge vertices re-densify the ids and can hand back the id mapping
(``return_mapping=True``).
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import GraphError, ParseError

Edge = tuple[int, int]
VertexSet = tuple[int, ...]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """A simple undirected graph on vertices ``0..n-1``.

    Instances are treated as values: never mutate the attributes, use the
    construction helpers instead.
    """

    __slots__ = ("n", "edges", "adj", "labels", "_edge_list", "_csr", "_label_ids", "cache")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = (), labels: Mapping[int, str] | None = None):
        n = int(n)
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        es = set()
        for e in edges:
            u, v = (int(x) for x in e)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            es.add(_norm(u, v))
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in es:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges = frozenset(es)
        self.adj = tuple(tuple(sorted(a)) for a in nbrs)
        self.labels = None
        self._label_ids = None
        if labels:
            lab = {}
            for k, s in labels.items():
                k = int(k)
                if not 0 <= k < n:
                    raise GraphError(f"label for unknown vertex {k}")
                lab[k] = str(s)
            if len(set(lab.values())) != len(lab):
                raise GraphError("vertex labels must be unique")
            self.labels = dict(sorted(lab.items()))
        self._edge_list = None
        self._csr = None
        # derived results (pebble game state, matroid summary, ...) keyed by name
        self.cache = {}

    # basic queries

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_list(self) -> tuple[Edge, ...]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v`` (the canonical order)."""
        if self._edge_list is None:
            self._edge_list = tuple(sorted(self.edges))
        return self._edge_list

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency in CSR form ``(indptr, indices)`` as int64 arrays."""
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            indptr[1:] = np.cumsum([len(a) for a in self.adj])
            indices = np.fromiter((w for a in self.adj for w in a), dtype=np.int64, count=2 * self.m)
            self._csr = (indptr, indices)
        return self._csr

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        el = self.edge_list()
        a = np.array(el, dtype=np.int64).reshape(-1, 2)
        return a[:, 0].copy(), a[:, 1].copy()

    def label(self, v: int) -> str:
        if self.labels and v in self.labels:
            return self.labels[v]
        return str(v)

    def vertex(self, token: str | int) -> int:
        """Resolve a vertex given as an id or a label (labels win over ids)."""
        if isinstance(token, (int, np.integer)):
            v = int(token)
        else:
            if self.labels:
                if self._label_ids is None:
                    self._label_ids = {s: k for k, s in self.labels.items()}
                if token in self._label_ids:
                    return self._label_ids[token]
            try:
                v = int(token)
            except ValueError:
                raise GraphError(f"unknown vertex label {token!r}") from None
        self.check_vertex(v)
        return v

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, (int, np.integer)) and 0 <= v < self.n):
            raise GraphError(f"invalid vertex id {v!r} for n={self.n}")

    def check_invariants(self) -> None:
        """Raise AssertionError if the internal representation is inconsistent."""
        assert len(self.adj) == self.n
        seen = set()
        for u, a in enumerate(self.adj):
            assert list(a) == sorted(set(a)), "adjacency not sorted/unique"
            for w in a:
                assert w != u and 0 <= w < self.n
                assert u in self.adj[w], "adjacency not symmetric"
                seen.add(_norm(u, w))
        assert seen == set(self.edges)
        for u, v in self.edges:
            assert u < v

    # derived graphs

    def with_edges(self, extra: Iterable[Iterable[int]]) -> Graph:
        return Graph(self.n, list(self.edges) + [tuple(e) for e in extra], self.labels)

    def without_edges(self, drop: Iterable[Iterable[int]]) -> Graph:
        gone = {_norm(*e) for e in drop}
        return Graph(self.n, self.edges - gone, self.labels)

    def relabel(self, perm: list[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        labels = {perm[k]: s for k, s in self.labels.items()} if self.labels else None
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges), labels)

    def digest(self) -> str:
        return hashlib.sha256(serialize_graph(self, "json").encode()).hexdigest()

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges and (self.labels or None) == (other.labels or None)

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# small named graphs, mostly for tests and docs

def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def wheel_graph(rim: int) -> Graph:
    """Hub ``0`` joined to every vertex of the cycle ``1..rim``."""
    edges = [(0, i) for i in range(1, rim + 1)]
    edges += [(i, i % rim + 1) for i in range(1, rim + 1)]
    return Graph(rim + 1, edges)


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


# I/O

def parse_graph(text: str, format: str = "edge-list") -> Graph:
    """Parse a graph from ``text`` in ``"edge-list"`` or ``"json"`` format."""
    if format == "json":
        return _parse_json(text)
    if format != "edge-list":
        raise ValueError(f"unknown graph format {format!r}")
    header = None
    seen: dict[Edge, int] = {}
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", lineno) from None
        if len(nums) != 2:
            raise ParseError(f"expected two integers, got {len(nums)}", lineno)
        if header is None:
            n, m = nums
            if n < 0 or m < 0:
                raise ParseError("negative vertex or edge count", lineno)
            header = (n, m)
            continue
        u, v = nums
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range in edge ({u}, {v}) for n={n}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        e = _norm(u, v)
        if e in seen:
            raise ParseError(f"duplicate edge ({u}, {v}), first seen on line {seen[e]}", lineno)
        seen[e] = lineno
        edges.append(e)
    if header is None:
        raise ParseError("missing 'n m' header line")
    if len(edges) != header[1]:
        raise ParseError(f"header announces {header[1]} edges, found {len(edges)}")
    return Graph(header[0], edges)


def _parse_json(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise ParseError("JSON graph must be an object with 'n' and 'edges'")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError("'n' must be a non-negative integer")
    seen = set()
    edges = []
    for i, e in enumerate(doc["edges"]):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise ParseError(f"edge #{i} is not a pair of integers")
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge #{i} ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ParseError(f"edge #{i} is a self-loop at vertex {u}")
        if _norm(u, v) in seen:
            raise ParseError(f"edge #{i} ({u}, {v}) is a duplicate")
        seen.add(_norm(u, v))
        edges.append((u, v))
    labels = doc.get("labels")
    if isinstance(labels, list):
        if len(labels) != n:
            raise ParseError("label list length must equal n")
        labels = dict(enumerate(labels))
    elif isinstance(labels, dict):
        try:
            labels = {int(k): s for k, s in labels.items()}
        except ValueError:
            raise ParseError("label keys must be vertex ids") from None
    elif labels is not None:
        raise ParseError("'labels' must be a list or an object")
    try:
        return Graph(n, edges, labels)
    except GraphError as exc:
        raise ParseError(str(exc)) from None


def serialize_graph(G: Graph, format: str = "edge-list") -> str:
    """Canonical text form of ``G``; edge-list output drops labels."""
    if format == "json":
        doc = {"n": G.n, "edges": [list(e) for e in G.edge_list()]}
        if G.labels:
            doc["labels"] = {str(k): s for k, s in G.labels.items()}
        return json.dumps(doc, separators=(",", ":")) + "\n"
    if format != "edge-list":
        raise ValueError(f"unknown graph format {format!r}")
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edge_list()]
    return "\n".join(lines) + "\n"


def guess_format(path: str | Path) -> str:
    return "json" if str(path).endswith(".json") else "edge-list"


def read_graph(path: str | Path, format: str | None = None) -> Graph:
    return parse_graph(Path(path).read_text(), format or guess_format(path))


def write_graph(G: Graph, path: str | Path, format: str | None = None) -> None:
    Path(path).write_text(serialize_graph(G, format or guess_format(path)))


# structural helpers

def _vertex_set(G: Graph, S: Iterable[int], name="vertex set") -> VertexSet:
    out = tuple(sorted(set(int(v) for v in S)))
    for v in out:
        G.check_vertex(v)
    return out


def components(G: Graph, removed: Iterable[int] = ()) -> list[VertexSet]:
    """Vertex sets of the connected components of ``G - removed``, ordered by smallest member."""
    gone = set(removed)
    seen = [False] * G.n
    for v in gone:
        seen[v] = True
    comps = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for w in G.adj[x]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or len(components(G)) == 1


def neighbors_of_set(G: Graph, S: Iterable[int]) -> VertexSet:
    """N_G(S): vertices outside ``S`` adjacent to some member of ``S``."""
    S = set(_vertex_set(G, S))
    return tuple(sorted({w for x in S for w in G.adj[x]} - S))


def induced(G: Graph, X: Iterable[int], return_mapping: bool = False):
    """G[X] with ids re-densified in increasing order.

    With ``return_mapping`` also returns ``to_parent``: new id -> id in ``G``.
    """
    X = _vertex_set(G, X)
    index = {v: i for i, v in enumerate(X)}
    edges = [(index[u], index[v]) for u, v in G.edges if u in index and v in index]
    labels = {index[k]: s for k, s in G.labels.items() if k in index} if G.labels else None
    H = Graph(len(X), edges, labels)
    return (H, list(X)) if return_mapping else H


def _merge(G: Graph, groups: list[VertexSet], extra: Iterable[Edge] = ()):
    """Identify each group into its smallest member, then re-densify.

    Returns the simplified graph and the old -> new id mapping.
    """
    rep = list(range(G.n))
    for grp in groups:
        r = min(grp)
        for v in grp:
            rep[v] = r
    keep = sorted(set(rep))
    new_id = {v: i for i, v in enumerate(keep)}
    mapping = [new_id[rep[v]] for v in range(G.n)]
    edges = set()
    for u, v in list(G.edges) + list(extra):
        a, b = mapping[u], mapping[v]
        if a != b:
            edges.add(_norm(a, b))
    labels = {new_id[k]: s for k, s in G.labels.items() if k in new_id} if G.labels else None
    return Graph(len(keep), edges, labels), mapping


def contract_set(G: Graph, S: Iterable[int], return_mapping: bool = False):
    """G/S: identify the vertices of ``S``, dropping loops and parallel edges.

    The merged vertex takes the smallest id of ``S`` before re-densifying.
    With ``return_mapping`` also returns the old -> new id list.
    """
    S = _vertex_set(G, S)
    if not S:
        raise GraphError("cannot contract an empty vertex set")
    H, mapping = _merge(G, [S])
    return (H, mapping) if return_mapping else H


def contract_edge(G: Graph, e: Iterable[int], return_mapping: bool = False):
    u, v = e
    if not G.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    return contract_set(G, (u, v), return_mapping)


def clique_graph(G: Graph, X: Iterable[int], return_mapping: bool = False):
    """Clique(G, X).

    Every component of ``G - X`` is deleted and its neighbourhood (a subset
    of ``X``) is completed to a clique.  Vertices are ``X`` in increasing
    order; ``return_mapping`` adds the new -> old id list.
    """
    X = _vertex_set(G, X)
    if not X:
        raise GraphError("Clique(G, X) needs a non-empty X")
    extra = set()
    for comp in components(G, X):
        nb = neighbors_of_set(G, comp)
        extra.update(combinations(nb, 2))
    H, to_parent = induced(G, X, return_mapping=True)
    index = {v: i for i, v in enumerate(to_parent)}
    H = H.with_edges((index[a], index[b]) for a, b in extra) if extra else H
    return (H, to_parent) if return_mapping else H


def con_graph(G: Graph, X: Iterable[int], return_mapping: bool = False):
    """Con(G, X): contract every component of ``G - X`` to a single vertex.

    With ``return_mapping`` also returns the old -> new id list.
    """
    X = _vertex_set(G, X)
    if not X:
        raise GraphError("Con(G, X) needs a non-empty X")
    H, mapping = _merge(G, components(G, X))
    return (H, mapping) if return_mapping else H


def clique_sum(G1: Graph, G2: Graph, identification: Mapping[int, int]) -> Graph:
    """Glue ``G2`` onto ``G1`` along a t-clique.

    ``identification`` maps vertices of a clique in ``G1`` bijectively onto a
    clique of ``G2``.  ``G1`` keeps its ids; the remaining vertices of ``G2``
    follow in increasing order.  The result keeps all edges of both graphs.
    """
    ident = {int(a): int(b) for a, b in identification.items()}
    if not ident:
        raise GraphError("clique sum needs t >= 1 identified vertices")
    K1, K2 = list(ident), list(ident.values())
    if len(set(K2)) != len(K2):
        raise GraphError("identification is not injective")
    for v in K1:
        G1.check_vertex(v)
    for v in K2:
        G2.check_vertex(v)
    for K, H, name in ((K1, G1, "first"), (K2, G2, "second")):
        if any(not H.has_edge(a, b) for a, b in combinations(K, 2)):
            raise GraphError(f"identified vertices do not form a clique in the {name} graph")
    back = {b: a for a, b in ident.items()}
    rest = [v for v in range(G2.n) if v not in back]
    place = {v: G1.n + i for i, v in enumerate(rest)}
    place.update(back)
    edges = list(G1.edges) + [(place[u], place[v]) for u, v in G2.edges]
    return Graph(G1.n + len(rest), edges)
