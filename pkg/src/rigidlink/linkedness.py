"""Global rigidity and weak global linkedness in the plane.

``classify_pair`` decides, for a non-adjacent pair ``{u, v}``, whether some
generic planar realization fixes the distance between ``u`` and ``v``:

1. ``u`` and ``v`` must share a biconnected block with ``kappa >= 3``;
2. the pair must be linked in the rigidity matroid;
3. a linked separating pair of the block is always weakly globally linked;
4. otherwise take the 3-block ``B`` of the pair and the vertex set ``V0`` of
   an R2-circuit of ``B + uv`` through ``uv``; the pair is weakly globally
   linked iff ``Clique(B, V0)`` is globally rigid.
"""

from __future__ import annotations

import enum
import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import connectivity, sparsity
from .errors import PreconditionError
from .graph import Edge, Graph, _norm, clique_graph, components, induced


class Verdict(str, enum.Enum):
    ADJACENT = "Adjacent"
    GLOBALLY_LOOSE = "GloballyLoose"
    WEAKLY_GLOBALLY_LINKED = "WeaklyGloballyLinked"


class Reason(str, enum.Enum):
    ADJACENT_EDGE = "AdjacentEdge"
    NOT_LINKED = "NotLinked"
    KAPPA_AT_MOST_TWO = "KappaAtMostTwo"
    SEPARATING_PAIR = "SeparatingPair"
    CLIQUE_GLOBALLY_RIGID = "CliqueOfThreeBlockGloballyRigid"
    CLIQUE_NOT_GLOBALLY_RIGID = "CliqueOfThreeBlockNotGloballyRigid"


_LINKED_REASONS = {Reason.SEPARATING_PAIR, Reason.CLIQUE_GLOBALLY_RIGID}
_LOOSE_REASONS = {Reason.NOT_LINKED, Reason.KAPPA_AT_MOST_TWO, Reason.CLIQUE_NOT_GLOBALLY_RIGID}


@dataclass(frozen=True)
class GlobalRigidityVerdict:
    """``failure`` is one of NotThreeConnected, NotRigid, NotRedundantlyRigid, TooSmallNotComplete."""

    globally_rigid: bool
    failure: str | None = None
    detail: tuple | None = None

    def __bool__(self):
        return self.globally_rigid

    def as_dict(self):
        out = {"globally_rigid": self.globally_rigid}
        if self.failure is not None:
            out["failure"] = self.failure
            if self.failure == "NotThreeConnected":
                out["cut"] = list(self.detail)
            elif self.failure == "NotRedundantlyRigid":
                out["bridge"] = list(self.detail)
        return out


@dataclass(frozen=True)
class PairClassification:
    u: int
    v: int
    verdict: Verdict
    reason: Reason
    certificate: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.verdict is Verdict.WEAKLY_GLOBALLY_LINKED:
            assert self.reason in _LINKED_REASONS
        elif self.verdict is Verdict.GLOBALLY_LOOSE:
            assert self.reason in _LOOSE_REASONS

    @property
    def weakly_globally_linked(self) -> bool:
        return self.verdict is Verdict.WEAKLY_GLOBALLY_LINKED

    def as_dict(self, certificate=True):
        out = {"u": self.u, "v": self.v, "verdict": self.verdict.value, "reason": self.reason.value}
        if certificate and self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def is_globally_rigid2(G: Graph) -> GlobalRigidityVerdict:
    """Global rigidity in the plane: 3-connected and redundantly rigid, or complete on <= 3 vertices."""
    cached = G.cache.get("global")
    if cached is not None:
        return cached
    if G.n <= 3:
        res = GlobalRigidityVerdict(True) if G.is_complete() else GlobalRigidityVerdict(False, "TooSmallNotComplete")
    else:
        cut = connectivity.small_vertex_cut(G, 3)
        if cut is not None:
            res = GlobalRigidityVerdict(False, "NotThreeConnected", cut)
        elif not sparsity.is_rigid2(G):
            res = GlobalRigidityVerdict(False, "NotRigid")
        else:
            bridges = sparsity.r2_bridges(G)
            res = GlobalRigidityVerdict(False, "NotRedundantlyRigid", bridges[0]) if bridges else GlobalRigidityVerdict(True)
    G.cache["global"] = res
    return res


# ---------------------------------------------------------------------------
# pair classification


class _Context:
    """Shares blocks between queries on one graph so their pebble games run once."""

    def __init__(self, G: Graph):
        self.G = G
        self.blocks: dict[tuple[int, ...], Graph] = {}
        self.three_blocks: dict[tuple, Graph] = {}

    def block(self, u, v):
        found = connectivity.block_containing(self.G, u, v)
        if found is None:
            return None
        H, to_parent = found
        key = tuple(to_parent)
        return self.blocks.setdefault(key, H), to_parent

    def three_block_graph(self, H: Graph, tb: connectivity.ThreeBlock) -> Graph:
        if len(tb.to_parent) == H.n and not tb.added_edges:
            # the block is its own 3-block; keep its pebble game
            return H
        key = (id(H), tb.to_parent, tb.added_edges)
        return self.three_blocks.setdefault(key, tb.block)


def _loose(u, v, reason, cert):
    return PairClassification(u, v, Verdict.GLOBALLY_LOOSE, reason, cert)


def _linked(u, v, reason, cert):
    return PairClassification(u, v, Verdict.WEAKLY_GLOBALLY_LINKED, reason, cert)


def classify_pair(G: Graph, u: int, v: int, certificate: bool = True, _ctx: _Context | None = None) -> PairClassification:
    G.check_vertex(u)
    G.check_vertex(v)
    if u == v:
        raise PreconditionError("u and v must be distinct", "same-vertex")
    if G.has_edge(u, v):
        return PairClassification(u, v, Verdict.ADJACENT, Reason.ADJACENT_EDGE)
    ctx = _ctx or _Context(G)
    cert = {} if certificate else None

    found = ctx.block(u, v)
    if found is None:
        if cert is not None:
            cert["kappa"] = connectivity.kappa_pair(G, u, v)
        return _loose(u, v, Reason.KAPPA_AT_MOST_TWO, cert)
    H, to_parent = found
    index = {x: i for i, x in enumerate(to_parent)}
    hu, hv = index[u], index[v]
    if cert is not None:
        cert["block"] = list(to_parent)

    kappa = connectivity.kappa_pair(H, hu, hv)
    if cert is not None:
        cert["kappa"] = kappa
    if kappa <= 2:
        return _loose(u, v, Reason.KAPPA_AT_MOST_TWO, cert)
    if not sparsity.is_linked2(H, hu, hv):
        return _loose(u, v, Reason.NOT_LINKED, cert)
    if len(components(H, (hu, hv))) > 1:
        return _linked(u, v, Reason.SEPARATING_PAIR, cert)

    tb = connectivity._three_block_fast(H, hu, hv)
    B = ctx.three_block_graph(H, tb)
    bindex = {x: i for i, x in enumerate(tb.to_parent)}
    bu, bv = bindex[hu], bindex[hv]
    circuit = sparsity.fundamental_circuit(B, bu, bv)
    clique, clique_to_b = clique_graph(B, circuit.vertices, return_mapping=True)
    sub = is_globally_rigid2(clique)
    if cert is not None:
        # everything reported in ids of the input graph
        b_to_g = [to_parent[x] for x in tb.to_parent]
        c_to_g = [b_to_g[x] for x in clique_to_b]
        cert["three_block"] = {
            "vertices": b_to_g,
            "virtual_edges": sorted(_norm(b_to_g[a], b_to_g[b]) for a, b in tb.added_edges),
        }
        cert["circuit"] = {
            "vertices": sorted(b_to_g[x] for x in circuit.vertices),
            "edges": sorted(_norm(b_to_g[a], b_to_g[b]) for a, b in circuit.base_edges),
        }
        cert["clique"] = {
            "vertices": c_to_g,
            "edges": sorted(_norm(c_to_g[a], c_to_g[b]) for a, b in clique.edge_list()),
            "verdict": sub.as_dict(),
        }
    if sub.globally_rigid:
        return _linked(u, v, Reason.CLIQUE_GLOBALLY_RIGID, cert)
    return _loose(u, v, Reason.CLIQUE_NOT_GLOBALLY_RIGID, cert)


def non_adjacent_pairs(G: Graph) -> list[Edge]:
    return [(a, b) for a, b in itertools.combinations(range(G.n), 2) if not G.has_edge(a, b)]


def classify_all_pairs(G: Graph, certificate: bool = False, threads: int = 1) -> list[PairClassification]:
    """Classifications of every non-adjacent pair, in sorted pair order."""
    ctx = _Context(G)
    pairs = non_adjacent_pairs(G)
    if threads <= 1:
        return [classify_pair(G, a, b, certificate, ctx) for a, b in pairs]
    with ThreadPoolExecutor(threads) as pool:
        return list(pool.map(lambda p: classify_pair(G, p[0], p[1], certificate, ctx), pairs))


def weakly_linked_pairs(G: Graph, threads: int = 1) -> list[Edge]:
    """J2(G): the non-adjacent weakly globally linked pairs."""
    return [(c.u, c.v) for c in classify_all_pairs(G, threads=threads) if c.weakly_globally_linked]


# ---------------------------------------------------------------------------
# sufficient condition and audits


def sufficient_condition_wgl(G: Graph, u: int, v: int, X) -> bool:
    """Whether Clique(G, X) is globally rigid, for a 3-connected ``G`` and (u, v)-rigid ``G[X]``.

    A true answer certifies that ``{u, v}`` is weakly globally linked; false says nothing.
    """
    X = sorted(set(X))
    if u not in X or v not in X:
        raise PreconditionError("u and v must belong to X", "not-uv-rigid")
    if not connectivity.is_k_connected(G, 3):
        raise PreconditionError("graph must be 3-connected", "not-3-connected")
    if not sparsity.is_rigid2(induced(G, X)):
        raise PreconditionError("G[X] is not rigid", "not-uv-rigid")
    return is_globally_rigid2(clique_graph(G, X)).globally_rigid


@dataclass
class MinimalGlobalRigidityAudit:
    globally_rigid: bool
    minimally_globally_rigid: bool
    edge_count: int
    edge_bound: int
    subsets_checked: int = 0
    exhaustive: bool = False
    sum_formula_ok: bool = True
    violations: list = field(default_factory=list)

    @property
    def applicable(self) -> bool:
        return self.minimally_globally_rigid

    @property
    def passed(self) -> bool:
        return self.applicable and not self.violations and self.sum_formula_ok

    def as_dict(self):
        return {
            "applicable": self.applicable,
            "globally_rigid": self.globally_rigid,
            "minimally_globally_rigid": self.minimally_globally_rigid,
            "edge_count": self.edge_count,
            "edge_bound": self.edge_bound,
            "subsets_checked": self.subsets_checked,
            "exhaustive": self.exhaustive,
            "sum_formula_ok": self.sum_formula_ok,
            "violations": self.violations,
        }


def is_minimally_globally_rigid2(G: Graph) -> bool:
    if not is_globally_rigid2(G):
        return False
    return all(not is_globally_rigid2(G.without_edges([e])) for e in G.edge_list())


def _rigid_part_bound(h: int) -> int:
    return 3 * h - 6 if h >= 3 else 1


def audit_subset(G: Graph, U) -> tuple[list[dict], bool]:
    """Check ``|E(U)| <= 3|U| - 6`` and its proof ingredients on one vertex set.

    Returns the violations and whether the maximal rigid subgraphs of
    ``G[U]`` satisfy ``sum(2|Vi| - 3) == r2(G[U])``.
    """
    U = sorted(U)
    H, to_parent = induced(G, U, return_mapping=True)
    violations = []
    if H.m > 3 * len(U) - 6:
        violations.append({"subset": U, "edges": H.m, "bound": 3 * len(U) - 6})
    support = [x for x in range(H.n) if H.adj[x]]
    if not support:
        return violations, True
    S, s_to_h = induced(H, support, return_mapping=True)
    parts = sparsity.maximal_rigid_subgraphs(S)
    formula_ok = sum(2 * len(p) - 3 for p in parts) == sparsity.rank2(S)
    for p in parts:
        edges = induced(S, p).m
        if edges > _rigid_part_bound(len(p)):
            verts = sorted(to_parent[s_to_h[x]] for x in p)
            violations.append({"subset": verts, "edges": edges, "bound": _rigid_part_bound(len(p)), "rigid": True})
    return violations, formula_ok


def audit_minimally_globally_rigid(G: Graph, samples: int = 200, seed: int = 0,
                                   exhaustive_limit: int = 10) -> MinimalGlobalRigidityAudit:
    """Minimal global rigidity and the subgraph edge bound ``|E(U)| <= 3|U| - 6``.

    Subsets are enumerated exhaustively up to ``exhaustive_limit`` vertices,
    otherwise ``V`` plus ``samples`` random subsets are checked.
    """
    gr = is_globally_rigid2(G).globally_rigid
    mgr = gr and is_minimally_globally_rigid2(G)
    audit = MinimalGlobalRigidityAudit(gr, mgr, G.m, 3 * G.n - 6)
    if not mgr or G.n < 3:
        return audit
    if G.n <= exhaustive_limit:
        subsets = (U for k in range(3, G.n + 1) for U in itertools.combinations(range(G.n), k))
        audit.exhaustive = True
    else:
        rng = random.Random(seed)
        subsets = [tuple(range(G.n))]
        subsets += [tuple(rng.sample(range(G.n), rng.randint(3, G.n))) for _ in range(samples)]
    for U in subsets:
        bad, ok = audit_subset(G, U)
        audit.subsets_checked += 1
        audit.violations.extend(bad)
        audit.sum_formula_ok &= ok
    return audit
