"""Numeric cross-checks: generic rigidity-matrix rank and an equivalence sampler.

Nothing here uses the combinatorial machinery; the rank oracle is the
independent reference for the pebble game, in any dimension.

Genericity is approximated.  ``generic_rank`` draws coordinates uniformly
from GF(p) with ``p = 2**61 - 1``; a single repetition under-reports the
generic rank with probability at most ``|E| * d|V| / p`` (Schwartz-Zippel on a
maximal non-vanishing minor), and the report keeps the maximum over all
repetitions.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from . import _kernels
from .errors import PreconditionError
from .graph import Graph

MODULUS = _kernels.MERSENNE61
DEFAULT_SEED = 20240611
SEED_ENV = "RIGIDLINK_SEED"

RESIDUAL_TOL = 1e-10
GAP_TOL = 1e-4


def default_seed() -> int:
    """Oracle seed, overridable through the ``RIGIDLINK_SEED`` environment variable."""
    env = os.environ.get(SEED_ENV)
    return int(env) if env not in (None, "") else DEFAULT_SEED


@dataclass(frozen=True)
class Realization:
    """Coordinates of a framework: row ``v`` of ``coords`` is the position of vertex ``v``."""

    coords: np.ndarray

    @property
    def d(self) -> int:
        return self.coords.shape[1]

    @classmethod
    def from_mapping(cls, mapping, d):
        n = max(mapping) + 1 if mapping else 0
        coords = np.zeros((n, d))
        for v, x in mapping.items():
            if len(x) != d:
                raise PreconditionError(f"vertex {v} has {len(x)} coordinates, expected {d}")
            coords[v] = x
        return cls(coords)


@dataclass(frozen=True)
class RankOracleReport:
    rank: int
    modulus: int
    seed: int
    repetitions: int
    d: int

    def as_dict(self):
        return {"rank": self.rank, "modulus": self.modulus, "seed": self.seed,
                "repetitions": self.repetitions, "d": self.d}


def rigidity_matrix(G: Graph, p) -> np.ndarray:
    """R(G, p): one row per edge in canonical order, ``d`` columns per vertex."""
    coords = p.coords if isinstance(p, Realization) else np.asarray(p)
    if coords.ndim != 2 or coords.shape[0] < G.n:
        raise PreconditionError(f"realization covers {coords.shape[0] if coords.ndim else 0} of {G.n} vertices")
    d = coords.shape[1]
    R = np.zeros((G.m, d * G.n), dtype=coords.dtype)
    for row, (u, v) in enumerate(G.edge_list()):
        diff = coords[u] - coords[v]
        R[row, d * u:d * u + d] = diff
        R[row, d * v:d * v + d] = -diff
    return R


def _field_matrix(G: Graph, coords: np.ndarray) -> np.ndarray:
    d = coords.shape[1]
    P = np.uint64(MODULUS)
    R = np.zeros((G.m, d * G.n), dtype=np.uint64)
    if G.m == 0:
        return R
    eu, ev = G.edge_arrays()
    diff = (coords[eu] + P - coords[ev]) % P
    neg = (P - diff) % P
    rows = np.arange(G.m)
    for k in range(d):
        R[rows, d * eu + k] = diff[:, k]
        R[rows, d * ev + k] = neg[:, k]
    return R


def generic_rank(G: Graph, d: int = 2, seed: int | None = None, repetitions: int = 2,
                 exact: bool = True) -> RankOracleReport:
    """Generic rank of the ``d``-dimensional rigidity matrix of ``G``.

    ``exact=False`` swaps the finite field for float coordinates and an SVD
    rank; it is kept for debugging only.
    """
    if d < 1:
        raise PreconditionError(f"dimension must be >= 1, got {d}")
    if repetitions < 2:
        raise PreconditionError("the rank oracle needs at least two repetitions")
    seed = default_seed() if seed is None else int(seed)
    best = 0
    for rep in range(repetitions):
        rng = np.random.default_rng([seed, rep])
        if G.m == 0:
            break
        if exact:
            coords = rng.integers(0, MODULUS, size=(G.n, d), dtype=np.uint64)
            r = _kernels.rank_mod61(_field_matrix(G, coords))
        else:
            r = int(np.linalg.matrix_rank(rigidity_matrix(G, rng.uniform(-1, 1, (G.n, d)))))
        best = max(best, int(r))
    return RankOracleReport(best, MODULUS if exact else 0, seed, repetitions, d)


# ---------------------------------------------------------------------------
# equivalence sampler


@dataclass(frozen=True)
class LoosenessWitness:
    """Two equivalent frameworks in which the pair ``(u, v)`` has different lengths."""

    p: np.ndarray
    q: np.ndarray
    residual: float
    gap: float
    trial: int

    def as_dict(self):
        return {"p": self.p.tolist(), "q": self.q.tolist(), "residual": self.residual,
                "gap": self.gap, "trial": self.trial}


def edge_residual(G: Graph, p: np.ndarray, q: np.ndarray) -> float:
    """Largest relative mismatch of squared edge lengths between ``p`` and ``q``."""
    if G.m == 0:
        return 0.0
    eu, ev = G.edge_arrays()
    lp = np.sum((p[eu] - p[ev]) ** 2, axis=1)
    lq = np.sum((q[eu] - q[ev]) ** 2, axis=1)
    return float(np.max(np.abs(lq - lp) / lp))


def distance_gap(p: np.ndarray, q: np.ndarray, u: int, v: int) -> float:
    return float(abs(np.linalg.norm(q[u] - q[v]) - np.linalg.norm(p[u] - p[v])))


def verify_witness(G: Graph, u: int, v: int, w: LoosenessWitness) -> bool:
    return edge_residual(G, w.p, w.q) <= RESIDUAL_TOL and distance_gap(w.p, w.q, u, v) >= GAP_TOL


def equivalence_sampler(G: Graph, u: int, v: int, d: int = 2, trials: int = 100,
                        seed: int | None = None) -> LoosenessWitness | None:
    """Look for an equivalent framework that changes the distance of ``u`` and ``v``.

    A random framework ``p`` is fixed; each trial solves the squared edge-length
    equations by Levenberg-Marquardt from a fresh random start.  The first
    solution (in trial order) whose ``u``-``v`` distance differs by at least
    ``GAP_TOL`` is returned.  ``None`` proves nothing.
    """
    if d not in (1, 2, 3):
        raise PreconditionError(f"sampler supports d in {{1, 2, 3}}, got {d}")
    if G.n > 12:
        raise PreconditionError(f"sampler is limited to 12 vertices, got {G.n}")
    G.check_vertex(u)
    G.check_vertex(v)
    seed = default_seed() if seed is None else int(seed)
    n = G.n
    p = np.random.default_rng([seed, 0xF00D]).uniform(-1.0, 1.0, (n, d))
    if G.m == 0:
        eu = ev = np.zeros(0, dtype=np.int64)
    else:
        eu, ev = G.edge_arrays()
    target = np.sum((p[eu] - p[ev]) ** 2, axis=1)
    nvar = n * d
    pad = max(0, nvar - G.m)  # MINPACK's LM wants at least as many residuals as unknowns
    rows = np.arange(G.m)

    def fun(x):
        q = x.reshape(n, d)
        r = np.sum((q[eu] - q[ev]) ** 2, axis=1) - target
        return np.concatenate([r, np.zeros(pad)])

    def jac(x):
        q = x.reshape(n, d)
        J = np.zeros((G.m + pad, nvar))
        diff = 2.0 * (q[eu] - q[ev])
        for k in range(d):
            J[rows, d * eu + k] = diff[:, k]
            J[rows, d * ev + k] = -diff[:, k]
        return J

    for trial in range(trials):
        x0 = np.random.default_rng([seed, trial]).uniform(-1.0, 1.0, nvar)
        sol = least_squares(fun, x0, jac=jac, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15,
                            max_nfev=200 * (nvar + 1))
        q = sol.x.reshape(n, d)
        res = edge_residual(G, p, q)
        gap = distance_gap(p, q, u, v)
        if res <= RESIDUAL_TOL and gap >= GAP_TOL:
            return LoosenessWitness(p, q, res, gap, trial)
    return None
