"""Compiled inner loops.

Graphs arrive as CSR arrays ``(indptr, indices)``.  A vertex id of -1 means
"none" everywhere in this module.
"""

import numpy as np
from numba import njit

# ---------------------------------------------------------------------------
# depth-first search with lowpoints


@njit(cache=True)
def dfs_lowpoint(indptr, indices, n, skip, root, disc, low, parent, order):
    """Iterative DFS from ``root`` in ``G - skip``; returns the number of visited vertices.

    Fills ``disc`` (-1 for unvisited), ``low``, ``parent`` and the preorder ``order``.
    """
    for i in range(n):
        disc[i] = -1
    it = np.empty(n, np.int64)
    stack = np.empty(n, np.int64)
    disc[root] = 0
    low[root] = 0
    parent[root] = -1
    order[0] = root
    it[root] = indptr[root]
    t = 1
    stack[0] = root
    sp = 1
    while sp > 0:
        v = stack[sp - 1]
        if it[v] < indptr[v + 1]:
            w = indices[it[v]]
            it[v] += 1
            if w == skip or w == parent[v]:
                continue
            if disc[w] == -1:
                disc[w] = t
                low[w] = t
                parent[w] = v
                order[t] = w
                t += 1
                it[w] = indptr[w]
                stack[sp] = w
                sp += 1
            elif disc[w] < low[v]:
                low[v] = disc[w]
        else:
            sp -= 1
            p = parent[v]
            if p >= 0 and low[v] < low[p]:
                low[p] = low[v]
    return t


@njit(cache=True)
def articulation_points(indptr, indices, n, skip):
    """Articulation points of ``G - skip`` (``skip`` may be -1).

    Returns ``(connected, flags)``; ``flags`` is only meaningful when connected.
    """
    flags = np.zeros(n, np.bool_)
    live = n - 1 if skip >= 0 else n
    if live <= 0:
        return True, flags
    root = 0 if skip != 0 else 1
    disc = np.empty(n, np.int64)
    low = np.empty(n, np.int64)
    parent = np.empty(n, np.int64)
    order = np.empty(n, np.int64)
    t = dfs_lowpoint(indptr, indices, n, skip, root, disc, low, parent, order)
    if t < live:
        return False, flags
    children = 0
    for i in range(1, t):
        w = order[i]
        p = parent[w]
        if p == root:
            children += 1
        elif low[w] >= disc[p]:
            flags[p] = True
    if children > 1:
        flags[root] = True
    return True, flags


@njit(cache=True)
def first_small_cut(indptr, indices, n):
    """Search for a vertex cut of size <= 2.

    Returns ``(a, b)``: ``(-1, -1)`` if none exists, ``(a, -1)`` when ``G - a`` is
    disconnected, otherwise a separating pair.  Requires ``n >= 4``.
    """
    for a in range(n):
        ok, flags = articulation_points(indptr, indices, n, a)
        if not ok:
            return a, -1
        for b in range(n):
            if flags[b]:
                return a, b
    return -1, -1


@njit(cache=True)
def anchored_block(indptr, indices, n, skip, r, s):
    """Vertex mask of the block (biconnected component) of ``G - skip`` holding ``r`` and ``s``.

    With ``s == -1`` the block containing ``r`` is returned, which must be
    unique.  Status codes: 0 ok, 1 ``s`` unreachable, 2 no common block
    (``s`` lies behind an articulation point), 3 ``r`` lies in several blocks,
    4 ``r`` is isolated.
    """
    mask = np.zeros(n, np.bool_)
    disc = np.empty(n, np.int64)
    low = np.empty(n, np.int64)
    parent = np.empty(n, np.int64)
    order = np.empty(n, np.int64)
    t = dfs_lowpoint(indptr, indices, n, skip, r, disc, low, parent, order)
    c = -1
    if s >= 0:
        if disc[s] == -1:
            return 1, mask
        c = s
        while parent[c] != r:
            c = parent[c]
    else:
        for i in range(1, t):
            w = order[i]
            if parent[w] == r:
                if c >= 0:
                    return 3, mask
                c = w
        if c < 0:
            mask[r] = True
            return 4, mask
    mask[r] = True
    mask[c] = True
    for i in range(1, t):
        w = order[i]
        p = parent[w]
        if p != r and mask[p] and low[w] < disc[p]:
            mask[w] = True
    if s >= 0 and not mask[s]:
        return 2, mask
    return 0, mask


@njit(cache=True)
def three_block_scan(indptr, indices, n, u, v):
    """One DFS per deleted vertex ``a``: intersect the blocks of ``G - a`` that hold the pair.

    Returns ``(status, keep, pairs)``: ``keep`` marks the vertices no
    2-separator cuts off from ``{u, v}``; ``pairs`` lists every 2-separator
    ``(a, b)``, ``a < b``.  A non-zero status reports the offending ``a``
    as ``-(a + 1)``.
    """
    keep = np.ones(n, np.bool_)
    pairs = np.empty((16, 2), np.int64)
    count = 0
    disc = np.empty(n, np.int64)
    low = np.empty(n, np.int64)
    parent = np.empty(n, np.int64)
    order = np.empty(n, np.int64)
    mask = np.zeros(n, np.bool_)
    for a in range(n):
        if a == u:
            r, s = v, -1
        elif a == v:
            r, s = u, -1
        else:
            r, s = u, v
        t = dfs_lowpoint(indptr, indices, n, a, r, disc, low, parent, order)
        if t < n - 1:
            return -(a + 1), keep, pairs[:count]
        c = -1
        if s >= 0:
            c = s
            while parent[c] != r:
                c = parent[c]
        children = 0
        for i in range(1, t):
            w = order[i]
            if parent[w] == r:
                children += 1
                if s < 0:
                    c = w
        if s < 0 and children != 1:
            return -(a + 1), keep, pairs[:count]
        for i in range(n):
            mask[i] = False
        mask[r] = True
        mask[c] = True
        for i in range(1, t):
            w = order[i]
            p = parent[w]
            if p != r:
                if low[w] >= disc[p]:
                    if p > a:
                        if count == pairs.shape[0]:
                            grown = np.empty((2 * count, 2), np.int64)
                            grown[:count] = pairs
                            pairs = grown
                        pairs[count, 0] = a
                        pairs[count, 1] = p
                        count += 1
                elif mask[p]:
                    mask[w] = True
        if children > 1 and r > a:
            if count == pairs.shape[0]:
                grown = np.empty((2 * count, 2), np.int64)
                grown[:count] = pairs
                pairs = grown
            pairs[count, 0] = a
            pairs[count, 1] = r
            count += 1
        if s >= 0 and not mask[s]:
            return -(a + 1), keep, pairs[:count]
        for i in range(n):
            if i != a and not mask[i]:
                keep[i] = False
    return 0, keep, pairs[:count]


# ---------------------------------------------------------------------------
# (2,3) pebble game
#
# Every vertex keeps pebbles + out-degree == 2, so the orientation fits in an
# (n, 2) array of heads ``out`` with matching edge ids ``oeid``.


@njit(cache=True)
def _search(out, peb, root, x, y, seen, stamp, parent, stack):
    """DFS along out-edges from ``root`` for a free pebble off ``{x, y}``."""
    seen[root] = stamp
    parent[root] = -1
    stack[0] = root
    sp = 1
    while sp > 0:
        sp -= 1
        v = stack[sp]
        for k in range(2):
            w = out[v, k]
            if w < 0 or seen[w] == stamp:
                continue
            seen[w] = stamp
            parent[w] = v
            if peb[w] > 0 and w != x and w != y:
                return w
            stack[sp] = w
            sp += 1
    return -1


@njit(cache=True)
def _reverse_path(out, oeid, peb, root, w, parent):
    cur = w
    while cur != root:
        p = parent[cur]
        k = 0 if out[p, 0] == cur else 1
        eid = oeid[p, k]
        out[p, k] = -1
        oeid[p, k] = -1
        j = 0 if out[cur, 0] < 0 else 1
        out[cur, j] = p
        oeid[cur, j] = eid
        cur = p
    peb[w] -= 1
    peb[root] += 1


@njit(cache=True)
def _gather(out, oeid, peb, x, y, want_x, want_y, seen, stamp, parent, stack):
    """Move pebbles onto ``x`` and ``y`` until the targets are met or no path remains."""
    progress = True
    while progress:
        progress = False
        for root, want in ((x, want_x), (y, want_y)):
            if peb[root] < want:
                stamp += 1
                w = _search(out, peb, root, x, y, seen, stamp, parent, stack)
                if w >= 0:
                    _reverse_path(out, oeid, peb, root, w, parent)
                    progress = True
    return stamp


@njit(cache=True)
def _reach(out, sources, n, mask, stack):
    sp = 0
    for s in sources:
        if not mask[s]:
            mask[s] = True
            stack[sp] = s
            sp += 1
    while sp > 0:
        sp -= 1
        v = stack[sp]
        for k in range(2):
            w = out[v, k]
            if w >= 0 and not mask[w]:
                mask[w] = True
                stack[sp] = w
                sp += 1


@njit(cache=True)
def _find(uf, i):
    while uf[i] != i:
        uf[i] = uf[uf[i]]
        i = uf[i]
    return i


@njit(cache=True)
def pebble_game(n, eu, ev, components):
    """Run the (2,3) pebble game over the edges in the given order.

    Returns ``(accepted, out, oeid, peb, comp)``.  When ``components`` is set,
    ``comp[e]`` labels the rigidity-matroid component of edge ``e`` (the union
    of fundamental circuits of rejected edges); otherwise ``comp`` is the
    identity labelling.
    """
    m = eu.shape[0]
    out = np.full((n, 2), -1, np.int64)
    oeid = np.full((n, 2), -1, np.int64)
    peb = np.full(n, 2, np.int64)
    accepted = np.zeros(m, np.bool_)
    uf = np.arange(m)
    seen = np.zeros(n, np.int64)
    parent = np.empty(n, np.int64)
    stack = np.empty(n, np.int64)
    mask = np.zeros(n, np.bool_)
    src = np.empty(2, np.int64)
    stamp = 0
    for e in range(m):
        x = eu[e]
        y = ev[e]
        stamp = _gather(out, oeid, peb, x, y, 2, 2, seen, stamp, parent, stack)
        if peb[x] + peb[y] == 4:
            peb[x] -= 1
            j = 0 if out[x, 0] < 0 else 1
            out[x, j] = y
            oeid[x, j] = e
            accepted[e] = True
        elif components:
            src[0] = x
            src[1] = y
            _reach(out, src, n, mask, stack)
            root = _find(uf, e)
            for v in range(n):
                if mask[v]:
                    mask[v] = False
                    for k in range(2):
                        f = oeid[v, k]
                        if f >= 0:
                            rf = _find(uf, f)
                            if rf != root:
                                uf[rf] = root
    comp = np.empty(m, np.int64)
    for e in range(m):
        comp[e] = _find(uf, e)
    return accepted, out, oeid, peb, comp


@njit(cache=True)
def test_edge(out, oeid, peb, x, y):
    """Try to insert ``xy`` into a copy of a pebble-game state.

    Returns ``(independent, mask)``.  If ``xy`` is dependent, ``mask`` marks the
    vertex set reached by the failed search: the minimal rigid set holding
    ``x`` and ``y`` and the support of the fundamental circuit of ``xy``.
    """
    n = peb.shape[0]
    out = out.copy()
    oeid = oeid.copy()
    peb = peb.copy()
    seen = np.zeros(n, np.int64)
    parent = np.empty(n, np.int64)
    stack = np.empty(n, np.int64)
    mask = np.zeros(n, np.bool_)
    _gather(out, oeid, peb, x, y, 2, 2, seen, 0, parent, stack)
    if peb[x] + peb[y] == 4:
        return True, mask
    src = np.empty(2, np.int64)
    src[0] = x
    src[1] = y
    _reach(out, src, n, mask, stack)
    return False, mask


@njit(cache=True)
def rigid_closure(out, oeid, peb, x, y):
    """Vertex mask of the maximal rigid subgraph containing the edge or linked pair ``xy``."""
    n = peb.shape[0]
    out = out.copy()
    oeid = oeid.copy()
    peb = peb.copy()
    seen = np.zeros(n, np.int64)
    parent = np.empty(n, np.int64)
    stack = np.empty(n, np.int64)
    stamp = _gather(out, oeid, peb, x, y, 2, 1, seen, 0, parent, stack)
    mask = np.zeros(n, np.bool_)
    loose = np.zeros(n, np.bool_)
    mask[x] = True
    mask[y] = True
    for w in range(n):
        if mask[w] or loose[w]:
            continue
        if peb[w] > 0:
            loose[w] = True
            continue
        stamp += 1
        if _search(out, peb, w, x, y, seen, stamp, parent, stack) >= 0:
            loose[w] = True
        else:
            for v in range(n):
                if seen[v] == stamp:
                    mask[v] = True
    return mask


# ---------------------------------------------------------------------------
# exact elimination modulo the Mersenne prime 2**61 - 1

MERSENNE61 = (1 << 61) - 1
_P = np.uint64(MERSENNE61)
_M31 = np.uint64((1 << 31) - 1)
_M30 = np.uint64((1 << 30) - 1)
_S31 = np.uint64(31)
_S30 = np.uint64(30)
_S61 = np.uint64(61)
_ONE = np.uint64(1)
_TWO = np.uint64(2)
_ZERO = np.uint64(0)


@njit(cache=True)
def mulmod61(a, b):
    a1 = a >> _S31
    a0 = a & _M31
    b1 = b >> _S31
    b0 = b & _M31
    mid = a1 * b0 + a0 * b1
    r = a1 * b1 * _TWO + (mid >> _S30) + ((mid & _M30) << _S31) + a0 * b0
    r = (r & _P) + (r >> _S61)
    r = (r & _P) + (r >> _S61)
    if r >= _P:
        r -= _P
    return r


@njit(cache=True)
def powmod61(a, e):
    r = _ONE
    while e > 0:
        if e & 1:
            r = mulmod61(r, a)
        a = mulmod61(a, a)
        e >>= 1
    return r


@njit(cache=True)
def rank_mod61(M):
    """Rank of a uint64 matrix with entries in ``[0, 2**61 - 1)``; ``M`` is overwritten."""
    rows, cols = M.shape
    rank = 0
    for c in range(cols):
        piv = -1
        for i in range(rank, rows):
            if M[i, c] != _ZERO:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(cols):
                tmp = M[piv, j]
                M[piv, j] = M[rank, j]
                M[rank, j] = tmp
        inv = powmod61(M[rank, c], MERSENNE61 - 2)
        for i in range(rank + 1, rows):
            if M[i, c] != _ZERO:
                f = mulmod61(M[i, c], inv)
                for j in range(c, cols):
                    t = mulmod61(f, M[rank, j])
                    x = M[i, j]
                    M[i, j] = x - t if x >= t else x + (_P - t)
        rank += 1
        if rank == rows:
            break
    return rank
