"""Hot numeric kernels.

Everything here is written in the numba-compatible subset of numpy and is
compiled with ``njit`` unless ``GLMY_DISABLE_NUMBA`` is set (see ``_accel``).
Graph kernels take a dense boolean adjacency matrix ``adj``.
"""

from __future__ import annotations

import numpy as np

from ._accel import njit

KIND_B0 = 0
KIND_B1 = 1
KIND_B2 = 2


# ---------------------------------------------------------------------------
# modular elimination


@njit(cache=True)
def inv_mod(x, q):
    t, newt = 0, 1
    r, newr = q, x % q
    while newr != 0:
        quot = r // newr
        t, newt = newt, t - quot * newt
        r, newr = newr, r - quot * newr
    return t % q


@njit(cache=True)
def rref_mod(M, q):
    """Reduced row echelon form of ``M`` (int64, entries in [0, q)) in place.

    Pivot rule: scan columns left to right, take the first row with a
    nonzero entry.  Returns ``(rank, pivot_columns)``.
    """
    rows, cols = M.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            tmp = M[r].copy()
            M[r] = M[p]
            M[p] = tmp
        inv = inv_mod(M[r, c], q)
        M[r] = (M[r] * inv) % q
        col = M[:, c].copy()
        col[r] = 0
        nz = np.nonzero(col)[0]
        if nz.size > 0:
            pivot_row = M[r].copy()
            for k in range(nz.size):
                i = nz[k]
                M[i] = (M[i] - col[i] * pivot_row) % q
        pivots[r] = c
        r += 1
    return r, pivots[:r].copy()


@njit(cache=True)
def rank_mod(M, q):
    r, _ = rref_mod(M, q)
    return r


# ---------------------------------------------------------------------------
# per-pair structure


@njit(cache=True)
def _pair_sets(adj, a, b):
    n = adj.shape[0]
    in_a = adj[a].copy()
    in_b = adj[:, b].copy()
    # A = N+(a) \ {b},  B = N-(b) \ {a}
    in_a[b] = False
    in_b[a] = False
    amb = in_a & ~in_b
    bma = in_b & ~in_a
    # TA = N+(a) & (N-(b) | {b}),  TB = (N+(a) | {a}) & N-(b)
    ta = np.zeros(n, dtype=np.bool_)
    tb = np.zeros(n, dtype=np.bool_)
    for v in range(n):
        ta[v] = adj[a, v] and (adj[v, b] or v == b)
        tb[v] = (adj[a, v] or v == a) and adj[v, b]
    return amb, bma, ta, tb


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True, nogil=True)
def pair_dimension_table(adj):
    """Dimension formula for every ordered pair; returns an (n, n) int64 table."""
    n = adj.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    parent = np.empty(n, dtype=np.int64)
    scount = np.zeros(n, dtype=np.int64)
    for a in range(n):
        for b in range(n):
            amb, bma, ta, tb = _pair_sets(adj, a, b)
            ai = np.nonzero(amb)[0]
            bj = np.nonzero(bma)[0]
            ti = np.nonzero(ta)[0]
            tj = np.nonzero(tb)[0]
            nv = ai.size + bj.size
            for v in range(n):
                parent[v] = v
                scount[v] = 0
            ne = 0
            comps = nv
            for x in range(ai.size):
                i = ai[x]
                for y in range(bj.size):
                    j = bj[y]
                    if adj[i, j]:
                        ne += 1
                        ri = _find(parent, i)
                        rj = _find(parent, j)
                        if ri != rj:
                            parent[ri] = rj
                            comps -= 1
            b1 = 0
            for x in range(ti.size):
                for y in range(tj.size):
                    if adj[ti[x], tj[y]]:
                        b1 += 1
            for x in range(ai.size):
                i = ai[x]
                c = 0
                for y in range(tj.size):
                    if adj[i, tj[y]]:
                        c += 1
                scount[_find(parent, i)] += c
            for y in range(bj.size):
                j = bj[y]
                c = 0
                for x in range(ti.size):
                    if adj[ti[x], j]:
                        c += 1
                scount[_find(parent, j)] += c
            b2 = 0
            for v in range(n):
                if scount[v] > 1:
                    b2 += scount[v] - 1
            out[a, b] = (ne - nv + comps) + b1 + b2
    return out


@njit(cache=True)
def _grow(buf, need):
    if need <= buf.size:
        return buf
    size = buf.size * 2
    while size < need:
        size *= 2
    nb = np.empty(size, dtype=buf.dtype)
    nb[: buf.size] = buf
    return nb


@njit(cache=True)
def _h_bfs(adj, amb, bma, root, comp, parent, depth, label, order, order_len):
    """BFS in the undirected bipartite graph H from ``root``.

    Neighbors are visited in ascending id.  Writes ``comp``/``parent``/``depth``
    for every reached vertex and appends them to ``order``.
    """
    n = adj.shape[0]
    head = order_len
    order[order_len] = root
    order_len += 1
    comp[root] = label
    parent[root] = -1
    depth[root] = 0
    while head < order_len:
        u = order[head]
        head += 1
        for w in range(n):
            if comp[w] >= 0:
                continue
            if (amb[u] and bma[w] and adj[u, w]) or (bma[u] and amb[w] and adj[w, u]):
                comp[w] = label
                parent[w] = u
                depth[w] = depth[u] + 1
                order[order_len] = w
                order_len += 1
    return order_len


@njit(cache=True)
def _emit_edge(ti, tj, sg, nt, u, v, amb, sign):
    # orient an H edge from its A\B end to its B\A end
    ti = _grow(ti, nt + 1)
    tj = _grow(tj, nt + 1)
    sg = _grow(sg, nt + 1)
    if amb[u]:
        ti[nt] = u
        tj[nt] = v
    else:
        ti[nt] = v
        tj[nt] = u
    sg[nt] = sign
    return ti, tj, sg, nt + 1


@njit(cache=True, nogil=True)
def pair_basis(adj, a, b):
    """Basis generators of the (a, b) cluster space, in compact form.

    Returns ``(kind, start, comp, ti, tj, sign)``: generator ``g`` has kind
    ``kind[g]`` and terms ``start[g]:start[g+1]``; each term is the path
    ``a, ti, tj, b`` with coefficient ``sign``.  ``comp[g]`` is the H
    component of a B2 generator and -1 otherwise.
    """
    n = adj.shape[0]
    amb, bma, ta, tb = _pair_sets(adj, a, b)

    comp = np.full(n, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    depth = np.zeros(n, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    order_len = 0
    ncomp = 0
    for v in range(n):
        if (amb[v] or bma[v]) and comp[v] < 0:
            order_len = _h_bfs(adj, amb, bma, v, comp, parent, depth, ncomp, order, order_len)
            ncomp += 1

    kind = np.empty(16, dtype=np.int8)
    start = np.zeros(17, dtype=np.int64)
    gcomp = np.empty(16, dtype=np.int64)
    ti = np.empty(64, dtype=np.int64)
    tj = np.empty(64, dtype=np.int64)
    sg = np.empty(64, dtype=np.int8)
    ng = 0
    nt = 0
    path = np.empty(n + 1, dtype=np.int64)
    down = np.empty(n + 1, dtype=np.int64)

    # B0: one alternating cycle per off-forest edge of H
    for i in range(n):
        if not amb[i]:
            continue
        for j in range(n):
            if not (bma[j] and adj[i, j]):
                continue
            if parent[j] == i or parent[i] == j:
                continue
            # cycle i, j, ..., back to i through the forest
            x = j
            y = i
            up = 0
            path[up] = x
            up += 1
            dn = 0
            while depth[x] > depth[y]:
                x = parent[x]
                path[up] = x
                up += 1
            while depth[y] > depth[x]:
                down[dn] = y
                dn += 1
                y = parent[y]
            while x != y:
                x = parent[x]
                path[up] = x
                up += 1
                down[dn] = y
                dn += 1
                y = parent[y]
            # vertex cycle: i, path[0..up-1], reversed(down[1..dn-1])
            cyc = np.empty(up + dn + 1, dtype=np.int64)
            L = 0
            cyc[L] = i
            L += 1
            for k in range(up):
                cyc[L] = path[k]
                L += 1
            for k in range(dn - 1, 0, -1):
                cyc[L] = down[k]
                L += 1
            if cyc[L - 1] == i:
                L -= 1
            kind = _grow(kind, ng + 1)
            gcomp = _grow(gcomp, ng + 1)
            start = _grow(start, ng + 2)
            kind[ng] = KIND_B0
            gcomp[ng] = -1
            start[ng] = nt
            for k in range(L):
                u = cyc[k]
                w = cyc[(k + 1) % L]
                s = 1 if k % 2 == 0 else -1
                ti, tj, sg, nt = _emit_edge(ti, tj, sg, nt, u, w, amb, s)
            ng += 1
            start[ng] = nt

    # B1: single terms over arrows TA -> TB
    for i in range(n):
        if not ta[i]:
            continue
        for j in range(n):
            if tb[j] and adj[i, j]:
                kind = _grow(kind, ng + 1)
                gcomp = _grow(gcomp, ng + 1)
                start = _grow(start, ng + 2)
                kind[ng] = KIND_B1
                gcomp[ng] = -1
                start[ng] = nt
                ti = _grow(ti, nt + 1)
                tj = _grow(tj, nt + 1)
                sg = _grow(sg, nt + 1)
                ti[nt] = i
                tj[nt] = j
                sg[nt] = 1
                nt += 1
                ng += 1
                start[ng] = nt

    # B2: per component, walks from the smallest S_k edge to each other one
    if ncomp > 0:
        cnt = np.zeros(ncomp, dtype=np.int64)
        for i in range(n):
            for j in range(n):
                if not adj[i, j]:
                    continue
                if amb[i] and tb[j]:
                    cnt[comp[i]] += 1
                elif ta[i] and bma[j]:
                    cnt[comp[j]] += 1
        offs = np.zeros(ncomp + 1, dtype=np.int64)
        for k in range(ncomp):
            offs[k + 1] = offs[k] + cnt[k]
        si = np.empty(offs[ncomp], dtype=np.int64)
        sj = np.empty(offs[ncomp], dtype=np.int64)
        fill = offs[:ncomp].copy()
        for i in range(n):
            for j in range(n):
                if not adj[i, j]:
                    continue
                k = -1
                if amb[i] and tb[j]:
                    k = comp[i]
                elif ta[i] and bma[j]:
                    k = comp[j]
                if k >= 0:
                    si[fill[k]] = i
                    sj[fill[k]] = j
                    fill[k] += 1
        c2 = np.full(n, -1, dtype=np.int64)
        p2 = np.full(n, -1, dtype=np.int64)
        d2 = np.zeros(n, dtype=np.int64)
        o2 = np.empty(n, dtype=np.int64)
        for k in range(ncomp):
            if cnt[k] < 2:
                continue
            s0 = offs[k]
            bi = si[s0]
            bj = sj[s0]
            x = bi if amb[bi] else bj
            c2[:] = -1
            _h_bfs(adj, amb, bma, x, c2, p2, d2, 0, o2, 0)
            for s in range(s0 + 1, offs[k + 1]):
                ei = si[s]
                ej = sj[s]
                y = ei if amb[ei] else ej
                # walk x -> y is the parent chain of y reversed
                L = d2[y]
                walk = np.empty(L + 1, dtype=np.int64)
                v = y
                for t in range(L, -1, -1):
                    walk[t] = v
                    v = p2[v]
                kind = _grow(kind, ng + 1)
                gcomp = _grow(gcomp, ng + 1)
                start = _grow(start, ng + 2)
                kind[ng] = KIND_B2
                gcomp[ng] = k
                start[ng] = nt
                ti = _grow(ti, nt + L + 2)
                tj = _grow(tj, nt + L + 2)
                sg = _grow(sg, nt + L + 2)
                ti[nt] = bi
                tj[nt] = bj
                sg[nt] = 1
                nt += 1
                sign = -1
                for t in range(L):
                    ti, tj, sg, nt = _emit_edge(ti, tj, sg, nt, walk[t], walk[t + 1], amb, sign)
                    sign = -sign
                ti[nt] = ei
                tj[nt] = ej
                sg[nt] = sign
                nt += 1
                ng += 1
                start[ng] = nt

    return (
        kind[:ng].copy(),
        start[: ng + 1].copy(),
        gcomp[:ng].copy(),
        ti[:nt].copy(),
        tj[:nt].copy(),
        sg[:nt].copy(),
    )


@njit(cache=True, nogil=True)
def basis_size_sweep(adj):
    """Build every pair's generators and return (generators, terms) totals.

    Used for timing: generators are produced and discarded pair by pair.
    """
    n = adj.shape[0]
    gens = 0
    terms = 0
    for a in range(n):
        for b in range(n):
            kind, start, gcomp, ti, tj, sg = pair_basis(adj, a, b)
            gens += kind.size
            terms += ti.size
    return gens, terms
