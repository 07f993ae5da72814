"""Compiled inner loops for the exhaustive searches.

Everything here works on plain integer arrays so numba can compile it. The
Python-facing wrappers live in :mod:`hyperx.berge` and :mod:`hyperx.walks`.
Search status codes: 0 = proved absent, 1 = found, 2 = node budget hit.
"""

from __future__ import annotations

import numpy as np
from numba import njit

ABSENT = 0
FOUND = 1
BUDGET = 2
INT64_MAX = np.iinfo(np.int64).max


@njit(cache=True)
def walk_recursion(n, k, edges, deg, h_max):
    """Fill ``out[:, h]`` from ``out[:, h-1]`` edge by edge while int64 is safe.

    Returns ``(out, h)``: ``h == h_max`` when every column is filled, else the
    first column whose step could overflow and was left for exact arithmetic.
    """
    out = np.zeros((n, h_max), np.int64)
    growth = 0
    for v in range(n):
        out[v, 0] = (k - 1) * deg[v]
        growth = max(growth, k * deg[v])
    for h in range(1, h_max):
        top = 0
        for v in range(n):
            top = max(top, out[v, h - 1])
        if growth > 0 and top > INT64_MAX // growth:
            return out, h
        for e in range(edges.shape[0]):
            total = 0
            for j in range(k):
                total += out[edges[e, j], h - 1]
            for j in range(k):
                v = edges[e, j]
                out[v, h] += total - out[v, h - 1]
    return out, h_max


@njit(cache=True)
def count_walks_exhaustive(n, m, k, edges, h_max):
    """Count alternating sequences ``v1 e1 v2 ... e_h v_{h+1}`` by direct enumeration.

    Each step scans every edge, keeps those containing the current vertex,
    and moves to any other vertex of that edge. ``out[v, h-1]`` is the number
    of such sequences of length ``h`` starting at ``v``.
    """
    out = np.zeros((n, h_max), np.int64)
    cur = np.empty(h_max + 1, np.int64)
    ei = np.empty(h_max + 1, np.int64)
    pi = np.empty(h_max + 1, np.int64)
    for s in range(n):
        d = 0
        cur[0] = s
        ei[0] = 0
        pi[0] = 0
        while d >= 0:
            if d == h_max:
                d -= 1
                continue
            found = False
            w = -1
            while ei[d] < m:
                e = ei[d]
                contains = False
                for j in range(k):
                    if edges[e, j] == cur[d]:
                        contains = True
                if contains:
                    while pi[d] < k:
                        w = edges[e, pi[d]]
                        pi[d] += 1
                        if w != cur[d]:
                            found = True
                            break
                    if found:
                        break
                ei[d] += 1
                pi[d] = 0
            if found:
                out[s, d] += 1
                cur[d + 1] = w
                ei[d + 1] = 0
                pi[d + 1] = 0
                d += 1
            else:
                d -= 1
    return out


@njit(cache=True)
def _augment(j0, cand, cc, match, owner, visited, par, queue):
    """Try to extend the matching from pattern edge ``j0`` along one augmenting path."""
    visited[:] = False
    head = 0
    tail = 1
    queue[0] = j0
    while head < tail:
        j = queue[head]
        head += 1
        for t in range(cc[j]):
            h = cand[j, t]
            if visited[h]:
                continue
            visited[h] = True
            par[h] = j
            if owner[h] < 0:
                while True:
                    jj = par[h]
                    prev = match[jj]
                    match[jj] = h
                    owner[h] = jj
                    if jj == j0:
                        return True
                    h = prev
            queue[tail] = owner[h]
            tail += 1
    return False


@njit(cache=True)
def berge_vertex_search(
    n, m, k, edges, inc_ptr, inc_idx, deg,
    p, order, pdeg, anchor, pe_a, pe_b, closed_ptr, closed_idx, budget,
):
    """Backtracking embedding of pattern vertices with matching-based pruning.

    Pattern vertices are placed in ``order``. A vertex with an already-placed
    neighbour (``anchor``) draws candidates from the hyperedges through that
    neighbour's image; image degree must be at least the pattern degree. When
    both ends of a pattern edge are placed, its candidate hyperedges are the
    edges containing both images. After every placement a maximum matching of
    the closed pattern edges into distinct hyperedges must saturate them all.
    """
    E = pe_a.shape[0]
    f = -np.ones(p, np.int64)
    used = np.zeros(n, np.bool_)
    mark = np.zeros(n, np.int64)
    stamp = 0
    cand = np.empty((p, n), np.int64)
    ccount = np.zeros(p, np.int64)
    cpos = np.zeros(p, np.int64)
    width = 1
    for v in range(n):
        if deg[v] > width:
            width = deg[v]
    ecand = np.empty((max(E, 1), width), np.int64)
    ecc = np.zeros(max(E, 1), np.int64)
    match = -np.ones(max(E, 1), np.int64)
    owner = -np.ones(max(m, 1), np.int64)
    visited = np.zeros(max(m, 1), np.bool_)
    par = np.zeros(max(m, 1), np.int64)
    queue = np.zeros(max(E, 1) + 1, np.int64)
    nodes = 0

    d = 0
    # fill candidates for depth 0
    a = order[0]
    cnt = 0
    for w in range(n):
        if deg[w] >= pdeg[a]:
            cand[0, cnt] = w
            cnt += 1
    ccount[0] = cnt
    cpos[0] = 0

    while d >= 0:
        if cpos[d] >= ccount[d]:
            d -= 1
            if d >= 0:
                used[f[order[d]]] = False
                f[order[d]] = -1
            continue
        v = cand[d, cpos[d]]
        cpos[d] += 1
        if used[v]:
            continue
        nodes += 1
        if nodes > budget:
            return BUDGET, f, match, nodes
        a = order[d]
        f[a] = v
        used[v] = True
        ok = True
        for t in range(closed_ptr[d], closed_ptr[d + 1]):
            j = closed_idx[t]
            x = f[pe_a[j]]
            y = f[pe_b[j]]
            # intersect the sorted incidence lists of x and y
            i1 = inc_ptr[x]
            i2 = inc_ptr[y]
            c = 0
            while i1 < inc_ptr[x + 1] and i2 < inc_ptr[y + 1]:
                if inc_idx[i1] == inc_idx[i2]:
                    ecand[j, c] = inc_idx[i1]
                    c += 1
                    i1 += 1
                    i2 += 1
                elif inc_idx[i1] < inc_idx[i2]:
                    i1 += 1
                else:
                    i2 += 1
            ecc[j] = c
            if c == 0:
                ok = False
                break
        if ok:
            for t in range(closed_ptr[d + 1]):
                match[closed_idx[t]] = -1
            owner[:] = -1
            for t in range(closed_ptr[d + 1]):
                if not _augment(closed_idx[t], ecand, ecc, match, owner, visited, par, queue):
                    ok = False
                    break
        if not ok:
            used[v] = False
            f[a] = -1
            continue
        if d == p - 1:
            return FOUND, f, match, nodes
        d += 1
        a = order[d]
        cnt = 0
        if anchor[d] >= 0:
            x = f[anchor[d]]
            stamp += 1
            for t in range(inc_ptr[x], inc_ptr[x + 1]):
                e = inc_idx[t]
                for jj in range(k):
                    w = edges[e, jj]
                    if w != x and not used[w] and deg[w] >= pdeg[a] and mark[w] != stamp:
                        mark[w] = stamp
                        cand[d, cnt] = w
                        cnt += 1
        else:
            for w in range(n):
                if not used[w] and deg[w] >= pdeg[a]:
                    cand[d, cnt] = w
                    cnt += 1
        ccount[d] = cnt
        cpos[d] = 0
    return ABSENT, f, match, nodes


@njit(cache=True)
def berge_edge_brute(n, m, member, p, pe_a, pe_b, pinc_ptr, pinc_idx):
    """Exhaustive Berge test: every injective edge map, then every core injection.

    For each injective map ``phi`` from pattern edges to hyperedges, a pattern
    vertex ``a`` may only go to a vertex lying in ``phi(e)`` for every pattern
    edge ``e`` at ``a`` (any vertex when ``a`` is isolated). All injective
    choices from those sets are tried. No pruning across edge maps.
    """
    E = pe_a.shape[0]
    phi = -np.ones(max(E, 1), np.int64)
    used_e = np.zeros(max(m, 1), np.bool_)
    cs = np.empty((max(p, 1), max(n, 1)), np.int64)
    csz = np.zeros(max(p, 1), np.int64)
    f = -np.ones(max(p, 1), np.int64)
    fi = np.zeros(max(p, 1), np.int64)
    used_v = np.zeros(max(n, 1), np.bool_)
    j = 0
    while j >= 0:
        if phi[j] >= 0:
            used_e[phi[j]] = False
        h = phi[j] + 1
        while h < m and used_e[h]:
            h += 1
        if h >= m:
            phi[j] = -1
            j -= 1
            continue
        phi[j] = h
        used_e[h] = True
        if j < E - 1:
            j += 1
            phi[j] = -1
            continue
        # full injective edge map: candidate sets per pattern vertex
        empty = False
        for a in range(p):
            c = 0
            for w in range(n):
                ok = True
                for t in range(pinc_ptr[a], pinc_ptr[a + 1]):
                    if member[phi[pinc_idx[t]], w] == 0:
                        ok = False
                        break
                if ok:
                    cs[a, c] = w
                    c += 1
            csz[a] = c
            if c == 0:
                empty = True
        if empty:
            continue
        # all injective core maps drawn from the candidate sets
        used_v[:] = False
        lvl = 0
        fi[0] = 0
        f[0] = -1
        while lvl >= 0:
            if f[lvl] >= 0:
                used_v[f[lvl]] = False
                f[lvl] = -1
            while fi[lvl] < csz[lvl] and used_v[cs[lvl, fi[lvl]]]:
                fi[lvl] += 1
            if fi[lvl] >= csz[lvl]:
                lvl -= 1
                continue
            f[lvl] = cs[lvl, fi[lvl]]
            fi[lvl] += 1
            used_v[f[lvl]] = True
            if lvl == p - 1:
                return FOUND, f, phi
            lvl += 1
            fi[lvl] = 0
            f[lvl] = -1
    return ABSENT, f, phi
