"""Compiled inner loops. Everything here works on plain numpy arrays."""

import numba
import numpy as np

VERTEX_STEP = np.uint8(1)
EDGE_STEP = np.uint8(0)


@numba.njit(cache=True)
def grow(endpoints, degree, birth, kinds, first, second,
         t, n, t_stop, p, uniforms, pos):
    """Advance the process from ``t`` towards ``t_stop`` consuming ``uniforms``.

    Stops early when fewer than three draws remain, so the caller can refill
    the stream without splitting a step. Returns ``(t, n, pos)``.
    """
    n_uniforms = uniforms.shape[0]
    while t < t_stop and pos + 3 <= n_uniforms:
        mass = 2 * t
        s = t + 1
        rec = t - 1  # record index of step s
        u0 = uniforms[pos]
        pos += 1
        if u0 < p:
            idx = np.int64(uniforms[pos] * mass)
            pos += 1
            if idx >= mass:
                idx = mass - 1
            target = endpoints[idx]
            n += 1
            endpoints[2 * t] = target
            endpoints[2 * t + 1] = n
            degree[target] += 1
            degree[n] = 1
            birth[n] = s
            kinds[rec] = 1
            first[rec] = target
            second[rec] = 0
        else:
            i1 = np.int64(uniforms[pos] * mass)
            i2 = np.int64(uniforms[pos + 1] * mass)
            pos += 2
            if i1 >= mass:
                i1 = mass - 1
            if i2 >= mass:
                i2 = mass - 1
            a = endpoints[i1]
            b = endpoints[i2]
            endpoints[2 * t] = a
            endpoints[2 * t + 1] = b
            degree[a] += 1
            degree[b] += 1
            kinds[rec] = 0
            first[rec] = a
            second[rec] = b
        t = s
    return t, n, pos


@numba.njit(cache=True)
def replay(endpoints, degree, birth, kinds, first, second, t_stop):
    """Rebuild from a step record. Returns ``(t, n, bad)`` where ``bad`` is the
    record index of the first invalid step, or -1."""
    t = 1
    n = 1
    endpoints[0] = 1
    endpoints[1] = 1
    degree[1] = 2
    birth[1] = 1
    while t < t_stop:
        rec = t - 1
        a = first[rec]
        if kinds[rec] == 1:
            if a < 1 or a > n:
                return t, n, rec
            n += 1
            endpoints[2 * t] = a
            endpoints[2 * t + 1] = n
            degree[a] += 1
            degree[n] = 1
            birth[n] = t + 1
        else:
            b = second[rec]
            if a < 1 or a > n or b < 1 or b > n:
                return t, n, rec
            endpoints[2 * t] = a
            endpoints[2 * t + 1] = b
            degree[a] += 1
            degree[b] += 1
        t += 1
    return t, n, -1


@numba.njit(cache=True)
def oriented_triangles(indptr, indices, rank):
    """Count triangles of a simple undirected CSR graph.

    Each edge is oriented from lower to higher ``rank``; every triangle is then
    found exactly once as a pair of out-edges closed by a third out-edge.
    """
    n = indptr.shape[0] - 1
    # forward adjacency
    out_deg = np.zeros(n, dtype=np.int64)
    for u in range(n):
        for k in range(indptr[u], indptr[u + 1]):
            if rank[indices[k]] > rank[u]:
                out_deg[u] += 1
    out_ptr = np.zeros(n + 1, dtype=np.int64)
    for u in range(n):
        out_ptr[u + 1] = out_ptr[u] + out_deg[u]
    out_idx = np.empty(out_ptr[n], dtype=np.int64)
    fill = out_ptr[:-1].copy()
    for u in range(n):
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if rank[v] > rank[u]:
                out_idx[fill[u]] = v
                fill[u] += 1

    mark = np.zeros(n, dtype=np.bool_)
    total = 0
    for u in range(n):
        for k in range(out_ptr[u], out_ptr[u + 1]):
            mark[out_idx[k]] = True
        for k in range(out_ptr[u], out_ptr[u + 1]):
            v = out_idx[k]
            for m in range(out_ptr[v], out_ptr[v + 1]):
                if mark[out_idx[m]]:
                    total += 1
        for k in range(out_ptr[u], out_ptr[u + 1]):
            mark[out_idx[k]] = False
    return total
