"""Compiled inner loops for the non-private peel and large CSR construction."""

import numba
import numpy as np


@numba.njit(cache=True)
def _sift_up(heap, pos, key, i):
    item = heap[i]
    k = key[item]
    while i > 0:
        parent = (i - 1) >> 1
        p = heap[parent]
        if key[p] <= k:
            break
        heap[i] = p
        pos[p] = i
        i = parent
    heap[i] = item
    pos[item] = i


@numba.njit(cache=True)
def _sift_down(heap, pos, key, i, size):
    item = heap[i]
    k = key[item]
    while True:
        child = 2 * i + 1
        if child >= size:
            break
        if child + 1 < size and key[heap[child + 1]] < key[heap[child]]:
            child += 1
        c = heap[child]
        if key[c] >= k:
            break
        heap[i] = c
        pos[c] = i
        i = child
    heap[i] = item
    pos[item] = i


@numba.njit(cache=True)
def peel_min_degree(indptr, indices):
    """Repeatedly remove the vertex with minimum (residual degree, id).

    Returns the removal order and each removed vertex's residual degree.
    Uses an indexed binary heap keyed by ``degree * n + id``.
    """
    n = len(indptr) - 1
    key = np.empty(n, dtype=np.int64)
    heap = np.empty(n, dtype=np.int64)
    pos = np.empty(n, dtype=np.int64)
    alive = np.ones(n, dtype=np.bool_)
    for v in range(n):
        key[v] = (indptr[v + 1] - indptr[v]) * n + v
        heap[v] = v
        pos[v] = v
    for i in range(n // 2 - 1, -1, -1):
        _sift_down(heap, pos, key, i, n)

    order = np.empty(n, dtype=np.int64)
    removed_degree = np.empty(n, dtype=np.int64)
    size = n
    for step in range(n):
        v = heap[0]
        size -= 1
        if size > 0:
            heap[0] = heap[size]
            pos[heap[0]] = 0
            _sift_down(heap, pos, key, 0, size)
        alive[v] = False
        order[step] = v
        removed_degree[step] = key[v] // n
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if alive[u]:
                key[u] -= n
                _sift_up(heap, pos, key, pos[u])
    return order, removed_degree


@numba.njit(cache=True)
def csr_from_upper(n, src, dst):
    """Symmetric CSR from pairs with src < dst, sorted by (src, dst) and unique."""
    deg = np.zeros(n + 1, dtype=np.int64)
    for e in range(len(src)):
        deg[src[e] + 1] += 1
        deg[dst[e] + 1] += 1
    indptr = np.cumsum(deg)
    fill = indptr[:-1].copy()
    indices = np.empty(2 * len(src), dtype=np.int32)
    for e in range(len(src)):
        u = src[e]
        v = dst[e]
        indices[fill[u]] = v
        fill[u] += 1
        indices[fill[v]] = u
        fill[v] += 1
    return indptr, indices
