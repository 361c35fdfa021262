"""Non-private reference algorithms.

``exact_densest_bruteforce`` is the ground-truth oracle for tiny graphs,
``charikar_peel`` is the greedy 2-approximation used as the experimental
baseline, and ``randomized_response_densest`` is the naive private approach
kept as a negative control.
"""

from __future__ import annotations

import math

import numpy as np

from ._kernels import csr_from_upper, peel_min_degree
from .graph import DensityReport, Graph, density, from_csr, induced_edge_count
from .noise import sample_geom

BRUTEFORCE_MAX_N = 22


class GraphTooLargeError(ValueError):
    pass


def _lex_smallest(masks: np.ndarray) -> int:
    """Mask whose sorted member list is lexicographically smallest."""
    prefix = 0
    while True:
        if (masks == 0).any():
            return prefix
        low = masks & -masks
        first = low.min()
        masks = masks[low == first] ^ first
        prefix |= int(first)


def exact_densest_bruteforce(g: Graph) -> DensityReport:
    """Scan all 2**n - 1 nonempty subsets; ties go to the lexicographically smallest set."""
    n = g.n
    if n == 0:
        raise ValueError("graph has no vertices")
    if n > BRUTEFORCE_MAX_N:
        raise GraphTooLargeError(f"brute force is limited to n <= {BRUTEFORCE_MAX_N}, got n={n}")

    edges = np.zeros(1 << n, dtype=np.int64)
    for k in range(n):
        lower = sum(1 << int(u) for u in g.neighbors(k) if u < k)
        lo = 1 << k
        edges[lo:2 * lo] = edges[:lo] + np.bitwise_count(np.arange(lo, dtype=np.int64) & lower)
    masks = np.arange(1 << n, dtype=np.int64)
    sizes = np.bitwise_count(masks).astype(np.int64)
    sizes[0] = 1  # empty set excluded below

    dens = edges / sizes
    dens[0] = -1.0
    best = int(np.argmax(dens))
    while True:
        e0, s0 = edges[best], sizes[best]
        better = edges * s0 > e0 * sizes
        better[0] = False
        if not better.any():
            break
        best = int(np.flatnonzero(better)[0])
    ties = np.flatnonzero(edges * s0 == e0 * sizes)
    ties = ties[ties != 0]
    winner = _lex_smallest(masks[ties])
    subset = frozenset(v for v in range(n) if winner >> v & 1)
    d = float(edges[winner]) / len(subset)
    return DensityReport(subset, d, d)


def peel_order(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Min-degree peeling order (ties to lowest id) and residual degree at each removal."""
    return peel_min_degree(g.indptr, g.indices)


def best_density_prefix(m: int, removed_degree: np.ndarray) -> int:
    """Index k of the first residual set S_k (k removals made) with maximum density."""
    n = len(removed_degree)
    edges = m - np.concatenate([[0], np.cumsum(removed_degree[:-1])])
    sizes = n - np.arange(n)
    best = int(np.argmax(edges / sizes))
    while True:
        better = edges * sizes[best] > edges[best] * sizes
        if not better.any():
            break
        best = int(np.flatnonzero(better)[0])
    return int(np.flatnonzero(edges * sizes[best] == edges[best] * sizes)[0])


def charikar_peel(g: Graph) -> DensityReport:
    """Greedy peeling: drop a minimum residual degree vertex until empty, keep the densest set seen.

    Ties among minimum-degree vertices go to the lowest id, and among equally
    dense residual sets to the first (largest) one.
    """
    if g.n == 0:
        raise ValueError("graph has no vertices")
    order, removed_degree = peel_order(g)
    k = best_density_prefix(g.m, removed_degree)
    subset = frozenset(order[k:].tolist())
    d = density(g, subset)
    return DensityReport(subset, d, d)


def flip_probability(epsilon: float) -> float:
    return 1.0 / (1.0 + math.exp(epsilon))


def randomized_response_graph(g: Graph, p: float, rng) -> Graph:
    """Flip every vertex pair independently with probability ``p``."""
    n = g.n
    src_parts, dst_parts = [], []
    for i in range(n - 1):
        row = rng.random(n - i - 1) < p if p > 0 else np.zeros(n - i - 1, dtype=bool)
        nb = g.neighbors(i)
        nb = nb[nb > i]
        row[nb - i - 1] ^= True
        js = np.flatnonzero(row) + i + 1
        if js.size:
            src_parts.append(np.full(js.size, i, dtype=np.int64))
            dst_parts.append(js)
    if src_parts:
        src, dst = np.concatenate(src_parts), np.concatenate(dst_parts)
    else:
        src = dst = np.zeros(0, dtype=np.int64)
    indptr, indices = csr_from_upper(n, src, dst)
    return from_csr(indptr, indices, name=f"{g.name}-rr")


def randomized_response_densest(g: Graph, epsilon: float, rng, *, p: float | None = None) -> DensityReport:
    """Naive private baseline: peel the randomized-response graph.

    The greedy peel stands in for an exact solver on the rerandomized graph.
    ``true_density`` is measured in ``g``; the released estimate adds
    Geom(e**epsilon) noise to the chosen set's edge count in ``g``.
    ``p`` overrides the flip probability 1/(1 + e**epsilon) (tests only).
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be > 0")
    flip = flip_probability(epsilon) if p is None else p
    noisy_graph = randomized_response_graph(g, flip, rng)
    subset = charikar_peel(noisy_graph).subset
    e = induced_edge_count(g, subset)
    released = (e + sample_geom(math.exp(epsilon), rng)) / len(subset)
    return DensityReport(subset, e / len(subset), released)
