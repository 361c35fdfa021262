"""Synthetic graph families used as fixtures and benchmark inputs."""

from __future__ import annotations

import numpy as np

from .graph import Graph, from_edges


def _clique_edges(vertices) -> np.ndarray:
    vs = np.asarray(vertices, dtype=np.int64)
    a, b = np.triu_indices(len(vs), k=1)
    return np.column_stack([vs[a], vs[b]])


def gen_planted_clique(n: int, k: int, seed: int | None = None) -> Graph:
    """A k-clique plus n - k isolated vertices.

    The clique sits on vertices 0..k-1, or on a random k-subset when a seed
    is given.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    members = np.arange(k) if seed is None else np.sort(np.random.default_rng(seed).choice(n, k, replace=False))
    return from_edges(n, _clique_edges(members), name=f"planted-{n}-{k}")


def gen_two_cliques(k1: int, k2: int) -> Graph:
    """Disjoint cliques on 0..k1-1 and k1..k1+k2-1, no edges between them."""
    if k1 < 1 or k2 < 1:
        raise ValueError("clique sizes must be >= 1")
    edges = np.vstack([_clique_edges(range(k1)), _clique_edges(range(k1, k1 + k2))])
    return from_edges(k1 + k2, edges, name=f"twoclique-{k1}-{k2}")


def gen_gnp(n: int, p: float, seed: int | None = None) -> Graph:
    """Erdos-Renyi G(n, p); intended for small n (O(n^2) memory)."""
    rng = np.random.default_rng(seed)
    a, b = np.triu_indices(n, k=1)
    keep = rng.random(len(a)) < p
    return from_edges(n, np.column_stack([a[keep], b[keep]]), name=f"gnp-{n}-{p}")


def gen_gnm(n: int, m: int, seed: int | None = None) -> Graph:
    """Uniform random simple graph with exactly m edges."""
    if m > n * (n - 1) // 2:
        raise ValueError("too many edges for a simple graph")
    rng = np.random.default_rng(seed)
    keys = np.zeros(0, dtype=np.int64)
    while len(keys) < m:
        u = rng.integers(0, n, size=2 * (m - len(keys)) + 16)
        v = rng.integers(0, n, size=len(u))
        ok = u != v
        lo, hi = np.minimum(u[ok], v[ok]), np.maximum(u[ok], v[ok])
        keys = np.union1d(keys, lo * n + hi)
    keys = rng.permutation(keys)[:m]
    return from_edges(n, np.column_stack([keys // n, keys % n]), name=f"gnm-{n}-{m}")


def gen_powerlaw_community(n: int, m: int, k: int, *, exponent: float = 2.8, max_degree: int | None = None,
                           seed: int | None = None) -> Graph:
    """Chung-Lu style heavy-tailed sparse graph with a planted k-clique.

    About ``m`` background edges are drawn with endpoint probabilities
    proportional to a truncated power-law weight sequence; the clique is
    placed on a random k-subset.
    """
    rng = np.random.default_rng(seed)
    w = np.arange(1, n + 1, dtype=float) ** (-1.0 / (exponent - 1.0))
    w *= 2 * m / w.sum()
    if max_degree is not None:
        w = np.minimum(w, max_degree)
    w /= w.sum()
    u = rng.choice(n, m, p=w)
    v = rng.choice(n, m, p=w)
    clique = rng.choice(n, k, replace=False)
    edges = np.vstack([np.column_stack([u, v]), _clique_edges(clique)])
    return from_edges(n, edges, name=f"powerlaw-{n}-{m}-{k}")
