"""Undirected simple graphs in CSR form, edge-list ingestion and density bookkeeping."""

from __future__ import annotations

import gzip
import io
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

from ._kernels import csr_from_upper

VertexSet = frozenset  # members are dense vertex ids in 0..n-1

_SPLIT = re.compile(r"[\s,]+")


class ParseError(ValueError):
    def __init__(self, lineno: int, line: str):
        super().__init__(f"line {lineno}: expected two non-negative integer ids, got {line!r}")
        self.lineno = lineno


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph.

    ``indptr``/``indices`` are the CSR arrays; neighbours of ``v`` are
    ``indices[indptr[v]:indptr[v + 1]]`` in increasing order. ``id_map[v]`` is
    the original id of dense vertex ``v`` when the graph came from a file.
    """

    indptr: np.ndarray
    indices: np.ndarray
    id_map: np.ndarray | None = None
    dropped_edges: int = 0
    name: str = field(default="graph")

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @cached_property
    def adjacency(self) -> list[list[int]]:
        """Per-vertex neighbour lists as plain Python ints (fast for scalar loops)."""
        flat = self.indices.tolist()
        ptr = self.indptr.tolist()
        return [flat[ptr[v]:ptr[v + 1]] for v in range(self.n)]

    def edges(self) -> np.ndarray:
        """Edge array of shape (m, 2) with u < v, sorted lexicographically."""
        src = np.repeat(np.arange(self.n, dtype=self.indices.dtype), self.degrees)
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.indptr, other.indptr) and np.array_equal(self.indices, other.indices)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Graph(name={self.name!r}, n={self.n}, m={self.m})"


def from_edges(n: int, edges, *, id_map=None, name: str = "graph") -> Graph:
    """Build a Graph on vertices ``0..n-1``; self-loops and duplicates are dropped."""
    e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if e.size and (e.min() < 0 or e.max() >= n):
        raise ValueError(f"edge endpoint outside 0..{n - 1}")
    total = len(e)
    e = e[e[:, 0] != e[:, 1]]
    lo = np.minimum(e[:, 0], e[:, 1])
    hi = np.maximum(e[:, 0], e[:, 1])
    keys = np.unique(lo * max(n, 1) + hi)
    dropped = total - len(keys)
    indptr, indices = csr_from_upper(n, keys // max(n, 1), keys % max(n, 1))
    return Graph(indptr, indices, None if id_map is None else np.asarray(id_map), dropped, name)


def from_csr(indptr, indices, *, name: str = "graph") -> Graph:
    """Wrap CSR arrays that are already symmetric, sorted and loop-free."""
    return Graph(np.asarray(indptr, dtype=np.int64), np.asarray(indices), None, 0, name)


def parse_edge_list(stream: Iterable[str], *, header: bool = False, name: str = "graph") -> Graph:
    """Parse a SNAP-style edge list.

    Lines starting with ``#`` (or ``%``) are comments and blank lines are
    skipped. Ids may be separated by whitespace or commas; anything after the
    second id is ignored. Original ids are compacted to ``0..n-1`` in
    increasing order and kept in ``Graph.id_map``.
    """
    us: list[int] = []
    vs: list[int] = []
    skip_header = header
    for lineno, line in enumerate(stream, 1):
        s = line.strip()
        if not s or s[0] in "#%":
            continue
        if skip_header:
            skip_header = False
            continue
        tok = _SPLIT.split(s)
        try:
            u, v = int(tok[0]), int(tok[1])
        except (ValueError, IndexError):
            raise ParseError(lineno, s) from None
        if u < 0 or v < 0:
            raise ParseError(lineno, s)
        us.append(u)
        vs.append(v)

    raw = np.array([us, vs], dtype=np.int64).T.reshape(-1, 2)
    ids, inverse = np.unique(raw.ravel(), return_inverse=True)
    return from_edges(len(ids), inverse.reshape(-1, 2), id_map=ids, name=name)


def read_edge_list(path, *, header: bool | None = None) -> Graph:
    """Read an edge-list file; ``.gz`` is decompressed and ``.csv`` assumes a header row."""
    path = Path(path)
    stem = path.name[:-3] if path.name.endswith(".gz") else path.name
    if header is None:
        header = stem.endswith(".csv")
    opener = gzip.open if path.name.endswith(".gz") else open
    with opener(path, "rt") as f:
        return parse_edge_list(f, header=header, name=stem.split(".")[0])


def write_edge_list(g: Graph, stream: TextIO) -> None:
    """Serialize with dense ids, one ``u v`` line per edge (u < v)."""
    stream.write(f"# n={g.n} m={g.m}\n")
    buf = io.StringIO()
    np.savetxt(buf, g.edges(), fmt="%d")
    stream.write(buf.getvalue())


def write_sidecar(g: Graph, path, id_map_file: str | None = None) -> None:
    meta = {"n": g.n, "m": g.m, "dropped_edges": g.dropped_edges, "id_map_file": id_map_file}
    Path(path).write_text(json.dumps(meta) + "\n")


def _members(g: Graph, s) -> np.ndarray:
    arr = np.fromiter(s, dtype=np.int64, count=len(s))
    if arr.size and (arr.min() < 0 or arr.max() >= g.n):
        raise ValueError(f"vertex set has members outside 0..{g.n - 1}")
    return arr


def induced_edge_count(g: Graph, s) -> int:
    """|E(S)|, touching only the adjacency of members of S."""
    members = _members(g, s)
    if members.size == 0:
        return 0
    mask = np.zeros(g.n, dtype=bool)
    mask[members] = True
    starts = g.indptr[members]
    lengths = g.indptr[members + 1] - starts
    total = int(lengths.sum())
    if total == 0:
        return 0
    # positions of all members' neighbour entries, gathered without a Python loop
    offsets = np.repeat(starts - np.cumsum(lengths) + lengths, lengths) + np.arange(total)
    return int(mask[g.indices[offsets]].sum()) // 2


def density_fraction(g: Graph, s) -> Fraction:
    if len(s) == 0:
        raise ValueError("density of the empty set is undefined")
    return Fraction(induced_edge_count(g, s), len(s))


def density(g: Graph, s) -> float:
    return float(density_fraction(g, s))


@dataclass(frozen=True)
class DensityReport:
    """A released subset together with its true and reported density."""

    subset: frozenset
    true_density: float
    noisy_density: float

    @property
    def size(self) -> int:
        return len(self.subset)
