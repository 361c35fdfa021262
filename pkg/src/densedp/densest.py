"""Private densest subgraph by noisy greedy peeling.

Both entry points peel vertices in order of their noisy residual degree
``D(v) - PSum(v)``: ``D(v)`` is the degree plus geometric noise, and
``PSum(v)`` is a private prefix-sum counter of departed neighbours. Departures
are buffered in an outstanding counter ``Cnt(v)`` that is pushed into the
counter only when a sparse-vector style noisy comparison against the
threshold ``T`` fires. The vertex set kept is the residual set at the step
whose removed vertex had the largest noisy score.

``dp_densest_quasilinear`` finds the minimum with a heap;
``dp_densest_linear`` discretizes scores into buckets of width ``err``.
In both, the per-step threshold checks are replaced by sampling for every
vertex the step at which its check will next fire (a geometric random
variable) and filing the vertex in a schedule table.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from .graph import DensityReport, Graph, induced_edge_count
from .noise import INFINITY, NOISELESS, geom_tail, sample_crossing_time, sample_geom
from .prefix_sum import PrefixSumMechanism

DEFAULT_SIGMA = 2.0 ** -30
DEFAULT_ERR_C = 0.01


@dataclass(frozen=True)
class PrivacyBudget:
    """Budget split and derived integer parameters for one graph size.

    ``epsilon`` is divided equally between the noisy degrees, the prefix-sum
    counters, the threshold noises and the final density release.

    ``C`` scales the flush threshold ``T = ceil(C / epsilon * ln n * ln(1/sigma))``.
    ``T`` must make a threshold noise exceed it with probability at most
    ``sigma / n``; ``C=None`` picks the smallest ``T`` that does. ``err_C``
    scales the bucket width ``err = ceil(err_C / epsilon * ln(n)**2.5 * ln(1/sigma))``
    and ``err`` sets the width directly. Neither ``T`` nor ``err`` affects
    privacy, only accuracy and running time.
    """

    epsilon: float
    n: int
    sigma: float = DEFAULT_SIGMA
    C: float | None = None
    err_C: float = DEFAULT_ERR_C
    err: int | None = None

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be > 0")
        if not 0 < self.sigma < 1:
            raise ValueError("sigma must lie in (0, 1)")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.C is not None and not self.C > 0:
            raise ValueError("C must be > 0")
        if self.err is not None and self.err < 1:
            raise ValueError("err must be >= 1")
        parts = self.epsilon0 + self.epsilon1 + self.epsilon2 + self.epsilon_prime
        assert math.isclose(parts, self.epsilon), "budget split must add up to epsilon"
        if self.C is not None and self.threshold_tail > self.sigma / self.n:
            raise ValueError(
                f"C={self.C} gives T={self.threshold}, but Pr[noise > T]={self.threshold_tail:.3g} "
                f"exceeds sigma/n={self.sigma / self.n:.3g}; use C >= {self.min_C:.4g}")

    @property
    def epsilon0(self) -> float:
        return self.epsilon / 4

    epsilon1 = epsilon2 = epsilon_prime = epsilon0

    @property
    def _log_terms(self) -> float:
        return math.log(self.n) * math.log(1 / self.sigma)

    @property
    def min_threshold(self) -> int:
        """Smallest T >= 1 with Pr[Geom(e^epsilon2) > T] <= sigma / n."""
        gamma = math.exp(self.epsilon2)
        # tail is gamma**-T / (gamma + 1)
        t = (math.log(self.n / self.sigma) - math.log(gamma + 1)) / self.epsilon2
        t = max(1, math.ceil(t - 1e-9))
        while geom_tail(t, gamma) > self.sigma / self.n:
            t += 1
        return t

    @property
    def min_C(self) -> float:
        if self._log_terms == 0:
            return math.inf
        return self.min_threshold * self.epsilon / self._log_terms

    @property
    def threshold(self) -> int:
        if self.C is None:
            return self.min_threshold
        return max(1, math.ceil(self.C / self.epsilon * self._log_terms - 1e-9))

    @property
    def threshold_tail(self) -> float:
        return geom_tail(self.threshold, math.exp(self.epsilon2))

    @property
    def bucket_width(self) -> int:
        if self.err is not None:
            return self.err
        w = self.err_C / self.epsilon * math.log(self.n) ** 2.5 * math.log(1 / self.sigma)
        return max(1, math.ceil(w - 1e-9))

    @property
    def bucket_count(self) -> int:
        return math.ceil(self.n / self.bucket_width + 1)


@dataclass(frozen=True)
class PrivateDensityReport(DensityReport):
    """Release of a private run plus non-released diagnostics."""

    d_max: int = 0
    best_step: int = 0
    psum_updates: int = 0
    zero_updates: int = 0
    order: tuple = field(default=(), repr=False)


def release_density(edge_count: int, set_size: int, epsilon_prime: float, rng) -> float:
    """min((|E(S)| + Geom(e^epsilon')) / |S|, |S|)."""
    if set_size < 1:
        raise ValueError("set_size must be >= 1")
    noisy = edge_count + sample_geom(math.exp(epsilon_prime), rng)
    return min(noisy / set_size, float(set_size))


class LinkedLists:
    """Disjoint doubly linked lists over items 0..n-1 with O(1) move and removal."""

    __slots__ = ("head", "nxt", "prv", "home", "sizes")

    def __init__(self, n_items: int, n_lists: int):
        self.head = [-1] * n_lists
        self.nxt = [-1] * n_items
        self.prv = [-1] * n_items
        self.home = [-1] * n_items  # list holding the item, -1 if none
        self.sizes = [0] * n_lists

    def push(self, lst: int, x: int) -> None:
        h = self.head[lst]
        self.nxt[x] = h
        self.prv[x] = -1
        if h != -1:
            self.prv[h] = x
        self.head[lst] = x
        self.home[x] = lst
        self.sizes[lst] += 1

    def remove(self, x: int) -> None:
        lst = self.home[x]
        if lst == -1:
            return
        p, q = self.prv[x], self.nxt[x]
        if p != -1:
            self.nxt[p] = q
        else:
            self.head[lst] = q
        if q != -1:
            self.prv[q] = p
        self.home[x] = -1
        self.sizes[lst] -= 1

    def pop(self, lst: int) -> int:
        x = self.head[lst]
        self.remove(x)
        return x

    def items(self, lst: int) -> list[int]:
        out, x = [], self.head[lst]
        while x != -1:
            out.append(x)
            x = self.nxt[x]
        return out


class ScheduleTable:
    """Slot ``t`` lists the vertices whose threshold check fires at step ``t`` (1..n)."""

    def __init__(self, n: int):
        self.n = n
        self.lists = LinkedLists(n, n + 1)

    def place(self, v: int, step) -> None:
        self.lists.remove(v)
        if step <= self.n:
            self.lists.push(step, v)

    def discard(self, v: int) -> None:
        self.lists.remove(v)

    def take(self, step: int) -> list[int]:
        due = self.lists.items(step)
        for v in due:
            self.lists.remove(v)
        return due

    def slot_of(self, v: int):
        s = self.lists.home[v]
        return INFINITY if s == -1 else s


class BucketQueue:
    """Vertices bucketed by noisy residual degree; bucket i is centred on (i - 1) * err."""

    def __init__(self, n: int, err: int, bucket_count: int):
        self.err = err
        self.B = bucket_count
        self.lists = LinkedLists(n, bucket_count + 1)  # index 0 is the always-empty bucket

    def bucket_of(self, score: int) -> int:
        i = (2 * score + self.err) // (2 * self.err) + 1
        return 1 if i < 1 else (self.B if i > self.B else i)

    def insert(self, v: int, score: int) -> int:
        b = self.bucket_of(score)
        self.lists.push(b, v)
        return b

    def relocate(self, v: int, score: int) -> int:
        b = self.bucket_of(score)
        if self.lists.home[v] != b:
            self.lists.remove(v)
            self.lists.push(b, v)
        return b

    def where(self, v: int) -> int:
        return self.lists.home[v]


class _Peel:
    """State shared by both variants."""

    def __init__(self, g: Graph, budget: PrivacyBudget, rng):
        if g.n == 0:
            raise ValueError("graph has no vertices")
        if budget.n != g.n:
            raise ValueError(f"budget was built for n={budget.n}, graph has n={g.n}")
        self.g = g
        self.n = n = g.n
        self.rng = rng
        self.budget = budget
        self.threshold = 0 if rng is NOISELESS else budget.threshold
        self.gamma_thr = math.exp(budget.epsilon2)
        gamma_deg = math.exp(budget.epsilon0 / 2)

        deg = g.degrees.tolist()
        self.noisy_degree = [deg[v] + sample_geom(gamma_deg, rng) for v in range(n)]
        self.psum: list[PrefixSumMechanism | None] = [None] * n  # created on first flush
        self.psum_out = [0] * n
        self.cnt = [0] * n
        self.fed = [0] * n  # exact total pushed into each counter (diagnostics only)
        self.thr_noise = [sample_geom(self.gamma_thr, rng) for _ in range(n)]
        self.alive = [True] * n
        self.schedule = ScheduleTable(n)
        self.psum_updates = 0
        self.zero_updates = 0
        for v in range(n):
            self.reschedule(v, 0)

    def score(self, v: int) -> int:
        return self.noisy_degree[v] - self.psum_out[v]

    def reschedule(self, v: int, now: int) -> None:
        """Sample when v's next threshold check fires; checks at steps now+1, now+2, ..."""
        tau = sample_crossing_time(self.cnt[v], self.thr_noise[v], self.threshold, self.gamma_thr,
                                   self.rng, horizon=self.n - now)
        self.schedule.place(v, now + tau)

    def flush(self, u: int, step: int) -> None:
        c = self.cnt[u]
        mech = self.psum[u]
        if mech is None:
            mech = self.psum[u] = PrefixSumMechanism(self.n, self.budget.epsilon1, self.rng)
        self.psum_out[u] = mech.update(c)
        self.fed[u] += c
        self.psum_updates += 1
        if c == 0:
            self.zero_updates += 1
        self.cnt[u] = 0
        self.thr_noise[u] = sample_geom(self.gamma_thr, self.rng)
        self.reschedule(u, step)

    def depart(self, v: int, step: int) -> list[int]:
        """Remove v; bump neighbour counters and run this step's due threshold checks.

        Returns the vertices whose counters were flushed.
        """
        self.alive[v] = False
        self.schedule.discard(v)
        alive, cnt = self.alive, self.cnt
        for u in self.g.adjacency[v]:
            if alive[u]:
                cnt[u] += 1
                # the check for this step has not happened yet
                self.reschedule(u, step - 1)
        due = self.schedule.take(step)
        for u in due:
            self.flush(u, step)
        return due

    def check_bookkeeping(self) -> None:
        """Cnt(v) + fed(v) equals the number of departed neighbours for every residual v."""
        for v in range(self.n):
            if self.alive[v]:
                departed = sum(1 for u in self.g.adjacency[v] if not self.alive[u])
                assert self.cnt[v] >= 0
                assert self.cnt[v] + self.fed[v] == departed, f"counter identity broken at {v}"

    def finish(self, order: list[int], best_step: int, d_max: int) -> PrivateDensityReport:
        # S* is the residual set just before the best step's removal; V if no score was positive
        subset = frozenset(order[best_step:])
        e = induced_edge_count(self.g, subset)
        released = release_density(e, len(subset), self.budget.epsilon_prime, self.rng)
        return PrivateDensityReport(
            subset, e / len(subset), released, d_max=d_max, best_step=best_step,
            psum_updates=self.psum_updates, zero_updates=self.zero_updates, order=tuple(order))


def dp_densest_quasilinear(g: Graph, budget: PrivacyBudget, rng, *, check: bool = False) -> PrivateDensityReport:
    """Private peeling that always removes the minimum noisy score (ties to the lowest id).

    With ``rng=NOISELESS`` every noise is 0 and the flush threshold drops to
    0, so each departed neighbour is pushed immediately (test mode).
    ``check`` asserts the counter bookkeeping identity after every step.
    """
    st = _Peel(g, budget, rng)
    heap = [(st.score(v), v) for v in range(st.n)]
    heapq.heapify(heap)
    order: list[int] = []
    d_max, best_step = 0, 0
    for step in range(1, st.n + 1):
        while True:
            s, v = heapq.heappop(heap)
            if st.alive[v] and s == st.score(v):
                break
        if d_max < s:
            d_max, best_step = s, step - 1
        order.append(v)
        for u in st.depart(v, step):
            heapq.heappush(heap, (st.score(u), u))
        if check:
            st.check_bookkeeping()
    return st.finish(order, best_step, d_max)


def dp_densest_linear(g: Graph, budget: PrivacyBudget, rng, *, check: bool = False) -> PrivateDensityReport:
    """Private peeling over a bucket queue of width ``budget.bucket_width``.

    Each step pops the head of the lowest non-empty bucket. The scan starts
    one bucket below the previous pop, or lower if a flush moved a vertex
    further down. ``check`` also asserts that every vertex sits in the bucket
    its score dictates.
    """
    st = _Peel(g, budget, rng)
    bq = BucketQueue(st.n, budget.bucket_width, budget.bucket_count)
    for v in range(st.n):
        bq.insert(v, st.score(v))
    head = bq.lists.head
    order: list[int] = []
    d_max, best_step = 0, 0
    scan = 1
    for step in range(1, st.n + 1):
        idx = scan
        while head[idx] == -1:
            idx += 1
        v = bq.lists.pop(idx)
        s = st.score(v)
        if d_max < s:
            d_max, best_step = s, step - 1
        order.append(v)
        scan = max(idx - 1, 1)
        for u in st.depart(v, step):
            b = bq.relocate(u, st.score(u))
            if b < scan:
                scan = b
        if check:
            st.check_bookkeeping()
            for u in range(st.n):
                if st.alive[u]:
                    assert bq.where(u) == bq.bucket_of(st.score(u)), f"vertex {u} in wrong bucket"
    return st.finish(order, best_step, d_max)
