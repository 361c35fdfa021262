"""Continual-release private prefix sums (the binary tree mechanism).

Item ``t`` (1-based) belongs to one dyadic node per level; the node at level
``i`` ending at ``t`` covers ``[t - 2**i + 1, t]``. A node's noise is drawn once,
when the node closes, so updates cost O(1) amortized and a fresh instance
costs O(log N) memory regardless of how many updates it will eventually see.
The released prefix sum at time ``t`` is the sum of the noisy nodes selected
by the binary digits of ``t``.
"""

from __future__ import annotations

import math

from .noise import sample_geom


class CapacityError(RuntimeError):
    pass


def level_count(capacity: int) -> int:
    return math.ceil(math.log2(capacity)) + 1 if capacity > 1 else 1


class PrefixSumMechanism:
    """epsilon-DP counter over at most ``capacity`` integer updates.

    A +-1 change to one item alters at most ``levels`` node sums by 1, so
    each node gets Geom(exp(epsilon / levels)) noise.
    """

    __slots__ = ("capacity", "epsilon", "levels", "gamma", "rng", "items_seen",
                 "true_sum", "nodes_closed", "_output", "_alpha", "_noisy")

    def __init__(self, capacity: int, epsilon: float, rng):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        if not epsilon > 0:
            raise ValueError("epsilon must be > 0")
        self.capacity = capacity
        self.epsilon = epsilon
        self.levels = level_count(capacity)
        self.gamma = math.exp(epsilon / self.levels)
        self.rng = rng
        self.items_seen = 0
        self.true_sum = 0
        self.nodes_closed = 0
        self._output = 0
        self._alpha = [0] * self.levels  # exact sums of the nodes in the current decomposition
        self._noisy = [0] * self.levels

    def update(self, increment: int) -> int:
        """Append one item and return the new noisy prefix sum."""
        if self.items_seen >= self.capacity:
            raise CapacityError(f"prefix-sum mechanism is full ({self.capacity} updates)")
        t = self.items_seen = self.items_seen + 1
        self.true_sum += increment
        i = (t & -t).bit_length() - 1
        alpha, noisy = self._alpha, self._noisy
        node = increment
        out = self._output
        for j in range(i):
            node += alpha[j]
            out -= noisy[j]
            alpha[j] = 0
            noisy[j] = 0
        alpha[i] = node
        noisy[i] = node + sample_geom(self.gamma, self.rng)
        self.nodes_closed += 1
        self._output = out + noisy[i]
        return self._output

    def query(self) -> int:
        """Current released value; reading does not consume randomness."""
        return self._output

    @property
    def error(self) -> int:
        return abs(self._output - self.true_sum)


def psum_new(capacity: int, epsilon: float, rng) -> PrefixSumMechanism:
    return PrefixSumMechanism(capacity, epsilon, rng)


def psum_update(mech: PrefixSumMechanism, increment: int) -> int:
    return mech.update(increment)


def psum_query(mech: PrefixSumMechanism) -> int:
    return mech.query()
