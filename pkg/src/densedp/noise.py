"""Integer privacy noise: symmetric geometric sampling and threshold crossing times.

All samplers take the random source explicitly. Any object with a
``random()`` method returning floats in [0, 1) works (``numpy.random.Generator``,
``random.Random``). Passing :data:`NOISELESS` turns every draw into 0, which
is the test hook used to compare the private algorithms with their exact
counterparts; it must never be used for a real release.

Sampling is by inverse CDF from a double-precision uniform. Probabilities
below roughly 2**-53 are therefore not represented exactly, the usual
finite-precision caveat for floating-point noise generation.
"""

from __future__ import annotations

import math

INFINITY = math.inf


class _Noiseless:
    def __repr__(self) -> str:
        return "NOISELESS"


NOISELESS = _Noiseless()


def check_gamma(gamma: float) -> None:
    if not gamma > 1.0:
        raise ValueError(f"geometric parameter gamma must be > 1, got {gamma}")


def geom_pmf(k: int, gamma: float) -> float:
    """Probability mass of the symmetric geometric distribution at integer ``k``."""
    check_gamma(gamma)
    return (gamma - 1.0) / (gamma + 1.0) * gamma ** (-abs(k))


def geom_tail(s: int, gamma: float) -> float:
    """Pr[N > s] for N ~ Geom(gamma) and integer ``s``."""
    if s >= 0:
        return gamma ** (-s) / (gamma + 1.0)
    # symmetry: Pr[N > s] = 1 - Pr[N >= -s] = 1 - Pr[N > -s - 1]
    return 1.0 - gamma ** (s + 1) / (gamma + 1.0)


def sample_geom(gamma: float, rng) -> int:
    """Draw from Geom(gamma): Pr[k] = (gamma-1)/(gamma+1) * gamma**-|k|.

    One uniform picks the sign class (negative, zero, positive); a second
    gives the magnitude, since |k| - 1 given k != 0 is geometric with
    ratio 1/gamma.
    """
    check_gamma(gamma)
    if rng is NOISELESS:
        return 0
    u = rng.random()
    p_zero = (gamma - 1.0) / (gamma + 1.0)
    p_side = 1.0 / (gamma + 1.0)
    if u < p_zero:
        return 0
    w = 1.0 - rng.random()  # (0, 1]
    magnitude = 1 + int(math.log(w) / -math.log(gamma))
    return magnitude if u < p_zero + p_side else -magnitude


def geometric_mechanism(true_value: int, sensitivity: int, epsilon: float, rng) -> int:
    """Release ``true_value`` with Geom(exp(epsilon / sensitivity)) noise."""
    if sensitivity < 1:
        raise ValueError("sensitivity must be >= 1")
    if not epsilon > 0:
        raise ValueError("epsilon must be > 0")
    return true_value + sample_geom(math.exp(epsilon / sensitivity), rng)


def sample_geometric_steps(q: float, rng, horizon: int | None = None) -> float:
    """Number of Bernoulli(q) trials up to and including the first success.

    Returns :data:`INFINITY` when ``q == 0`` or the draw exceeds ``horizon``.
    """
    if q >= 1.0:
        return 1
    if q <= 0.0:
        return INFINITY
    w = 1.0 - rng.random()
    steps = max(1, math.ceil(math.log(w) / math.log1p(-q)))
    if horizon is not None and steps > horizon:
        return INFINITY
    return steps


def sample_crossing_time(cnt: int, persistent_noise: int, threshold: int, gamma: float, rng,
                         horizon: int | None = None) -> float:
    """Steps until ``cnt + persistent_noise + N > threshold`` first holds for fresh N.

    Each step draws an independent N ~ Geom(gamma) and ``cnt`` is assumed
    unchanged, so the answer is geometric with success probability
    ``Pr[N > threshold - cnt - persistent_noise]``. Step 1 is the next check.
    """
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    check_gamma(gamma)
    slack = threshold - cnt - persistent_noise
    if rng is NOISELESS:
        return 1 if slack < 0 else INFINITY
    return sample_geometric_steps(geom_tail(slack, gamma), rng, horizon)
