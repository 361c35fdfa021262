"""Calibrate the constants frozen in tests/fixtures/calibration.json.

Uses seed ranges disjoint from the ones the acceptance tests run on. Re-run
only when an algorithm changes; the output is committed.
"""

import json
import math
from pathlib import Path

import numpy as np

from densedp.densest import PrivacyBudget, dp_densest_linear
from densedp.generators import gen_planted_clique
from densedp.prefix_sum import PrefixSumMechanism

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "calibration.json"

UTILITY_SEEDS = range(10_000, 10_100)
PSUM_SEEDS = range(50_000, 51_000)


def ceil_sig(x: float, digits: int = 4) -> float:
    """Round up to ``digits`` significant figures so the frozen constant never undercuts the measured one."""
    scale = 10.0 ** (math.floor(math.log10(x)) - digits + 1)
    return round(math.ceil(x / scale) * scale, 12)


def utility_kappa() -> float:
    n, k, eps, sigma = 1000, 60, 2.0, 2.0 ** -10
    g = gen_planted_clique(n, k)
    opt = (k - 1) / 2
    scale = (1 / eps) * math.log(n) ** 2.5 * math.log(1 / sigma)
    budget = PrivacyBudget(eps, n, sigma=sigma)
    shortfall = [max(0.0, opt / 2 - dp_densest_linear(g, budget, np.random.default_rng(s)).true_density) / scale
                 for s in UTILITY_SEEDS]
    return max(shortfall)


def psum_c() -> float:
    N, eps = 1024, 1.0
    scale = (1 / eps) * math.log(N) ** 1.5 * math.log(100)
    worst = []
    for s in PSUM_SEEDS:
        rng = np.random.default_rng(s)
        mech = PrefixSumMechanism(N, eps, rng)
        stream = rng.integers(0, 2, size=N).tolist()
        worst.append(max(abs(mech.update(x) - mech.true_sum) for x in stream) / scale)
    return max(worst)


def main():
    OUT.parent.mkdir(parents=True, exist_ok=True)
    data = {
        "utility_kappa": ceil_sig(utility_kappa()),
        "utility_seeds": [UTILITY_SEEDS.start, UTILITY_SEEDS.stop],
        "psum_c": ceil_sig(psum_c()),
        "psum_seeds": [PSUM_SEEDS.start, PSUM_SEEDS.stop],
    }
    OUT.write_text(json.dumps(data, indent=2) + "\n")
    print(json.dumps(data, indent=2))


if __name__ == "__main__":
    main()
