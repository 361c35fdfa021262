"""Experiment runner: algorithm registry, seeded trials and CSV output."""

from __future__ import annotations

import csv
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields

import numpy as np

from .densest import DEFAULT_ERR_C, DEFAULT_SIGMA, PrivacyBudget, dp_densest_linear, dp_densest_quasilinear
from .generators import gen_gnm, gen_planted_clique, gen_two_cliques
from .graph import DensityReport, Graph, read_edge_list
from .oracles import charikar_peel, exact_densest_bruteforce, randomized_response_densest

ALGORITHMS = ("exact", "charikar", "dp-quasilinear", "dp-linear", "rr-baseline")

CSV_HEADER = ("dataset", "n", "m", "algorithm", "epsilon", "seed", "d_star", "true_density",
              "set_size", "baseline_density", "ratio", "wall_time_s")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    algorithm: str
    input_path: str | None = None
    generator: str | None = None
    epsilons: tuple[float, ...] = (1.0,)
    sigma: float = DEFAULT_SIGMA
    C: float | None = None
    err_C: float = DEFAULT_ERR_C
    err: int | None = None
    trials: int = 1
    seed: int = 0
    out: str | None = None

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}; choose from {', '.join(ALGORITHMS)}")
        if (self.input_path is None) == (self.generator is None):
            raise ConfigError("give exactly one of an input path or a generator spec")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not self.epsilons or any(not e > 0 for e in self.epsilons):
            raise ConfigError("epsilon values must be > 0")
        if not 0 < self.sigma < 1:
            raise ConfigError("sigma must lie in (0, 1)")


@dataclass(frozen=True)
class ExperimentRecord:
    dataset: str
    n: int
    m: int
    algorithm: str
    epsilon: float
    seed: int
    d_star: float
    true_density: float
    set_size: int
    baseline_density: float
    ratio: float
    wall_time_s: float


def parse_generator(spec: str) -> Graph:
    """``planted:n,k``, ``twoclique:k1,k2`` or ``gnm:n,m[,seed]``."""
    try:
        kind, _, args = spec.partition(":")
        vals = [int(x) for x in args.split(",")]
        if kind == "planted" and len(vals) == 2:
            return gen_planted_clique(*vals)
        if kind == "twoclique" and len(vals) == 2:
            return gen_two_cliques(*vals)
        if kind == "gnm" and len(vals) in (2, 3):
            return gen_gnm(*vals)
    except ValueError as exc:
        raise ConfigError(f"bad generator spec {spec!r}: {exc}") from None
    raise ConfigError(f"bad generator spec {spec!r}")


def load_graph(config: ExperimentConfig) -> Graph:
    if config.generator is not None:
        return parse_generator(config.generator)
    return read_edge_list(config.input_path)


def run_algorithm(g: Graph, algorithm: str, epsilon: float, seed: int, *, sigma: float = DEFAULT_SIGMA,
                  C: float | None = None, err_C: float = DEFAULT_ERR_C, err: int | None = None) -> DensityReport:
    rng = np.random.default_rng(seed)
    if algorithm == "exact":
        return exact_densest_bruteforce(g)
    if algorithm == "charikar":
        return charikar_peel(g)
    if algorithm == "rr-baseline":
        return randomized_response_densest(g, epsilon, rng)
    budget = PrivacyBudget(epsilon, g.n, sigma=sigma, C=C, err_C=err_C, err=err)
    if algorithm == "dp-quasilinear":
        return dp_densest_quasilinear(g, budget, rng)
    if algorithm == "dp-linear":
        return dp_densest_linear(g, budget, rng)
    raise ConfigError(f"unknown algorithm {algorithm!r}")


def _trial(args) -> tuple[DensityReport, float]:
    g, config, epsilon, seed = args
    t0 = time.perf_counter()
    report = run_algorithm(g, config.algorithm, epsilon, seed, sigma=config.sigma, C=config.C,
                           err_C=config.err_C, err=config.err)
    return report, max(time.perf_counter() - t0, 1e-9)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("DENSEDP_THREADS", "1")))
    except ValueError:
        raise ConfigError("DENSEDP_THREADS must be an integer") from None


def run_experiment(config: ExperimentConfig, graph: Graph | None = None) -> list[ExperimentRecord]:
    """Run every (epsilon, trial) pair; trial seeds are ``config.seed + trial``.

    Records come back ordered by (epsilon, trial) whatever the execution order.
    """
    g = load_graph(config) if graph is None else graph
    if config.algorithm.startswith("dp-"):
        # a bad C should fail before any trial runs
        try:
            for eps in config.epsilons:
                PrivacyBudget(eps, g.n, sigma=config.sigma, C=config.C, err_C=config.err_C, err=config.err)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    base = charikar_peel(g).true_density  # once per dataset, shared by all trials
    jobs = [(g, config, eps, config.seed + t) for eps in config.epsilons for t in range(config.trials)]
    workers = _workers()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_trial, jobs))
    else:
        results = [_trial(j) for j in jobs]

    records = []
    for (_, _, eps, seed), (report, wall) in zip(jobs, results):
        ratio = report.true_density / base if base > 0 else (1.0 if report.true_density == 0 else math.inf)
        records.append(ExperimentRecord(
            dataset=g.name, n=g.n, m=g.m, algorithm=config.algorithm, epsilon=eps, seed=seed,
            d_star=report.noisy_density, true_density=report.true_density, set_size=len(report.subset),
            baseline_density=base, ratio=ratio, wall_time_s=wall))
    return records


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def write_csv(records, path) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow([_fmt(v) for v in astuple(r)])


def read_csv(path) -> list[ExperimentRecord]:
    types = {f.name: f.type for f in fields(ExperimentRecord)}
    out = []
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            out.append(ExperimentRecord(**{
                k: (int(v) if types[k] == "int" else float(v) if types[k] == "float" else v)
                for k, v in row.items()}))
    return out
