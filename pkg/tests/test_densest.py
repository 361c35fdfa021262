import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import densedp.densest as densest_mod
import densedp.prefix_sum as prefix_mod
from conftest import calibration
from densedp.densest import (
    BucketQueue,
    LinkedLists,
    PrivacyBudget,
    ScheduleTable,
    dp_densest_linear,
    dp_densest_quasilinear,
    release_density,
)
from densedp.generators import gen_gnm, gen_gnp, gen_planted_clique
from densedp.graph import density, from_edges
from densedp.noise import INFINITY, NOISELESS, geom_tail
from densedp.oracles import charikar_peel, peel_order
from densedp.prefix_sum import level_count

VARIANTS = [dp_densest_quasilinear, dp_densest_linear]


def random_small_graph(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 51))
    return gen_gnp(n, float(rng.choice([0.05, 0.1, 0.2, 0.4])), seed)


# release_density

def test_release_noiseless():
    assert release_density(10, 5, 1.0, NOISELESS) == 2.0


def test_release_clamped_by_set_size():
    rng = np.random.default_rng(0)
    assert all(release_density(0, 1, 0.1, rng) <= 1 for _ in range(2000))


def test_release_accuracy_45_over_10():
    rng = np.random.default_rng(1)
    hits = sum(abs(release_density(45, 10, 1.0, rng) - 4.5) <= 0.7 for _ in range(10000))
    assert hits >= 9900


def test_release_rejects_empty_set():
    with pytest.raises(ValueError):
        release_density(0, 0, 1.0, NOISELESS)


# PrivacyBudget

def test_budget_split_adds_up():
    b = PrivacyBudget(1.3, 100)
    assert b.epsilon0 + b.epsilon1 + b.epsilon2 + b.epsilon_prime == pytest.approx(1.3)
    assert b.epsilon0 == b.epsilon1 == b.epsilon2 == b.epsilon_prime


@pytest.mark.parametrize("eps, n, sigma", [(0.5, 10, 0.1), (2.0, 1000, 2 ** -10), (1.0, 5241, 2 ** -30)])
def test_default_threshold_is_smallest_meeting_tail(eps, n, sigma):
    b = PrivacyBudget(eps, n, sigma=sigma)
    gamma = math.exp(b.epsilon2)
    assert geom_tail(b.threshold, gamma) <= sigma / n
    assert b.threshold == 1 or geom_tail(b.threshold - 1, gamma) > sigma / n


def test_small_C_is_rejected_with_minimum():
    with pytest.raises(ValueError, match="C >= 1.08"):
        PrivacyBudget(2.0, 1000, sigma=2 ** -10, C=0.5)
    b = PrivacyBudget(2.0, 1000, sigma=2 ** -10, C=1.2)
    assert b.threshold == math.ceil(1.2 / 2.0 * math.log(1000) * math.log(2 ** 10))


@pytest.mark.parametrize("kwargs", [dict(epsilon=0), dict(sigma=1.0), dict(sigma=0.0), dict(n=0),
                                    dict(C=-1.0), dict(err=0)])
def test_budget_rejects_bad_parameters(kwargs):
    base = dict(epsilon=1.0, n=10)
    with pytest.raises(ValueError):
        PrivacyBudget(**{**base, **kwargs})


def test_bucket_width_and_count():
    b = PrivacyBudget(1.0, 1000, sigma=2 ** -10, err=5)
    assert (b.bucket_width, b.bucket_count) == (5, 201)
    b = PrivacyBudget(1.0, 1000, sigma=2 ** -10)
    assert b.bucket_width == math.ceil(0.01 * math.log(1000) ** 2.5 * math.log(2 ** 10))


def test_budget_must_match_graph():
    with pytest.raises(ValueError):
        dp_densest_linear(gen_planted_clique(10, 3), PrivacyBudget(1.0, 11), NOISELESS)


# data structures

@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(["push", "remove"]), st.integers(0, 9), st.integers(0, 3)), max_size=60))
def test_linked_lists_match_model(ops):
    ll = LinkedLists(10, 4)
    model = {}
    for op, x, lst in ops:
        if op == "push" and x not in model:
            ll.push(lst, x)
            model[x] = lst
        elif op == "remove":
            ll.remove(x)
            model.pop(x, None)
    for lst in range(4):
        members = ll.items(lst)
        assert sorted(members) == sorted(x for x, h in model.items() if h == lst)
        assert ll.sizes[lst] == len(members)


def test_schedule_table():
    t = ScheduleTable(5)
    t.place(0, 3)
    t.place(1, 3)
    t.place(2, INFINITY)
    t.place(3, 9)
    assert (t.slot_of(2), t.slot_of(3)) == (INFINITY, INFINITY)
    t.place(1, 4)
    assert t.take(3) == [0]
    assert t.slot_of(0) == INFINITY
    t.discard(1)
    assert t.take(4) == []


@pytest.mark.parametrize("score, bucket", [(-50, 1), (-1, 1), (0, 1), (2, 1), (3, 2), (7, 2), (8, 3), (10**6, 21)])
def test_bucket_of(score, bucket):
    assert BucketQueue(100, 5, 21).bucket_of(score) == bucket


# noiseless degeneration

def test_noiseless_quasilinear_follows_charikar_order():
    for seed in range(100):
        g = random_small_graph(seed)
        r = dp_densest_quasilinear(g, PrivacyBudget(1.0, g.n), NOISELESS, check=True)
        order, removed = peel_order(g)
        assert list(r.order) == order.tolist()
        # kept set: residual set before the first removal of maximum degree
        k = int(np.argmax(removed)) if removed.max() > 0 else 0
        assert r.subset == frozenset(order[k:].tolist())
        assert r.noisy_density == pytest.approx(r.true_density)


def test_noiseless_linear_unit_buckets_near_charikar():
    for seed in range(100):
        g = random_small_graph(seed)
        r = dp_densest_linear(g, PrivacyBudget(1.0, g.n, err=1), NOISELESS, check=True)
        assert r.true_density >= charikar_peel(g).true_density - 1


@pytest.mark.parametrize("alg", VARIANTS)
def test_edgeless_graph_keeps_everything(alg):
    g = from_edges(6, [])
    r = alg(g, PrivacyBudget(1.0, 6), NOISELESS)
    assert (r.subset, r.true_density, r.d_max) == (frozenset(range(6)), 0.0, 0)


# noisy runs

@pytest.mark.parametrize("alg", VARIANTS)
def test_bookkeeping_identity_with_flushes(alg):
    flushed = 0
    for seed in range(5):
        g = gen_gnp(60, 0.5, seed)
        r = alg(g, PrivacyBudget(4.0, g.n, sigma=0.1, err=2), np.random.default_rng(seed), check=True)
        flushed += r.psum_updates
        assert r.psum_updates <= 4 * g.m
    assert flushed > 0


@pytest.mark.parametrize("alg", VARIANTS)
def test_seeded_runs_are_reproducible(alg):
    g = gen_gnm(300, 1500, seed=2)
    b = PrivacyBudget(1.0, g.n)
    a = alg(g, b, np.random.default_rng(7))
    c = alg(g, b, np.random.default_rng(7))
    assert a == c and a.order == c.order


@pytest.mark.parametrize("alg", VARIANTS)
def test_report_is_consistent(alg):
    g = gen_planted_clique(200, 20)
    r = alg(g, PrivacyBudget(2.0, g.n), np.random.default_rng(3))
    assert r.size >= 1
    assert r.true_density == pytest.approx(density(g, r.subset))
    assert sorted(r.order) == list(range(g.n))
    assert r.subset == frozenset(r.order[r.best_step:])
    assert r.noisy_density <= r.size


@pytest.mark.parametrize("alg", VARIANTS)
def test_single_edge_large_epsilon(alg):
    g = from_edges(2, [(0, 1)])
    rng = np.random.default_rng(4)
    for _ in range(200):
        r = alg(g, PrivacyBudget(60.0, 2), rng)
        assert r.size in (1, 2)
        assert abs(r.noisy_density - 0.5) <= 1


def test_clique_with_isolated_vertices_utility():
    g = from_edges(100, [(i, j) for i in range(20) for j in range(i + 1, 20)])
    eps, sigma, opt = 2.0, 2 ** -10, 9.5
    slack = calibration()["utility_kappa"] * (1 / eps) * math.log(g.n) ** 2.5 * math.log(1 / sigma)
    b = PrivacyBudget(eps, g.n, sigma=sigma)
    ok = sum(dp_densest_quasilinear(g, b, np.random.default_rng(s)).true_density >= opt / 2 - slack
             for s in range(100))
    assert ok >= 95


def test_psum_update_bound_small():
    for seed in range(10):
        g = gen_gnm(400, 1000 + 100 * seed, seed=seed)
        r = dp_densest_linear(g, PrivacyBudget(0.5, g.n, sigma=0.5, err=3), np.random.default_rng(seed))
        assert r.psum_updates <= 4 * g.m


# structural privacy audit: every noise draw has the scale its budget share dictates

class NoiseLog:
    def __init__(self, monkeypatch):
        self.gammas = []
        for mod in (densest_mod, prefix_mod):
            real = mod.sample_geom
            monkeypatch.setattr(mod, "sample_geom", self._wrap(real))

    def _wrap(self, real):
        def spy(gamma, rng):
            self.gammas.append(gamma)
            return real(gamma, rng)
        return spy

    def count(self, gamma):
        return sum(math.isclose(x, gamma) for x in self.gammas)


@pytest.mark.parametrize("alg", VARIANTS)
def test_noise_accounting(alg, monkeypatch):
    log = NoiseLog(monkeypatch)
    g = gen_gnp(60, 0.5, 1)
    eps = 4.0
    b = PrivacyBudget(eps, g.n, sigma=0.1, err=2)
    r = alg(g, b, np.random.default_rng(0))
    assert r.psum_updates > 0
    deg = math.exp(eps / 8)
    thr = math.exp(eps / 4)
    node = math.exp(eps / 4 / level_count(g.n))
    assert log.count(deg) == g.n
    # one threshold noise per vertex, one per flush, plus the final release at the same scale
    assert log.count(thr) == g.n + r.psum_updates + 1
    assert log.count(node) == r.psum_updates
    assert len(log.gammas) == 2 * g.n + 2 * r.psum_updates + 1


def test_release_goes_through_noise(monkeypatch):
    monkeypatch.setattr(densest_mod, "sample_geom", lambda gamma, rng: 3)
    assert release_density(10, 5, 1.0, np.random.default_rng(0)) == 13 / 5
