import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats as sps

import oracles
from wsafcm.metrics import (
    LifetimeMetrics,
    RunSummary,
    aggregate_runs,
    compare_strategies,
    intra_cluster_distance,
    lifetime_metrics,
    residual_at,
    summarize_run,
)
from wsafcm.protocol import ClusterAssignment, RoundLog, SimulationTrace, Strategy
from wsafcm.radio import NetworkConfig, Node
from wsafcm.stats import betainc, cohens_d, paired_t_test, t_sf_two_sided

EMPTY = ClusterAssignment({}, {}, np.empty((0, 2)))


def synthetic_trace(n, deaths_per_round, energy_per_round=0.01):
    """Trace where ``deaths_per_round[r-1]`` nodes die in round r."""
    cfg = NetworkConfig(node_count=n, cluster_count=1)
    trace = SimulationTrace(cfg, Strategy.RANDOM_CH, seed=0, initial_energy_total=n * 0.5)
    alive, next_id, energy = n, 0, n * 0.5
    for r, k in enumerate(deaths_per_round, start=1):
        dead = list(range(next_id, next_id + k))
        next_id += k
        alive -= k
        energy = max(0.0, energy - energy_per_round) if alive else 0.0
        trace.rounds.append(RoundLog(r, alive, energy, dead, EMPTY, 1.0))
        trace.terminated_at = r
    return trace


def test_lifetime_all_die_first_round():
    life = lifetime_metrics(synthetic_trace(5, [5]))
    assert life == LifetimeMetrics(1, 1, 1, 1)


def test_lifetime_one_death_per_round_from_round_three():
    life = lifetime_metrics(synthetic_trace(10, [0, 0] + [1] * 10))
    assert (life.fnd, life.half_life, life.p90_death, life.lnd) == (3, 7, 11, 12)


def test_lifetime_no_deaths():
    life = lifetime_metrics(synthetic_trace(4, [0, 0, 0]))
    assert life == LifetimeMetrics(None, None, None, None)


def test_lifetime_empty_trace():
    with pytest.raises(ValueError):
        lifetime_metrics(synthetic_trace(4, []))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=40))
def test_lifetime_ordering(deaths):
    n = max(1, sum(deaths))
    life = lifetime_metrics(synthetic_trace(n, deaths))
    seq = [v for v in (life.fnd, life.half_life, life.p90_death, life.lnd) if v is not None]
    assert seq == sorted(seq)


def test_residual_at_checkpoints():
    trace = synthetic_trace(4, [0, 0, 0, 4])
    assert residual_at(trace, 0) == 2.0
    assert residual_at(trace, 2) == pytest.approx(1.98)
    assert residual_at(trace, 10) == 0.0
    capped = synthetic_trace(4, [0, 0])
    assert residual_at(capped, 10) is None


def _assignment(points, heads, membership):
    nodes = [Node(i, p, 0.5) for i, p in enumerate(points)]
    return nodes, ClusterAssignment(membership, heads, np.zeros((len(heads), 2)))


def test_intra_distance_simple():
    nodes, a = _assignment([(0, 0), (0, 0)], {0: 0}, {0: 0, 1: 0})
    assert intra_cluster_distance(a, nodes) == 0.0
    nodes, a = _assignment([(0, 0), (3, 0), (10, 10), (10, 15)], {0: 0, 1: 2}, {0: 0, 1: 0, 2: 1, 3: 1})
    assert intra_cluster_distance(a, nodes) == pytest.approx(4.0)
    nodes, a = _assignment([(0, 0)], {0: 0}, {0: 0})
    assert intra_cluster_distance(a, nodes) == 0.0


def test_intra_distance_matches_loop():
    rng = np.random.default_rng(0)
    pts = [tuple(p) for p in rng.uniform(0, 100, (12, 2))]
    labels = {i: int(c) for i, c in enumerate(rng.integers(0, 3, 12))}
    heads = {c: min(i for i, cc in labels.items() if cc == c) for c in set(labels.values())}
    nodes, a = _assignment(pts, heads, labels)
    ds = [oracles.dist(pts[i], pts[heads[c]]) for i, c in labels.items() if heads[c] != i]
    assert intra_cluster_distance(a, nodes) == pytest.approx(sum(ds) / len(ds), rel=1e-12)


def _summary(value, seed=0, strategy="x"):
    return RunSummary(strategy, seed, LifetimeMetrics(value, value + 10, value + 5, value + 8),
                      {200: 1.0}, 2.0, 100, 10)


def test_aggregate_identical_runs():
    agg = aggregate_runs([_summary(100), _summary(100)])
    assert all(sd == 0 for _, sd in agg.values())


def test_aggregate_hand_values():
    agg = aggregate_runs([_summary(v) for v in (678, 690, 666)])
    assert agg["fnd"] == (678, 12)
    mu, sd = agg["fnd"]
    assert sd == pytest.approx(oracles.sample_sd([678, 690, 666]))


def test_aggregate_single_and_empty():
    assert aggregate_runs([_summary(5)])["fnd"] == (5, None)
    with pytest.raises(ValueError):
        aggregate_runs([])


def test_aggregate_permutation_invariant():
    runs = [_summary(v) for v in (3, 9, 4, 17)]
    assert aggregate_runs(runs)["fnd"][0] == aggregate_runs(runs[::-1])["fnd"][0]


def test_paired_t_identical():
    assert paired_t_test([1, 2, 3], [1, 2, 3]) == (0.0, 1.0)
    assert cohens_d([1, 2, 3], [1, 2, 3]) == 0.0


def test_paired_t_zero_variance():
    t, p = paired_t_test([3, 4, 5], [1, 2, 3])
    assert t == math.inf and p == 0.0
    t, _ = paired_t_test([1, 2, 3], [3, 4, 5])
    assert t == -math.inf
    assert cohens_d([3, 4, 5], [1, 2, 3]) == math.inf


def test_paired_t_hand_example():
    t, p = paired_t_test([1, 2, 3, 4, 5], [0] * 5)
    assert t == pytest.approx(3 * math.sqrt(5) / math.sqrt(2.5), rel=1e-12)
    assert t == pytest.approx(4.242640687119285, rel=1e-12)
    assert p == pytest.approx(0.013235599563682695, abs=1e-6)


def test_cohens_d_definition():
    # two differences with mean 10 and sample SD 5
    h = 5 / math.sqrt(2)
    assert cohens_d([10 + h, 10 - h], [0, 0]) == pytest.approx(2.0, rel=1e-12)
    diff = [5.0, 15.0, 10.0, 12.0]
    assert cohens_d(diff, [0] * 4) == pytest.approx(np.mean(diff) / oracles.sample_sd(diff), rel=1e-12)


@pytest.mark.parametrize("t, df", [(2.776445, 4), (2.228139, 10), (12.7062, 1), (2.042272, 30)])
def test_t_tail_against_tabulated_critical_values(t, df):
    assert t_sf_two_sided(t, df) == pytest.approx(0.05, abs=1e-6)


def test_betainc_edges_and_symmetry():
    assert betainc(2, 3, 0.0) == 0.0 and betainc(2, 3, 1.0) == 1.0
    assert betainc(2.5, 0.5, 0.3) == pytest.approx(1 - betainc(0.5, 2.5, 0.7), rel=1e-12)
    with pytest.raises(ValueError):
        betainc(1, 1, 1.5)


def test_paired_input_validation():
    with pytest.raises(ValueError):
        paired_t_test([1, 2], [1])
    with pytest.raises(ValueError):
        paired_t_test([1], [2])


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 30), st.integers(0, 2**32 - 1), st.floats(-50, 50))
def test_paired_t_symmetry_and_shift(n, seed, shift):
    rng = np.random.default_rng(seed)
    a, b = rng.normal(0, 1, n), rng.normal(0.3, 1, n)
    t, p = paired_t_test(a, b)
    t2, p2 = paired_t_test(b, a)
    assert t == pytest.approx(-t2) and p == pytest.approx(p2)
    t3, p3 = paired_t_test(a + shift, b + shift)
    assert t3 == pytest.approx(t, rel=1e-6, abs=1e-9) and p3 == pytest.approx(p, abs=1e-6)


def test_compare_self_is_null():
    runs = {"wsa-fcm": [_summary(v, seed=s) for s, v in enumerate((5, 7, 9))]}
    report = compare_strategies(runs, reference="wsa-fcm")
    row = report.row("fnd", "wsa-fcm")
    assert (row.t, row.p, row.d) == (0.0, 1.0, 0.0)


def test_compare_pairs_by_seed_and_serialises():
    ref = [_summary(v, seed=s, strategy="wsa-fcm") for s, v in enumerate((10, 12, 15, 11))]
    other = [_summary(v, seed=s, strategy="random") for s, v in reversed(list(enumerate((8, 9, 14, 7))))]
    report = compare_strategies({"wsa-fcm": ref, "random": other})
    row = report.row("fnd", "random")
    t, p = sps.ttest_rel([10, 12, 15, 11], [8, 9, 14, 7])
    assert row.t == pytest.approx(t) and row.p == pytest.approx(p, abs=1e-6)
    d = report.to_dict()
    assert set(d["rows"][0]) == {"metric", "strategy", "mean", "sd", "t", "p", "d", "pairs"}
    assert {r["metric"] for r in d["rows"]} >= {"fnd", "lnd", "residual_at_200", "residual_per_node_at_200"}


def test_summarize_run_on_real_trace():
    from wsafcm.protocol import simulate
    trace = simulate(NetworkConfig(node_count=6, cluster_count=2, initial_energy=0.01), "random", seed=1)
    s = summarize_run(trace, checkpoints=(1, 5, 10_000))
    assert s.lifetime == lifetime_metrics(trace)
    assert s.residual_at[10_000] == 0.0
    assert s.residual_at[1] >= s.residual_at[5]
    assert s.node_count == 6
