"""Experiment orchestration behind the CLI: single runs, strategy comparison, size sweep."""

from __future__ import annotations

import dataclasses
import logging
import time
import tracemalloc
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .config import ExperimentSpec
from .errors import ConfigError
from .metrics import ComparisonReport, compare_strategies, summarize_run
from .protocol import (
    SimulationTrace,
    Strategy,
    elect_cluster_heads,
    form_clusters,
    run_round,
    simulate,
    simulation_rngs,
)
from .radio import deploy_network
from .traces import (
    run_summary_dict,
    write_convergence_csv,
    write_json,
    write_report,
    write_sweep_csv,
    write_trace_csv,
)

log = logging.getLogger(__name__)


def run_simulation(spec: ExperimentSpec, strategy, seed: int) -> SimulationTrace:
    return simulate(
        spec.network, Strategy.parse(strategy), spec.radio, seed,
        round_cap=spec.round_cap, recluster_every=spec.recluster_every,
        wsa_config=spec.wsa, fcm_config=spec.fcm,
    )


def write_run(trace: SimulationTrace, out_dir) -> dict:
    """Write the per-round CSV, convergence CSV and JSON summary for one run."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"{trace.strategy.value}_seed{trace.seed}"
    paths = {
        "trace": write_trace_csv(trace, out / f"{stem}.csv"),
        "summary": write_json(run_summary_dict(trace), out / f"{stem}.json"),
    }
    conv = write_convergence_csv(trace, out / f"{stem}_convergence.csv")
    if conv is not None:
        paths["convergence"] = conv
    return paths


def _summarize_job(args):
    spec, strategy, seed = args
    return summarize_run(run_simulation(spec, strategy, seed), spec.checkpoints)


def compare(spec: ExperimentSpec, workers: int = 1) -> ComparisonReport:
    """Run every (strategy, seed) pair and test each strategy against the reference.

    The reference is WSA-FCM when it is among the strategies, otherwise the
    first listed strategy.
    """
    if len(spec.strategies) < 2:
        raise ConfigError("strategies", "compare needs at least two strategies")
    if len(spec.seeds) < 2:
        raise ConfigError("seeds", "compare needs at least two seeds (SD is undefined for one)")
    jobs = [(spec, s, seed) for s in spec.strategies for seed in spec.seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            summaries = list(pool.map(_summarize_job, jobs))
    else:
        summaries = []
        for job in jobs:
            log.info("running %s seed %d", job[1].value, job[2])
            summaries.append(_summarize_job(job))

    runs = {}
    for s in summaries:
        runs.setdefault(s.strategy, []).append(s)
    reference = Strategy.WSA_FCM if Strategy.WSA_FCM in spec.strategies else spec.strategies[0]
    return compare_strategies(runs, reference=reference.value)


def time_clustering_round(spec: ExperimentSpec, node_count: int, repetitions: int) -> dict:
    """Mean wall-clock of one full round (cluster, elect, transmit) at ``node_count``."""
    network = dataclasses.replace(spec.network, node_count=node_count)
    seed = spec.seeds[0]
    strategy = spec.strategies[0] if Strategy.WSA_FCM not in spec.strategies else Strategy.WSA_FCM

    def one_round(rep):
        deploy_rng, rng = simulation_rngs([seed, rep])
        nodes = deploy_network(network, deploy_rng)
        t0 = time.perf_counter()
        clustering = form_clusters(strategy, nodes, network, spec.radio, rng, spec.wsa, spec.fcm)
        assignment = elect_cluster_heads(nodes, clustering)
        run_round(nodes, assignment, network.sink, spec.radio)
        return time.perf_counter() - t0

    one_round(repetitions)  # warm-up, untimed
    elapsed = [one_round(rep) for rep in range(repetitions)]

    tracemalloc.start()
    try:
        one_round(repetitions + 1)
        _, peak = tracemalloc.get_traced_memory()
        peak_mb = peak / 2**20
    except Exception:  # pragma: no cover - tracing unsupported
        peak_mb = None
    finally:
        tracemalloc.stop()

    return {"n": node_count, "k": network.k, "ms_per_round": 1e3 * float(np.mean(elapsed)),
            "peak_mem_mb": peak_mb}


def sweep(spec: ExperimentSpec, sizes=None, repetitions=None) -> list:
    sizes = list(spec.sweep.sizes if sizes is None else sizes)
    repetitions = spec.sweep.repetitions if repetitions is None else repetitions
    if len(sizes) < 2:
        raise ConfigError("sweep.sizes", "needs at least two sizes")
    if repetitions < 5:
        raise ConfigError("sweep.repetitions", "must be >= 5")
    for n in sizes:
        if isinstance(spec.network.cluster_count, int) and spec.network.cluster_count > n:
            raise ConfigError("cluster_count", f"{spec.network.cluster_count} exceeds node_count {n}")

    measured = {}
    for n in sorted(set(sizes)):
        log.info("timing n=%d", n)
        measured[n] = time_clustering_round(spec, n, repetitions)
    base = measured[min(sizes)]["ms_per_round"]
    return [dict(measured[n], scaling_factor=measured[n]["ms_per_round"] / base) for n in sizes]


def write_sweep(rows, out_dir) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return write_sweep_csv(rows, out / "sweep.csv")


def write_comparison(report: ComparisonReport, out_dir) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return write_report(report, out / "comparison.json")
