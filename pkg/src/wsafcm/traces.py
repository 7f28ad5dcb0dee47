"""On-disk formats for traces, run summaries, comparison reports and sweeps."""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .metrics import ComparisonReport, lifetime_metrics
from .protocol import SimulationTrace

TRACE_COLUMNS = ["round", "alive", "total_residual_J", "dead_ids", "mean_intra_dist_m"]
CONVERGENCE_COLUMNS = ["round", "iteration", "best_fitness_J"]
SWEEP_COLUMNS = ["n", "k", "ms_per_round", "scaling_factor", "peak_mem_mb"]
SUMMARY_KEYS = ["strategy", "seed", "FND", "LND", "half_life", "p90_death", "rounds"]


def _fmt(x: float) -> str:
    return repr(float(x))


def write_trace_csv(trace: SimulationTrace, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRACE_COLUMNS)
        for log in trace.rounds:
            w.writerow([
                log.round_index,
                log.alive_count,
                _fmt(log.total_residual_energy),
                ";".join(str(i) for i in log.dead_this_round),
                _fmt(log.mean_intra_cluster_distance),
            ])
    return path


def write_convergence_csv(trace: SimulationTrace, path) -> Path | None:
    """Per-round WSA best-fitness curves; skipped when the strategy has none."""
    if not any(log.convergence_curve for log in trace.rounds):
        return None
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CONVERGENCE_COLUMNS)
        for log in trace.rounds:
            for it, value in enumerate(log.convergence_curve, start=1):
                w.writerow([log.round_index, it, _fmt(value)])
    return path


def run_summary_dict(trace: SimulationTrace) -> dict:
    life = lifetime_metrics(trace)
    return {
        "strategy": trace.strategy.value,
        "seed": trace.seed,
        "FND": life.fnd,
        "LND": life.lnd,
        "half_life": life.half_life,
        "p90_death": life.p90_death,
        "rounds": trace.terminated_at,
    }


def write_json(data, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(data, indent=2) + "\n")
    return path


def write_report(report: ComparisonReport, path) -> Path:
    return write_json(report.to_dict(), path)


def read_trace_csv(path) -> list:
    """Parse a trace CSV back into dicts with typed values."""
    rows = []
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != TRACE_COLUMNS:
            raise ValueError(f"unexpected trace columns {reader.fieldnames}")
        for row in reader:
            rows.append({
                "round": int(row["round"]),
                "alive": int(row["alive"]),
                "total_residual_J": float(row["total_residual_J"]),
                "dead_ids": [int(i) for i in row["dead_ids"].split(";") if i],
                "mean_intra_dist_m": float(row["mean_intra_dist_m"]),
            })
    return rows


def write_sweep_csv(rows, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        for r in rows:
            mem = "unavailable" if r["peak_mem_mb"] is None else f"{r['peak_mem_mb']:.3f}"
            w.writerow([r["n"], r["k"], f"{r['ms_per_round']:.3f}", f"{r['scaling_factor']:.3f}", mem])
    return path
