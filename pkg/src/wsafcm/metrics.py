"""Lifetime and energy metrics over simulation traces, plus multi-run aggregation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from statistics import mean, stdev

from .protocol import SimulationTrace, intra_cluster_distance  # noqa: F401 (re-export)
from .stats import cohens_d, paired_t_test

DEFAULT_CHECKPOINTS = (200, 400, 500, 600)


@dataclass(frozen=True)
class LifetimeMetrics:
    """Round indices of node deaths; ``None`` means the event never happened."""

    fnd: int | None
    lnd: int | None
    half_life: int | None
    p90_death: int | None


@dataclass
class RunSummary:
    strategy: str
    seed: int
    lifetime: LifetimeMetrics
    residual_at: dict = field(default_factory=dict)
    mean_intra_distance: float = 0.0
    rounds: int = 0
    node_count: int = 1

    def metric(self, name: str):
        if name in ("fnd", "lnd", "half_life", "p90_death"):
            return getattr(self.lifetime, name)
        if name == "mean_intra_distance":
            return self.mean_intra_distance
        if name.startswith("residual_at_"):
            return self.residual_at.get(int(name.rsplit("_", 1)[1]))
        if name.startswith("residual_per_node_at_"):
            total = self.residual_at.get(int(name.rsplit("_", 1)[1]))
            return None if total is None else total / self.node_count
        raise KeyError(name)

    def metric_names(self) -> list:
        names = ["fnd", "lnd", "half_life", "p90_death", "mean_intra_distance"]
        names += [f"residual_at_{r}" for r in sorted(self.residual_at)]
        return names + [f"residual_per_node_at_{r}" for r in sorted(self.residual_at)]


def lifetime_metrics(trace: SimulationTrace) -> LifetimeMetrics:
    if not trace.rounds:
        raise ValueError("trace has no rounds")
    n = trace.node_count
    fnd = lnd = half = p90 = None
    for log in trace.rounds:
        dead = n - log.alive_count
        if fnd is None and log.dead_this_round:
            fnd = log.round_index
        if half is None and dead >= 0.5 * n:
            half = log.round_index
        if p90 is None and dead >= 0.9 * n:
            p90 = log.round_index
        if lnd is None and log.alive_count == 0:
            lnd = log.round_index
    return LifetimeMetrics(fnd=fnd, lnd=lnd, half_life=half, p90_death=p90)


def residual_at(trace: SimulationTrace, round_index: int):
    """Network residual energy (J) after ``round_index``.

    Zero once the network is depleted; ``None`` if the run stopped at its
    round cap before reaching that round.
    """
    if round_index < 1:
        return trace.initial_energy_total
    if round_index <= len(trace.rounds):
        return trace.rounds[round_index - 1].total_residual_energy
    if trace.rounds and trace.rounds[-1].alive_count == 0:
        return 0.0
    return None


def pre_fnd_intra_distance(trace: SimulationTrace, fnd: int | None = None) -> list:
    """Per-round mean intra-cluster distances for the rounds before the first death."""
    if fnd is None:
        fnd = lifetime_metrics(trace).fnd
    return [log.mean_intra_cluster_distance for log in trace.rounds
            if fnd is None or log.round_index < fnd]


def summarize_run(trace: SimulationTrace, checkpoints=DEFAULT_CHECKPOINTS) -> RunSummary:
    life = lifetime_metrics(trace)
    intra = pre_fnd_intra_distance(trace, life.fnd)
    if not intra:
        intra = [trace.rounds[0].mean_intra_cluster_distance]
    return RunSummary(
        strategy=trace.strategy.value,
        seed=trace.seed,
        lifetime=life,
        residual_at={r: residual_at(trace, r) for r in checkpoints},
        mean_intra_distance=mean(intra),
        rounds=trace.terminated_at,
        node_count=trace.node_count,
    )


def aggregate_runs(summaries) -> dict:
    """Per-metric ``(mean, sd)``; sd is ``None`` with fewer than two values.

    Runs where a metric was never reached are left out of that metric.
    """
    summaries = list(summaries)
    if not summaries:
        raise ValueError("aggregate_runs needs at least one summary")
    out = {}
    for name in summaries[0].metric_names():
        values = [s.metric(name) for s in summaries]
        values = [v for v in values if v is not None]
        if not values:
            out[name] = (None, None)
            continue
        out[name] = (mean(values), stdev(values) if len(values) >= 2 else None)
    return out


@dataclass
class ComparisonRow:
    metric: str
    strategy: str
    mean: float | None
    sd: float | None
    t: float | None = None
    p: float | None = None
    d: float | None = None
    pairs: int = 0


@dataclass
class ComparisonReport:
    reference: str
    seeds: list
    rows: list = field(default_factory=list)

    def row(self, metric: str, strategy: str) -> ComparisonRow:
        for r in self.rows:
            if r.metric == metric and r.strategy == strategy:
                return r
        raise KeyError((metric, strategy))

    def to_dict(self) -> dict:
        def num(x):
            if x is None:
                return None
            if isinstance(x, float) and math.isinf(x):
                return "inf" if x > 0 else "-inf"
            return x

        return {
            "reference": self.reference,
            "seeds": list(self.seeds),
            "rows": [
                {"metric": r.metric, "strategy": r.strategy, "mean": num(r.mean), "sd": num(r.sd),
                 "t": num(r.t), "p": num(r.p), "d": num(r.d), "pairs": r.pairs}
                for r in self.rows
            ],
        }


def compare_strategies(runs: dict, reference: str = "wsa-fcm") -> ComparisonReport:
    """Build the comparison table from ``{strategy: [RunSummary, ...]}``.

    Every strategy is tested against ``reference`` with the paired t-test and
    d_z, pairing runs by seed; t and d are signed as reference minus the
    strategy (so the reference row itself reads t=0, p=1, d=0). Pairs where
    either value is missing are dropped.
    """
    if reference not in runs:
        raise ValueError(f"reference strategy {reference!r} has no runs")
    ref_by_seed = {s.seed: s for s in runs[reference]}
    seeds = sorted(ref_by_seed)
    report = ComparisonReport(reference=reference, seeds=seeds)
    metric_names = runs[reference][0].metric_names()

    for strategy, summaries in runs.items():
        agg = aggregate_runs(summaries)
        by_seed = {s.seed: s for s in summaries}
        for name in metric_names:
            mu, sd = agg[name]
            row = ComparisonRow(metric=name, strategy=strategy, mean=mu, sd=sd)
            pairs = [(ref_by_seed[k].metric(name), by_seed[k].metric(name))
                     for k in seeds if k in by_seed]
            pairs = [(a, b) for a, b in pairs if a is not None and b is not None]
            row.pairs = len(pairs)
            if len(pairs) >= 2:
                a, b = zip(*pairs)
                row.t, row.p = paired_t_test(a, b)
                row.d = cohens_d(a, b)
            report.rows.append(row)
    return report
