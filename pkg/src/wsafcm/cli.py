"""Command-line entry point: ``wsafcm {run,compare,sweep}``.

Exit codes: 0 success, 1 invalid configuration, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys

from .config import ExperimentSpec, load_spec, parse_cluster_count, parse_seed_range
from .errors import ConfigError
from .experiments import compare, run_simulation, sweep, write_comparison, write_run, write_sweep
from .protocol import Strategy

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON experiment file (defaults apply for missing fields)")
    p.add_argument("--nodes", type=int, help="number of sensor nodes")
    p.add_argument("--clusters", help="cluster count, integer or 'auto'")
    p.add_argument("--rounds", type=int, help="round cap")
    p.add_argument("--recluster-every", type=int, dest="recluster_every",
                   help="re-run clustering every N rounds")
    p.add_argument("--out", help="output directory")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wsafcm", description="WSA-FCM sensor network clustering simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="simulate one strategy with one seed")
    _common(run)
    run.add_argument("--strategy", default="wsa-fcm", help="wsa-fcm | fcm-only | random")
    run.add_argument("--seed", type=int, default=1)

    cmp_ = sub.add_parser("compare", help="compare strategies over paired seeds")
    _common(cmp_)
    cmp_.add_argument("--strategy", action="append", dest="strategies",
                      help="strategy to include (repeatable)")
    cmp_.add_argument("--seeds", help="seed range a..b or list a,b,c")
    cmp_.add_argument("--workers", type=int, default=1)

    sw = sub.add_parser("sweep", help="time one clustering round at several network sizes")
    _common(sw)
    sw.add_argument("--sizes", help="comma separated node counts, e.g. 200,400,800")
    sw.add_argument("--repetitions", type=int)
    return parser


def spec_from_args(args) -> ExperimentSpec:
    spec = load_spec(args.config) if args.config else ExperimentSpec()
    net = {}
    if args.nodes is not None:
        net["node_count"] = args.nodes
    if args.clusters is not None:
        net["cluster_count"] = parse_cluster_count(args.clusters)
    changes = {}
    if net:
        changes["network"] = dataclasses.replace(spec.network, **net)
    if args.rounds is not None:
        changes["round_cap"] = args.rounds
    if args.recluster_every is not None:
        changes["recluster_every"] = args.recluster_every
    if args.out is not None:
        changes["out"] = args.out
    if getattr(args, "strategies", None):
        changes["strategies"] = tuple(args.strategies)
    if getattr(args, "seeds", None):
        changes["seeds"] = parse_seed_range(args.seeds)
    return spec.replace(**changes) if changes else spec


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        spec = spec_from_args(args)
        if args.command == "run":
            strategy = Strategy.parse(args.strategy)
            trace = run_simulation(spec, strategy, args.seed)
            for kind, path in write_run(trace, spec.out).items():
                print(f"{kind}: {path}")
        elif args.command == "compare":
            report = compare(spec, workers=args.workers)
            print(f"report: {write_comparison(report, spec.out)}")
        else:
            sizes = None
            if args.sizes:
                try:
                    sizes = [int(s) for s in args.sizes.split(",")]
                except ValueError:
                    raise ConfigError("sizes", f"cannot parse {args.sizes!r}") from None
            rows = sweep(spec, sizes=sizes, repetitions=args.repetitions)
            for r in rows:
                print(f"n={r['n']:5d} k={r['k']:3d} {r['ms_per_round']:9.2f} ms/round "
                      f"x{r['scaling_factor']:.2f}")
            print(f"sweep: {write_sweep(rows, spec.out)}")
    except ConfigError as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
