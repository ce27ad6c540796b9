"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 configuration error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .config import ConfigError, SweepSpec, parse_config
from .mac import run_simulation
from .metrics import throughput_report
from .presets import UnknownPresetError, preset_names, run_preset
from .sweep import run_sweep, write_csv
from .topology import deploy_uniform_disk, write_deployment_csv

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

RUN_REPORT_HEADER = [
    "seed", "environment", "frequency_hz", "disk_radius_m", "gateway_distance_m",
    "node_count", "payload_bytes", "mean_interarrival_s", "duration_s",
    "offered_norm", "throughput_norm", "offered_bps", "throughput_bps",
    "mean_node_throughput_bps",
    "sf7", "sf8", "sf9", "sf10", "sf11", "sf12", "out_of_range",
]


class _UsageExit(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad arguments; this tool reserves 2
    # for configuration problems, so remap usage failures to 1.
    def error(self, message: str) -> None:  # noqa: D102 - argparse override
        raise _UsageExit(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="marslora", description=__doc__)
    parser.add_argument("--version", action="version", version=f"marslora {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_cmd = sub.add_parser("run", help="simulate one scenario from a config file")
    run_cmd.add_argument("config", help="path to a scenario configuration file")
    run_cmd.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    run_cmd.add_argument("--out-dir", default=None, help="also write run_report.csv here")
    run_cmd.add_argument(
        "--dump-deployment", action="store_true",
        help="write the node positions to deployment.csv (requires --out-dir)",
    )

    sweep_cmd = sub.add_parser("sweep", help="run the sweep described by a config file")
    sweep_cmd.add_argument("config", help="path to a sweep configuration file")
    sweep_cmd.add_argument("--seed", type=int, default=None, help="master seed override")
    sweep_cmd.add_argument("--jobs", type=int, default=1, help="parallel worker count")
    sweep_cmd.add_argument("--out-dir", default=".", help="directory for the output CSV")

    preset_cmd = sub.add_parser("preset", help="run a bundled figure preset")
    preset_cmd.add_argument("name", help=f"one of: {', '.join(preset_names())}")
    preset_cmd.add_argument("--seed", type=int, default=1, help="master seed")
    preset_cmd.add_argument("--jobs", type=int, default=1, help="parallel worker count")
    preset_cmd.add_argument("--out-dir", default=".", help="directory for CSVs and manifest")
    preset_cmd.add_argument(
        "--format", choices=["csv"], default="csv", help="output format (csv only)"
    )
    return parser


def _read_config(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    return parse_config(text)


def _cmd_run(args: argparse.Namespace) -> int:
    parsed = _read_config(args.config)
    if isinstance(parsed, SweepSpec):
        raise ConfigError("'run' expects a scenario config without a [sweep] section")
    scenario = parsed
    seed = scenario.seed if args.seed is None else args.seed
    outcome = run_simulation(scenario, seed)
    report = throughput_report(outcome, scenario)
    print(f"seed: {seed}")
    print(f"environment: {scenario.channel.environment.value}")
    print(f"nodes in range: {len(outcome.node_states) - report.sf_histogram['out_of_range']}"
          f" / {len(outcome.node_states)}")
    print(f"generated/attempted/delivered packets: "
          f"{outcome.generated}/{outcome.attempted}/{outcome.delivered}")
    print(f"offered (normalized): {report.normalized_offered:.6g}")
    print(f"throughput (normalized): {report.normalized_throughput:.6g}")
    print(f"offered (bit/s): {report.offered_bits_rate_bps:.6g}")
    print(f"throughput (bit/s): {report.absolute_throughput_bps:.6g}")
    print(f"mean node throughput (bit/s): {report.mean_node_throughput_bps:.6g}")
    histogram = report.sf_histogram
    mix = ", ".join(f"SF{sf}: {histogram[sf]}" for sf in (7, 8, 9, 10, 11, 12))
    print(f"sf mix: {mix}, out of range: {histogram['out_of_range']}")
    if outcome.all_nodes_out_of_range:
        print("warning: no node is in range; all counters are zero")
    if args.out_dir is not None:
        row = [
            seed, scenario.channel.environment.value, scenario.channel.frequency_hz,
            scenario.geometry.disk_radius_m, scenario.geometry.gateway_distance_m,
            scenario.geometry.node_count, scenario.traffic.payload_bytes,
            scenario.traffic.mean_interarrival_s, scenario.duration_s,
            report.normalized_offered, report.normalized_throughput,
            report.offered_bits_rate_bps, report.absolute_throughput_bps,
            report.mean_node_throughput_bps,
            *[histogram[sf] for sf in (7, 8, 9, 10, 11, 12)],
            histogram["out_of_range"],
        ]
        path = Path(args.out_dir) / "run_report.csv"
        write_csv(path, RUN_REPORT_HEADER, [row])
        print(f"wrote {path}")
        if args.dump_deployment:
            deployment_path = Path(args.out_dir) / "deployment.csv"
            write_deployment_csv(
                deploy_uniform_disk(scenario.geometry, seed), deployment_path
            )
            print(f"wrote {deployment_path}")
    elif args.dump_deployment:
        raise ConfigError("--dump-deployment needs --out-dir")
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    parsed = _read_config(args.config)
    if not isinstance(parsed, SweepSpec):
        raise ConfigError("'sweep' expects a config file with a [sweep] section")
    path = run_sweep(parsed, master_seed=args.seed, parallelism=args.jobs,
                     out_dir=args.out_dir)
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_preset(args: argparse.Namespace) -> int:
    written = run_preset(
        args.name, master_seed=args.seed, parallelism=args.jobs, out_dir=args.out_dir
    )
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_preset(args)
    except _UsageExit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnknownPresetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except KeyboardInterrupt:
        return EXIT_RUNTIME
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
