"""Grid execution: run many independent simulations, serially or in parallel.

Results are keyed by grid position, never by completion order, so serial
and parallel executions of the same grid emit identical tables.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

from .channel import DUST_PRESETS
from .config import SweepSpec
from .mac import build_node_states, run_simulation
from .metrics import sf_histogram, throughput_report
from .scenario import Scenario
from .seeding import derive_seed


@dataclass(frozen=True)
class RunResult:
    """Picklable per-run measurement bundle."""

    offered_norm: float
    throughput_norm: float
    offered_bps: float
    throughput_bps: float
    mean_node_throughput_bps: float
    sf_counts: tuple[int, ...]
    out_of_range: int
    all_nodes_out_of_range: bool


def apply_axis(scenario: Scenario, axis: str, value: Any) -> Scenario:
    """Return a copy of the scenario with one sweepable parameter replaced."""

    if axis == "gateway_distance":
        return replace(scenario, geometry=replace(scenario.geometry, gateway_distance_m=value))
    if axis == "disk_radius":
        return replace(scenario, geometry=replace(scenario.geometry, disk_radius_m=value))
    if axis == "frequency":
        return replace(scenario, channel=replace(scenario.channel, frequency_hz=value))
    if axis == "payload_bytes":
        return replace(scenario, traffic=replace(scenario.traffic, payload_bytes=int(value)))
    if axis == "mean_interarrival":
        return replace(scenario, traffic=replace(scenario.traffic, mean_interarrival_s=value))
    if axis == "dust_preset":
        return replace(scenario, channel=replace(scenario.channel, dust=DUST_PRESETS[value]))
    if axis == "mean_radius":
        dust = scenario.channel.dust
        if dust is None:
            dust = DUST_PRESETS["severe"]
        return replace(
            scenario,
            channel=replace(scenario.channel, dust=replace(dust, mean_radius=value)),
        )
    raise ValueError(f"unknown sweep axis '{axis}'")


def simulate_job(job: tuple[Scenario, int]) -> RunResult:
    """Run one scenario and distil the metrics the tables need."""

    scenario, seed = job
    outcome = run_simulation(scenario, seed)
    report = throughput_report(outcome, scenario)
    histogram = report.sf_histogram
    return RunResult(
        offered_norm=report.normalized_offered,
        throughput_norm=report.normalized_throughput,
        offered_bps=report.offered_bits_rate_bps,
        throughput_bps=report.absolute_throughput_bps,
        mean_node_throughput_bps=report.mean_node_throughput_bps,
        sf_counts=tuple(histogram[sf] for sf in (7, 8, 9, 10, 11, 12)),
        out_of_range=histogram["out_of_range"],
        all_nodes_out_of_range=outcome.all_nodes_out_of_range,
    )


def histogram_job(job: tuple[Scenario, int]) -> RunResult:
    """Deploy and assign SFs only; traffic counters stay zero."""

    scenario, seed = job
    histogram = sf_histogram(build_node_states(scenario, seed))
    return RunResult(
        offered_norm=0.0,
        throughput_norm=0.0,
        offered_bps=0.0,
        throughput_bps=0.0,
        mean_node_throughput_bps=0.0,
        sf_counts=tuple(histogram[sf] for sf in (7, 8, 9, 10, 11, 12)),
        out_of_range=histogram["out_of_range"],
        all_nodes_out_of_range=histogram["out_of_range"] == scenario.geometry.node_count,
    )


def run_grid(
    jobs: list[tuple[Scenario, int]], parallelism: int = 1, worker=simulate_job
) -> list[RunResult]:
    """Execute all jobs and return results in job order."""

    if parallelism <= 1 or len(jobs) <= 1:
        return [worker(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        chunk = max(1, len(jobs) // (parallelism * 8))
        return list(pool.map(worker, jobs, chunksize=chunk))


def format_number(value: float) -> str:
    return f"{value:.10g}"


def write_csv(path: Path, header: list[str], rows: list[list[Any]]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [format_number(v) if isinstance(v, float) else v for v in row]
            )


SWEEP_HEADER = [
    "axis",
    "value",
    "repetition",
    "seed",
    "offered_norm",
    "throughput_norm",
    "offered_bps",
    "throughput_bps",
]


def run_sweep(
    spec: SweepSpec,
    master_seed: int | None = None,
    parallelism: int = 1,
    out_dir: str | Path = ".",
) -> Path:
    """Execute a SweepSpec and write its CSV; returns the output path."""

    master = spec.base.seed if master_seed is None else master_seed
    keys = []
    jobs = []
    for index, value in enumerate(spec.values):
        scenario = apply_axis(spec.base, spec.axis, value)
        for rep in range(spec.repetitions):
            seed = derive_seed(master, "sweep", spec.axis, index, rep)
            keys.append((value, rep, seed))
            jobs.append((scenario, seed))
    results = run_grid(jobs, parallelism)
    rows = [
        [spec.axis, value, rep, seed, r.offered_norm, r.throughput_norm,
         r.offered_bps, r.throughput_bps]
        for (value, rep, seed), r in zip(keys, results)
    ]
    out_path = Path(out_dir) / spec.output_path
    write_csv(out_path, SWEEP_HEADER, rows)
    return out_path
