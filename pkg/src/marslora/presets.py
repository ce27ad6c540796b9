"""Figure-reproduction presets: fixed sweeps emitting stable CSV schemas.

Every preset fans seeds out from the master seed keyed by the x-axis index
and the repetition only, so series that differ in environment, dust, packet
size or carrier share randomness. Treatment effects are therefore paired
comparisons under common random numbers instead of being buried in
repetition noise.
"""

from __future__ import annotations

from dataclasses import replace
from pathlib import Path

from . import __version__
from .channel import DUST_PRESETS, ChannelConfig, DustStorm, Environment
from .phy import PhyParams, time_on_air_s
from .scenario import Scenario, TrafficModel, interarrival_for_offered_bps
from .seeding import derive_seed
from .sweep import histogram_job, run_grid, write_csv
from .topology import ScenarioGeometry

REPETITIONS = 5
NODE_COUNT = 1000
DURATION_S = 500.0

D_GRID_M = [float(100 * i) for i in range(1, 71)]
EARTH_R_GRID_M = [500.0, 1000.0, 2500.0, 5000.0, 7500.0]
MARS_R_GRID_M = [500.0, 1000.0, 2000.0, 4000.0]
HISTOGRAM_R_GRID_M = [1000.0, 2000.0, 3000.0, 4000.0]

#: Offered-load targets for the S-vs-G sweep, expressed as the per-slot
#: load a pure SF7 population would see; the CSV reports measured values.
FIG2_TARGET_LOADS = [0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0, 1.4, 2.0, 3.0]
FIG2_GATEWAY_DISTANCE_M = 1000.0

FIG4_CASES = [(50, 800.0), (256, 4096.0)]
FIG5_OFFERED_BPS = [4096.0, 6827.0, 20480.0]
FIG6_OFFERED_BPS = [
    400.0, 600.0, 800.0, 1000.0, 1400.0, 2000.0, 2800.0,
    4096.0, 6827.0, 10240.0, 15360.0, 20480.0,
]
FIG6_THRESHOLD_BPS = 300.0

#: Mean particle radii for the dust sweep: the three tabulated storm
#: intensities, then larger grains to expose the cubic growth. Zero means
#: no storm and serves as the paired baseline.
FIG7_MEAN_RADII_M = [0.0, 1.5e-6, 4.5e-6, 20e-6, 1e-4, 3e-4, 1e-3]
FIG7_PARTICLE_DENSITY = 3e7

FIG8_FREQUENCIES_HZ = [868e6, 1.2e9, 1.6e9, 2.0e9, 2.3e9]
FIG8_D_GRID_M = [500.0, 1000.0, 1500.0, 2000.0, 2500.0, 3000.0]

FIG2_HEADER = [
    "environment", "disk_radius_m", "mean_interarrival_s", "repetition", "seed",
    "offered_norm", "throughput_norm", "offered_bps", "throughput_bps",
]
FIG3_HEADER = [
    "environment", "disk_radius_m", "repetition", "seed",
    "sf7", "sf8", "sf9", "sf10", "sf11", "sf12", "out_of_range",
]
FIG4_HEADER = [
    "environment", "payload_bytes", "offered_bps", "gateway_distance_m",
    "repetition", "seed", "throughput_bps",
]
FIG5_HEADER = [
    "offered_bps", "gateway_distance_m", "repetition", "seed", "throughput_bps",
]
FIG6_HEADER = ["offered_bps", "max_distance_m"]
FIG7_HEADER = [
    "mean_radius_m", "particle_density_m3", "disk_radius_m",
    "repetition", "seed", "throughput_bps",
]
FIG8_HEADER = [
    "frequency_hz", "gateway_distance_m", "repetition", "seed", "throughput_bps",
]

PRESET_SCHEMAS: dict[str, dict[str, list[str]]] = {
    "fig2": {"fig2_earth.csv": FIG2_HEADER, "fig2_mars.csv": FIG2_HEADER},
    "fig3": {"fig3_earth.csv": FIG3_HEADER, "fig3_mars.csv": FIG3_HEADER},
    "fig4": {"fig4.csv": FIG4_HEADER},
    "fig5": {"fig5.csv": FIG5_HEADER},
    "fig6": {"fig6.csv": FIG6_HEADER},
    "fig7": {"fig7.csv": FIG7_HEADER},
    "fig8": {"fig8.csv": FIG8_HEADER},
}


class UnknownPresetError(ValueError):
    pass


def _scenario(
    environment: Environment,
    disk_radius_m: float,
    gateway_distance_m: float,
    payload_bytes: int,
    mean_interarrival_s: float,
    frequency_hz: float = 868e6,
    dust: DustStorm | None = None,
) -> Scenario:
    return Scenario(
        channel=ChannelConfig(
            environment=environment, frequency_hz=frequency_hz, dust=dust
        ),
        geometry=ScenarioGeometry(
            disk_radius_m=disk_radius_m,
            gateway_distance_m=gateway_distance_m,
            node_count=NODE_COUNT,
        ),
        traffic=TrafficModel(
            payload_bytes=payload_bytes, mean_interarrival_s=mean_interarrival_s
        ),
        duration_s=DURATION_S,
    )


def _offered_scenario(
    environment: Environment,
    disk_radius_m: float,
    gateway_distance_m: float,
    payload_bytes: int,
    offered_bps: float,
    frequency_hz: float = 868e6,
    dust: DustStorm | None = None,
) -> Scenario:
    interarrival = interarrival_for_offered_bps(offered_bps, payload_bytes, NODE_COUNT)
    return _scenario(
        environment, disk_radius_m, gateway_distance_m, payload_bytes,
        interarrival, frequency_hz, dust,
    )


def _preset_fig2(master_seed: int, parallelism: int):
    slot_sf7 = time_on_air_s(50, 7, PhyParams())
    interarrivals = [NODE_COUNT * slot_sf7 / g for g in FIG2_TARGET_LOADS]
    grids = {"earth": EARTH_R_GRID_M, "mars": MARS_R_GRID_M}
    keys, jobs = [], []
    for env_name, r_grid in grids.items():
        environment = Environment(env_name)
        for radius in r_grid:
            for ia_index, interarrival in enumerate(interarrivals):
                scenario = _scenario(
                    environment, radius, FIG2_GATEWAY_DISTANCE_M, 50, interarrival
                )
                for rep in range(REPETITIONS):
                    seed = derive_seed(master_seed, "fig2", ia_index, rep)
                    keys.append((env_name, radius, interarrival, rep, seed))
                    jobs.append((scenario, seed))
    results = run_grid(jobs, parallelism)
    tables: dict[str, list[list]] = {"fig2_earth.csv": [], "fig2_mars.csv": []}
    for (env_name, radius, interarrival, rep, seed), r in zip(keys, results):
        tables[f"fig2_{env_name}.csv"].append(
            [env_name, radius, interarrival, rep, seed,
             r.offered_norm, r.throughput_norm, r.offered_bps, r.throughput_bps]
        )
    manifest = {
        "earth_disk_radius_m": EARTH_R_GRID_M,
        "mars_disk_radius_m": MARS_R_GRID_M,
        "mean_interarrival_s": interarrivals,
        "gateway_distance_m": [FIG2_GATEWAY_DISTANCE_M],
        "payload_bytes": [50],
    }
    return {name: (FIG2_HEADER, rows) for name, rows in tables.items()}, manifest


def _preset_fig3(master_seed: int, parallelism: int):
    keys, jobs = [], []
    for env_name in ("earth", "mars"):
        environment = Environment(env_name)
        for r_index, radius in enumerate(HISTOGRAM_R_GRID_M):
            scenario = _offered_scenario(environment, radius, 1000.0, 50, 800.0)
            for rep in range(REPETITIONS):
                seed = derive_seed(master_seed, "fig3", r_index, rep)
                keys.append((env_name, radius, rep, seed))
                jobs.append((scenario, seed))
    results = run_grid(jobs, parallelism, worker=histogram_job)
    tables: dict[str, list[list]] = {"fig3_earth.csv": [], "fig3_mars.csv": []}
    for (env_name, radius, rep, seed), r in zip(keys, results):
        tables[f"fig3_{env_name}.csv"].append(
            [env_name, radius, rep, seed, *r.sf_counts, r.out_of_range]
        )
    manifest = {
        "disk_radius_m": HISTOGRAM_R_GRID_M,
        "gateway_distance_m": [1000.0],
    }
    return {name: (FIG3_HEADER, rows) for name, rows in tables.items()}, manifest


def _preset_fig4(master_seed: int, parallelism: int):
    keys, jobs = [], []
    for env_name in ("earth", "mars"):
        environment = Environment(env_name)
        for payload, offered in FIG4_CASES:
            for d_index, distance in enumerate(D_GRID_M):
                scenario = _offered_scenario(environment, 1000.0, distance, payload, offered)
                for rep in range(REPETITIONS):
                    seed = derive_seed(master_seed, "fig4", d_index, rep)
                    keys.append((env_name, payload, offered, distance, rep, seed))
                    jobs.append((scenario, seed))
    results = run_grid(jobs, parallelism)
    rows = [
        [env, payload, offered, distance, rep, seed, r.throughput_bps]
        for (env, payload, offered, distance, rep, seed), r in zip(keys, results)
    ]
    manifest = {
        "gateway_distance_m": [D_GRID_M[0], D_GRID_M[-1], 100.0],
        "payload_bytes": [case[0] for case in FIG4_CASES],
        "offered_bps": [case[1] for case in FIG4_CASES],
        "disk_radius_m": [1000.0],
    }
    return {"fig4.csv": (FIG4_HEADER, rows)}, manifest


def _preset_fig5(master_seed: int, parallelism: int):
    keys, jobs = [], []
    for offered in FIG5_OFFERED_BPS:
        for d_index, distance in enumerate(D_GRID_M):
            scenario = _offered_scenario(Environment.MARS, 1000.0, distance, 256, offered)
            for rep in range(REPETITIONS):
                seed = derive_seed(master_seed, "fig5", d_index, rep)
                keys.append((offered, distance, rep, seed))
                jobs.append((scenario, seed))
    results = run_grid(jobs, parallelism)
    rows = [
        [offered, distance, rep, seed, r.throughput_bps]
        for (offered, distance, rep, seed), r in zip(keys, results)
    ]
    manifest = {
        "offered_bps": FIG5_OFFERED_BPS,
        "gateway_distance_m": [D_GRID_M[0], D_GRID_M[-1], 100.0],
        "payload_bytes": [256],
    }
    return {"fig5.csv": (FIG5_HEADER, rows)}, manifest


def _preset_fig6(master_seed: int, parallelism: int):
    keys, jobs = [], []
    for offered in FIG6_OFFERED_BPS:
        for d_index, distance in enumerate(D_GRID_M):
            scenario = _offered_scenario(Environment.MARS, 1000.0, distance, 50, offered)
            for rep in range(REPETITIONS):
                seed = derive_seed(master_seed, "fig6", d_index, rep)
                keys.append((offered, distance))
                jobs.append((scenario, seed))
    results = run_grid(jobs, parallelism)
    means: dict[tuple[float, float], float] = {}
    for key, r in zip(keys, results):
        means[key] = means.get(key, 0.0) + r.throughput_bps / REPETITIONS
    rows = []
    for offered in FIG6_OFFERED_BPS:
        viable = [d for d in D_GRID_M if means[(offered, d)] >= FIG6_THRESHOLD_BPS]
        rows.append([offered, max(viable) if viable else ""])
    manifest = {
        "offered_bps": FIG6_OFFERED_BPS,
        "gateway_distance_m": [D_GRID_M[0], D_GRID_M[-1], 100.0],
        "threshold_bps": [FIG6_THRESHOLD_BPS],
        "payload_bytes": [50],
    }
    return {"fig6.csv": (FIG6_HEADER, rows)}, manifest


def _preset_fig7(master_seed: int, parallelism: int):
    keys, jobs = [], []
    for radius_mean in FIG7_MEAN_RADII_M:
        dust = (
            None
            if radius_mean == 0.0
            else replace(
                DUST_PRESETS["severe"],
                particle_density=FIG7_PARTICLE_DENSITY,
                mean_radius=radius_mean,
            )
        )
        density = 0.0 if dust is None else dust.particle_density
        for r_index, disk_radius in enumerate(MARS_R_GRID_M):
            scenario = _offered_scenario(
                Environment.MARS, disk_radius, 1000.0, 256, 4096.0, dust=dust
            )
            for rep in range(REPETITIONS):
                seed = derive_seed(master_seed, "fig7", r_index, rep)
                keys.append((radius_mean, density, disk_radius, rep, seed))
                jobs.append((scenario, seed))
    results = run_grid(jobs, parallelism)
    rows = [
        [radius_mean, density, disk_radius, rep, seed, r.throughput_bps]
        for (radius_mean, density, disk_radius, rep, seed), r in zip(keys, results)
    ]
    manifest = {
        "mean_radius_m": FIG7_MEAN_RADII_M,
        "particle_density_m3": [FIG7_PARTICLE_DENSITY],
        "disk_radius_m": MARS_R_GRID_M,
        "payload_bytes": [256],
        "offered_bps": [4096.0],
    }
    return {"fig7.csv": (FIG7_HEADER, rows)}, manifest


def _preset_fig8(master_seed: int, parallelism: int):
    storm = DUST_PRESETS["severe"]
    keys, jobs = [], []
    for frequency in FIG8_FREQUENCIES_HZ:
        for d_index, distance in enumerate(FIG8_D_GRID_M):
            scenario = _offered_scenario(
                Environment.MARS, 1000.0, distance, 256, 4096.0,
                frequency_hz=frequency, dust=storm,
            )
            for rep in range(REPETITIONS):
                seed = derive_seed(master_seed, "fig8", d_index, rep)
                keys.append((frequency, distance, rep, seed))
                jobs.append((scenario, seed))
    results = run_grid(jobs, parallelism)
    rows = [
        [frequency, distance, rep, seed, r.throughput_bps]
        for (frequency, distance, rep, seed), r in zip(keys, results)
    ]
    manifest = {
        "frequency_hz": FIG8_FREQUENCIES_HZ,
        "gateway_distance_m": FIG8_D_GRID_M,
        "dust": [storm.particle_density, storm.mean_radius],
        "payload_bytes": [256],
        "offered_bps": [4096.0],
    }
    return {"fig8.csv": (FIG8_HEADER, rows)}, manifest


_PRESETS = {
    "fig2": _preset_fig2,
    "fig3": _preset_fig3,
    "fig4": _preset_fig4,
    "fig5": _preset_fig5,
    "fig6": _preset_fig6,
    "fig7": _preset_fig7,
    "fig8": _preset_fig8,
}


def preset_names() -> list[str]:
    return sorted(_PRESETS)


def run_preset(
    name: str,
    master_seed: int = 1,
    parallelism: int = 1,
    out_dir: str | Path = ".",
) -> list[Path]:
    """Execute one preset; returns the written file paths (CSVs + manifest)."""

    if name not in _PRESETS:
        raise UnknownPresetError(
            f"unknown preset '{name}'; available: {', '.join(preset_names())}"
        )
    tables, manifest = _PRESETS[name](master_seed, parallelism)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for file_name, (header, rows) in tables.items():
        path = out / file_name
        write_csv(path, header, rows)
        written.append(path)
    manifest_path = out / f"{name}_manifest.txt"
    with open(manifest_path, "w", encoding="utf-8") as handle:
        handle.write(f"preset: {name}\n")
        handle.write(f"master_seed: {master_seed}\n")
        handle.write(f"tool_version: {__version__}\n")
        handle.write(f"repetitions: {REPETITIONS}\n")
        handle.write(f"node_count: {NODE_COUNT}\n")
        handle.write(f"duration_s: {DURATION_S}\n")
        for key, values in manifest.items():
            handle.write(f"grid {key}: {values}\n")
        handle.write(f"files: {', '.join(sorted(tables))}\n")
    written.append(manifest_path)
    return written
