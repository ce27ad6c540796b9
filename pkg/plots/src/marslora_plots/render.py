"""Render simulator CSV tables into the standard figure set.

Each preset aggregates repetition rows into per-series (x, mean, standard
error) arrays, draws them, and returns the exact arrays that were plotted so
tests can verify the CSV -> figure path is lossless. Styling is cosmetic;
the contract is the data, the grouping and the axes.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .schemas import PRESET_FILES


class RenderError(Exception):
    """Missing or schema-violating input; message names file and column."""


@dataclass
class Series:
    x: list[float]
    y: list[float]
    yerr: list[float]


@dataclass
class FigureSpec:
    preset: str
    in_dir: Path
    out_path: Path
    title: str = ""
    files: dict[str, list[str]] = field(default_factory=dict)


#: panel name -> series label -> plotted arrays
FigureData = dict[str, dict[str, Series]]

SF_BUCKETS = ["sf7", "sf8", "sf9", "sf10", "sf11", "sf12", "out_of_range"]


def _read_rows(path: Path, expected_header: list[str]) -> list[dict[str, str]]:
    if not path.exists():
        raise RenderError(f"missing input CSV: {path}")
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise RenderError(f"{path.name}: file is empty (no header row)") from None
        if header != expected_header:
            unexpected = [c for c in header if c not in expected_header]
            missing = [c for c in expected_header if c not in header]
            problems = []
            if missing:
                problems.append(f"missing column(s) {', '.join(missing)}")
            if unexpected:
                problems.append(f"unexpected column(s) {', '.join(unexpected)}")
            if not problems:
                problems.append("columns out of order")
            raise RenderError(f"{path.name}: invalid header: {'; '.join(problems)}")
        rows = [dict(zip(header, line)) for line in reader]
    if not rows:
        raise RenderError(f"{path.name}: no data rows")
    return rows


def _mean_se(values: list[float]) -> tuple[float, float]:
    n = len(values)
    mean = sum(values) / n
    if n < 2:
        return mean, 0.0
    variance = sum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(variance / n)


def _aggregate(
    rows: list[dict[str, str]],
    series_key,
    x_column: str,
    y_column: str = "throughput_bps",
    x_value=None,
) -> dict[str, Series]:
    """Group rows by series and x, average repetitions, attach +-1 SE bars."""

    grouped: dict[str, dict[float, list[float]]] = {}
    for row in rows:
        label = series_key(row)
        x = float(row[x_column]) if x_value is None else x_value(row)
        grouped.setdefault(label, {}).setdefault(x, []).append(float(row[y_column]))
    series: dict[str, Series] = {}
    for label in sorted(grouped):
        xs = sorted(grouped[label])
        means, errors = [], []
        for x in xs:
            mean, se = _mean_se(grouped[label][x])
            means.append(mean)
            errors.append(se)
        series[label] = Series(x=list(xs), y=means, yerr=errors)
    return series


def _aggregate_xy(
    rows: list[dict[str, str]], series_key, group_column: str,
    x_column: str, y_column: str,
) -> dict[str, Series]:
    """Like _aggregate, but the x coordinate is itself a repetition mean
    (used when the x axis is a measured quantity)."""

    grouped: dict[str, dict[str, list[tuple[float, float]]]] = {}
    for row in rows:
        label = series_key(row)
        grouped.setdefault(label, {}).setdefault(row[group_column], []).append(
            (float(row[x_column]), float(row[y_column]))
        )
    series: dict[str, Series] = {}
    for label in sorted(grouped):
        points = []
        for group in grouped[label].values():
            x_mean, _ = _mean_se([p[0] for p in group])
            y_mean, y_se = _mean_se([p[1] for p in group])
            points.append((x_mean, y_mean, y_se))
        points.sort()
        series[label] = Series(
            x=[p[0] for p in points], y=[p[1] for p in points], yerr=[p[2] for p in points]
        )
    return series


def _plot_series(ax, series: dict[str, Series]) -> None:
    for label, data in series.items():
        ax.errorbar(data.x, data.y, yerr=data.yerr, marker="o", markersize=3,
                    capsize=2, label=label)


def _render_fig2(spec: FigureSpec) -> FigureData:
    data: FigureData = {}
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    for ax, env in zip(axes, ("earth", "mars")):
        name = f"fig2_{env}.csv"
        rows = _read_rows(spec.in_dir / name, PRESET_FILES["fig2"][name])
        series = _aggregate_xy(
            rows,
            series_key=lambda r: f"R={float(r['disk_radius_m']):g} m",
            group_column="mean_interarrival_s",
            x_column="offered_norm",
            y_column="throughput_norm",
        )
        _plot_series(ax, series)
        ax.set_xlabel("normalized offered traffic G")
        ax.set_ylabel("normalized throughput S")
        ax.set_title(env)
        ax.legend(fontsize=7)
        data[env] = series
    return data


def _render_fig3(spec: FigureSpec) -> FigureData:
    rows = {
        env: _read_rows(
            spec.in_dir / f"fig3_{env}.csv", PRESET_FILES["fig3"][f"fig3_{env}.csv"]
        )
        for env in ("earth", "mars")
    }
    radii = sorted({float(r["disk_radius_m"]) for r in rows["earth"] + rows["mars"]})
    fig, axes = plt.subplots(1, len(radii), figsize=(4 * len(radii), 3.2), squeeze=False)
    data: FigureData = {}
    positions = list(range(len(SF_BUCKETS)))
    for ax, radius in zip(axes[0], radii):
        panel: dict[str, Series] = {}
        for offset, env in ((-0.2, "earth"), (0.2, "mars")):
            subset = [r for r in rows[env] if float(r["disk_radius_m"]) == radius]
            if not subset:
                continue
            means, errors = [], []
            for bucket in SF_BUCKETS:
                mean, se = _mean_se([float(r[bucket]) for r in subset])
                means.append(mean)
                errors.append(se)
            ax.bar([p + offset for p in positions], means, width=0.4, yerr=errors,
                   capsize=2, label=env)
            panel[env] = Series(x=[float(p) for p in positions], y=means, yerr=errors)
        ax.set_xticks(positions)
        ax.set_xticklabels(SF_BUCKETS, rotation=45, fontsize=7)
        ax.set_title(f"R={radius:g} m")
        ax.set_ylabel("nodes")
        ax.legend(fontsize=7)
        data[f"R={radius:g}"] = panel
    return data


def _render_fig4(spec: FigureSpec) -> FigureData:
    rows = _read_rows(spec.in_dir / "fig4.csv", PRESET_FILES["fig4"]["fig4.csv"])
    series = _aggregate(
        rows,
        series_key=lambda r: f"{r['environment']} {r['payload_bytes']}B",
        x_column="gateway_distance_m",
    )
    fig, ax = plt.subplots(figsize=(6, 4))
    _plot_series(ax, series)
    ax.set_xlabel("gateway distance d (m)")
    ax.set_ylabel("throughput (bit/s)")
    ax.legend(fontsize=7)
    return {"fig4": series}


def _render_fig5(spec: FigureSpec) -> FigureData:
    rows = _read_rows(spec.in_dir / "fig5.csv", PRESET_FILES["fig5"]["fig5.csv"])
    series = _aggregate(
        rows,
        series_key=lambda r: f"G={float(r['offered_bps']):g} bit/s",
        x_column="gateway_distance_m",
    )
    fig, ax = plt.subplots(figsize=(6, 4))
    _plot_series(ax, series)
    ax.set_xlabel("gateway distance d (m)")
    ax.set_ylabel("throughput (bit/s)")
    ax.legend(fontsize=7)
    return {"fig5": series}


def _render_fig6(spec: FigureSpec) -> FigureData:
    rows = _read_rows(spec.in_dir / "fig6.csv", PRESET_FILES["fig6"]["fig6.csv"])
    xs, ys = [], []
    for row in rows:
        if row["max_distance_m"] == "":
            continue
        xs.append(float(row["offered_bps"]))
        ys.append(float(row["max_distance_m"]))
    series = {"max viable distance": Series(x=xs, y=ys, yerr=[0.0] * len(xs))}
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(xs, ys, marker="o")
    ax.set_xscale("log")
    ax.set_xlabel("offered traffic G (bit/s)")
    ax.set_ylabel("max distance (m)")
    return {"fig6": series}


def _render_fig7(spec: FigureSpec) -> FigureData:
    rows = _read_rows(spec.in_dir / "fig7.csv", PRESET_FILES["fig7"]["fig7.csv"])

    def label(row):
        radius = float(row["mean_radius_m"])
        return "no storm" if radius == 0.0 else f"r={radius:g} m"

    series = _aggregate(rows, series_key=label, x_column="disk_radius_m")
    fig, ax = plt.subplots(figsize=(6, 4))
    _plot_series(ax, series)
    ax.set_xlabel("deployment radius R (m)")
    ax.set_ylabel("throughput (bit/s)")
    ax.legend(fontsize=7)
    return {"fig7": series}


def _render_fig8(spec: FigureSpec) -> FigureData:
    rows = _read_rows(spec.in_dir / "fig8.csv", PRESET_FILES["fig8"]["fig8.csv"])
    series = _aggregate(
        rows,
        series_key=lambda r: f"d={float(r['gateway_distance_m']):g} m",
        x_column="frequency_hz",
    )
    fig, ax = plt.subplots(figsize=(6, 4))
    _plot_series(ax, series)
    ax.set_xlabel("carrier frequency (Hz)")
    ax.set_ylabel("throughput (bit/s)")
    ax.legend(fontsize=7)
    return {"fig8": series}


_RENDERERS = {
    "fig2": _render_fig2,
    "fig3": _render_fig3,
    "fig4": _render_fig4,
    "fig5": _render_fig5,
    "fig6": _render_fig6,
    "fig7": _render_fig7,
    "fig8": _render_fig8,
}


def preset_names() -> list[str]:
    return sorted(_RENDERERS)


def render_all(
    in_dir: str | Path,
    out_dir: str | Path,
    image_format: str = "png",
    skip_missing: bool = False,
) -> dict[str, Path | None]:
    """Chain every preset: render each one whose CSVs are present.

    With skip_missing a preset whose input files are absent maps to None
    instead of failing; schema violations are never skipped.
    """

    in_path = Path(in_dir)
    results: dict[str, Path | None] = {}
    for preset in preset_names():
        missing = [name for name in PRESET_FILES[preset] if not (in_path / name).exists()]
        if missing:
            if skip_missing:
                results[preset] = None
                continue
            raise RenderError(f"missing input CSV: {in_path / missing[0]}")
        out_path = Path(out_dir) / f"{preset}.{image_format}"
        render(preset, in_path, out_path)
        results[preset] = out_path
    if skip_missing and all(path is None for path in results.values()):
        raise RenderError(f"no preset has complete inputs in {in_path}")
    return results


def render(preset: str, in_dir: str | Path, out_path: str | Path) -> FigureData:
    """Render one preset and return the plotted series for verification.

    The image is written only after every input validated and plotted, so a
    failing render leaves no partial output behind.
    """

    if preset not in _RENDERERS:
        raise RenderError(
            f"unknown preset '{preset}'; available: {', '.join(preset_names())}"
        )
    spec = FigureSpec(
        preset=preset,
        in_dir=Path(in_dir),
        out_path=Path(out_path),
        files=PRESET_FILES[preset],
    )
    plt.close("all")
    try:
        data = _RENDERERS[preset](spec)
        figure = plt.gcf()
        figure.tight_layout()
        metadata = None
        suffix = spec.out_path.suffix.lower()
        if suffix == ".svg":
            metadata = {"Date": None}
        elif suffix == ".pdf":
            metadata = {"CreationDate": None}
        spec.out_path.parent.mkdir(parents=True, exist_ok=True)
        figure.savefig(spec.out_path, dpi=150, metadata=metadata)
    finally:
        plt.close("all")
    return data
