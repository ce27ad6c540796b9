"""End-to-end: simulator CLI produces CSVs, renderer consumes them."""

import csv
import importlib.util
import subprocess
import sys

import pytest

from marslora_plots import render

needs_simulator = pytest.mark.skipif(
    importlib.util.find_spec("marslora") is None,
    reason="marslora simulator not installed",
)


def _run_preset(name, out_dir):
    subprocess.run(
        [sys.executable, "-m", "marslora", "preset", name,
         "--seed", "3", "--jobs", "2", "--out-dir", str(out_dir)],
        check=True,
        capture_output=True,
    )


@needs_simulator
def test_fig3_pipeline(tmp_path):
    _run_preset("fig3", tmp_path)
    data = render("fig3", tmp_path, tmp_path / "fig3.png")
    assert (tmp_path / "fig3.png").exists()
    # every panel carries both environments and the counts sum to the
    # full population
    for panel in data.values():
        assert sorted(panel) == ["earth", "mars"]
        for series in panel.values():
            assert sum(series.y) == pytest.approx(1000.0)


@needs_simulator
def test_fig8_pipeline(tmp_path):
    _run_preset("fig8", tmp_path)
    data = render("fig8", tmp_path, tmp_path / "fig8.png")
    series = data["fig8"]
    assert len(series) == 6  # one series per gateway distance
    with open(tmp_path / "fig8.csv", encoding="utf-8") as handle:
        rows = list(csv.DictReader(handle))
    frequencies = sorted({float(r["frequency_hz"]) for r in rows})
    for plotted in series.values():
        assert plotted.x == frequencies
