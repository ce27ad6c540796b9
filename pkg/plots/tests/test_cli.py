import csv
from pathlib import Path

from marslora_plots import PRESET_FILES
from marslora_plots.cli import main


def _write_fig6(tmp_path: Path):
    with open(tmp_path / "fig6.csv", "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(PRESET_FILES["fig6"]["fig6.csv"])
        writer.writerows([[400.0, 3200.0], [800.0, 3700.0]])


def test_render_success(tmp_path, capsys):
    _write_fig6(tmp_path)
    out = tmp_path / "fig6.png"
    code = main(["render", "--preset", "fig6", "--in", str(tmp_path), "--out", str(out)])
    assert code == 0
    assert out.exists()
    assert "fig6.png" in capsys.readouterr().out


def test_usage_errors(capsys):
    assert main([]) == 1
    assert main(["render", "--preset", "fig6"]) == 1  # --in/--out missing
    capsys.readouterr()


def test_invalid_input_exit_code(tmp_path, capsys):
    code = main(["render", "--preset", "fig6", "--in", str(tmp_path),
                 "--out", str(tmp_path / "x.png")])
    assert code == 2
    assert "input error" in capsys.readouterr().err


def test_unknown_preset_is_input_error(tmp_path, capsys):
    code = main(["render", "--preset", "fig99", "--in", str(tmp_path),
                 "--out", str(tmp_path / "x.png")])
    assert code == 2
    capsys.readouterr()


def test_render_all_skip_missing(tmp_path, capsys):
    _write_fig6(tmp_path)
    out_dir = tmp_path / "figures"
    code = main(["render-all", "--in", str(tmp_path), "--out-dir", str(out_dir),
                 "--skip-missing"])
    assert code == 0
    printed = capsys.readouterr().out
    assert (out_dir / "fig6.png").exists()
    assert "fig2: skipped" in printed
    assert "fig6:" in printed and "skipped" not in printed.split("fig6:")[1].splitlines()[0]


def test_render_all_requires_complete_inputs_by_default(tmp_path, capsys):
    _write_fig6(tmp_path)
    code = main(["render-all", "--in", str(tmp_path), "--out-dir", str(tmp_path / "f")])
    assert code == 2
    assert "missing input CSV" in capsys.readouterr().err


def test_render_all_rejects_fully_empty_directory(tmp_path, capsys):
    code = main(["render-all", "--in", str(tmp_path), "--out-dir", str(tmp_path / "f"),
                 "--skip-missing"])
    assert code == 2
    assert "no preset has complete inputs" in capsys.readouterr().err
