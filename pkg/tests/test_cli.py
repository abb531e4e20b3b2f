"""Command line interface: subcommands, outputs, exit codes."""

import json

import pytest

from vopt.cli import EXIT_CONFIG, EXIT_OK, EXIT_RUN, main

BENCH_CFG = """
[bench]
problems = BK1
cones = R2+
algorithms = sdvo, bbdvo
runs = 2
seed = 42
"""


def test_run_prints_a_summary(capsys):
    code = main(["run", "--problem", "BK1", "--algo", "bbdvo", "--seed", "3"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "BK1/bbdvo/R2+: stationary" in out
    assert "F =" in out


def test_run_writes_a_trace(tmp_path):
    trace = tmp_path / "t.jsonl"
    code = main(["run", "--problem", "FF1", "--trace", str(trace)])
    assert code == EXIT_OK
    lines = trace.read_text().splitlines()
    assert len(lines) >= 2
    assert "termination" in json.loads(lines[-1])


def test_run_unknown_problem_is_a_config_error(capsys):
    code = main(["run", "--problem", "NoSuch"])
    assert code == EXIT_CONFIG
    assert "configuration error" in capsys.readouterr().err


def test_bench_writes_table_and_figures(tmp_path, capsys):
    cfg = tmp_path / "b.cfg"
    cfg.write_text(BENCH_CFG)
    out_dir = tmp_path / "results"
    code = main(["bench", "--config", str(cfg), "--out", str(out_dir)])
    assert code == EXIT_OK
    assert (out_dir / "benchmark.csv").exists()
    assert (out_dir / "iterations_R2p.png").exists()
    assert "table written" in capsys.readouterr().out


def test_bench_no_figure_and_format(tmp_path):
    cfg = tmp_path / "b.cfg"
    cfg.write_text(BENCH_CFG)
    out_dir = tmp_path / "results"
    code = main(["bench", "--config", str(cfg), "--out", str(out_dir),
                 "--format", "json", "--no-figure"])
    assert code == EXIT_OK
    assert (out_dir / "benchmark.json").exists()
    assert not list(out_dir.glob("*.png"))


def test_bench_missing_config_is_exit_2(tmp_path):
    assert main(["bench", "--config", str(tmp_path / "none.cfg")]) == EXIT_CONFIG


def test_pareto_writes_csv_and_figure(tmp_path, capsys):
    out = tmp_path / "front.csv"
    code = main(["pareto", "--problem", "BK1", "--runs", "4",
                 "--out", str(out)])
    assert code == EXIT_OK
    assert out.exists()
    assert out.with_suffix(".png").exists()
    assert "clusters" in capsys.readouterr().out


def test_analyze_rate(tmp_path, capsys):
    trace = tmp_path / "t.jsonl"
    assert main(["run", "--problem", "QuadAniso", "--algo", "mm-ell",
                 "--trace", str(trace)]) == EXIT_OK
    capsys.readouterr()  # drop the run summary
    code = main(["analyze", "--trace", str(trace), "--check", "rate",
                 "--problem", "QuadAniso", "--rate", "0.9"])
    assert code == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["check"] == "rate"
    assert payload["passed"] is True


def test_analyze_rate_requires_a_bound(tmp_path, capsys):
    trace = tmp_path / "t.jsonl"
    main(["run", "--problem", "BK1", "--trace", str(trace)])
    code = main(["analyze", "--trace", str(trace), "--check", "rate",
                 "--problem", "BK1"])
    assert code == EXIT_CONFIG


def test_analyze_majorization_to_file(tmp_path):
    trace = tmp_path / "t.jsonl"
    main(["run", "--problem", "BK1", "--trace", str(trace)])
    report = tmp_path / "report.json"
    code = main(["analyze", "--trace", str(trace), "--check", "majorization",
                 "--problem", "BK1", "--out", str(report)])
    assert code == EXIT_OK
    assert json.loads(report.read_text())["passed"] is True


def test_analyze_u0(tmp_path, capsys):
    trace = tmp_path / "t.jsonl"
    main(["run", "--problem", "BK1", "--seed", "5", "--trace", str(trace)])
    capsys.readouterr()  # drop the run summary
    code = main(["analyze", "--trace", str(trace), "--check", "u0",
                 "--problem", "BK1", "--grid", "21"])
    assert code == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["estimates"]  # one value per recorded iterate + final


def test_run_error_exit_code(tmp_path, monkeypatch):
    # force a runtime failure inside the solve path
    import vopt.cli as cli

    def boom(*a, **k):
        raise RuntimeError("synthetic")

    monkeypatch.setattr(cli, "run", boom)
    assert main(["run", "--problem", "BK1"]) == EXIT_RUN
