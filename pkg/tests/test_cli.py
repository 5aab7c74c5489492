"""End-to-end runs of the command-line entry point."""

import numpy as np
import pytest

from preisach.cli import ENV_CONFIG, main
from preisach.memory import MemoryVector


def read_rows(path):
    lines = path.read_text().strip().splitlines()
    return lines[0].split(","), [ln.split(",") for ln in lines[1:]]


def test_usage_errors_exit_1(capsys):
    assert main([]) == 1
    assert main(["frobnicate"]) == 1
    assert main(["run", "--set", "model"]) == 1            # not key=value
    assert main(["run", "--set", "pdf.typo=exp"]) == 1     # unknown key
    assert main(["run", "--set", "model=fancy"]) == 1      # bad choice
    err = capsys.readouterr().err
    assert "config error" in err


def test_run_writes_both_model_columns(tmp_path):
    out = tmp_path / "trace.csv"
    args = ["run", "--set", "model=both", "--set", "sampling.rate=50",
            "--set", f"output.path={out}"]
    assert main(args) == 0
    header, rows = read_rows(out)
    assert header == ["t", "x", "y_sspm", "y_cspm", "e_rel_pct"]
    assert len(rows) == 50
    # identical invocation is byte-identical (no timing columns here)
    blob = out.read_bytes()
    assert main(args) == 0
    assert out.read_bytes() == blob


def test_run_single_model_and_memory_dump(tmp_path):
    out = tmp_path / "trace.csv"
    mem = tmp_path / "memory.csv"
    assert main(["run", "--set", "sampling.rate=40",
                 "--set", f"output.path={out}",
                 "--dump-memory", str(mem)]) == 0
    header, rows = read_rows(out)
    assert header == ["t", "x", "y_sspm"]
    final = MemoryVector.from_csv(mem)
    assert len(final.corners) >= 2                         # loadable staircase


def test_config_file_via_environment(tmp_path, monkeypatch):
    out = tmp_path / "trace.csv"
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"model = cspm\nsampling.rate = 25\noutput.path = {out}\n")
    monkeypatch.setenv(ENV_CONFIG, str(cfg))
    assert main(["run"]) == 0
    header, rows = read_rows(out)
    assert header == ["t", "x", "y_cspm"]
    assert len(rows) == 25


def test_explicit_config_beats_environment(tmp_path, monkeypatch):
    good = tmp_path / "good.cfg"
    out = tmp_path / "o.csv"
    good.write_text(f"sampling.rate = 30\noutput.path = {out}\n")
    monkeypatch.setenv(ENV_CONFIG, str(tmp_path / "missing.cfg"))
    assert main(["run", "--config", str(good)]) == 0
    _, rows = read_rows(out)
    assert len(rows) == 30


def test_oracle_check_pass_and_fail(tmp_path, capsys):
    out = tmp_path / "check.csv"
    base = ["oracle-check", "--set", "sampling.rate=100",
            "--set", "oracle.n=400", "--set", f"output.path={out}"]
    assert main(base) == 0
    header, rows = read_rows(out)
    assert header == ["pair", "e_max_pct"]
    assert [r[0] for r in rows] == ["cspm-sspm", "cspm-oracle", "sspm-oracle"]
    capsys.readouterr()
    assert main(base + ["--set", "oracle.threshold_pct=1e-6"]) == 2
    assert "FAIL" in capsys.readouterr().err


def test_bench_produces_one_row_per_cell(tmp_path):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--set", "bench.repeats=1",
                 "--set", "bench.tols=1e-3,1e-4",
                 "--set", "sampling.rate=100",
                 "--set", f"output.path={out}"]) == 0
    header, rows = read_rows(out)
    assert header[:3] == ["pdf", "tol", "model"]
    assert len(rows) == 3 * 2 * 2                          # pdf x tol x model
    cells = {(r[0], r[1], r[2]) for r in rows}
    assert ("exp", "0.0001", "sspm") in cells
    assert all(float(v) >= 0.0 for r in rows for v in r[3:])


def test_sampling_study_csv(tmp_path):
    out = tmp_path / "study.csv"
    assert main(["sampling-study", "--set", "study.master_rate=2000",
                 "--set", "study.factors=2,4",
                 "--set", "signal.duration=0.5",
                 "--set", f"output.path={out}"]) == 0
    header, rows = read_rows(out)
    assert header == ["rate", "e_max_pct", "e_mean_pct", "e_std_pct", "drift_pct"]
    assert [r[0] for r in rows] == ["1000", "500"]
