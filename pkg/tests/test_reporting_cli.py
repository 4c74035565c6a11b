"""Output formats and the command line front end (exit codes, overrides)."""
import json

import numpy as np
import pytest

import graphtik.cli as cli
from graphtik.errors import NumericalError
from graphtik.reporting import (
    ExperimentReport,
    FORMAT_VERSION,
    config_hash,
    format_float,
    report_to_json,
    write_csv,
)


def test_config_hash_canonical():
    a = config_hash({"n": 100, "example": 2})
    b = config_hash({"example": 2, "n": 100})
    assert a == b
    assert len(a) == 12 and int(a, 16) >= 0
    assert config_hash({"example": 1, "n": 100}) != a


def test_format_float():
    assert format_float(0.1234567891234) == "0.123456789"
    assert format_float(3) == "3"
    assert format_float("x") == "x"


def test_write_csv_layout(tmp_path):
    p = tmp_path / "out.csv"
    write_csv(str(p), ["a", "b"], [(1.0, 2.0), (0.5, np.pi)], "deadbeef0123", comments=["note"])
    lines = p.read_text().splitlines()
    assert lines[0] == f"# {FORMAT_VERSION}, config-hash=deadbeef0123"
    assert lines[1] == "# note"
    assert lines[2] == "a,b"
    assert lines[4] == "0.5,3.14159265"


def test_report_json_roundtrip():
    rep = ExperimentReport(
        config={"table": 4}, cells=[{"value": 1.0}], seeds=[0], config_hash="abc"
    )
    payload = json.loads(report_to_json(rep))
    assert payload["format_version"] == FORMAT_VERSION
    assert payload["cells"] == [{"value": 1.0}]
    assert payload["roundtrip"] is None


def _first_line(path):
    with open(path) as fh:
        return fh.readline().rstrip("\n")


def test_cli_spectrum(tmp_path):
    out = tmp_path / "spec.csv"
    rc = cli.main(["spectrum", "--example", "2", "--n", "30", "--method", "graph", "--out", str(out)])
    assert rc == 0
    assert _first_line(out).startswith(f"# {FORMAT_VERSION}, config-hash=")
    rows = out.read_text().splitlines()
    assert rows[1] == "m,discrete,continuous,lsre"
    assert len(rows) == 32
    first = rows[2].split(",")
    assert first[0] == "1" and float(first[3]) < 0.1


def test_cli_approx_error(tmp_path):
    out = tmp_path / "err.csv"
    rc = cli.main(["approx-error", "--example", "2", "--n", "25", "--f", "3", "--out", str(out)])
    assert rc == 0
    rows = out.read_text().splitlines()
    assert [r.split(",")[0] for r in rows[2:]] == ["graph", "galerkin"]


def test_cli_deblur(tmp_path):
    out = tmp_path / "deblur.csv"
    rc = cli.main(
        ["deblur", "--example", "1", "--f", "1", "--n", "40", "--eps", "0",
         "--penalty", "identity", "--method", "graph", "--out", str(out)]
    )
    assert rc == 0
    rows = out.read_text().splitlines()
    assert rows[1].startswith("# rre=") and rows[2].startswith("# alpha=")
    assert rows[3] == "x,f_true,f_restored"
    assert len(rows) == 44
    assert float(rows[1].split("=")[1]) < 1e-3
    data = np.array([[float(v) for v in r.split(",")] for r in rows[4:]])
    assert data[0, 0] == pytest.approx(1.0 / 41.0)
    assert np.max(np.abs(data[:, 1] - data[:, 2])) < 1e-2


def test_cli_table_json(tmp_path):
    out = tmp_path / "table4.json"
    rc = cli.main(["table", "--id", "4", "--seeds", "0", "--out", str(out)])
    assert rc == 0
    payload = json.loads(out.read_text())
    assert payload["roundtrip"]["ok"] is True
    assert len(payload["cells"]) == 2


def test_cli_table_csv_stdout(capsys):
    rc = cli.main(["table", "--id", "4", "--seeds", "0"])
    assert rc == 0
    outerr = capsys.readouterr()
    lines = outerr.out.splitlines()
    assert lines[0].startswith(f"# {FORMAT_VERSION}")
    assert lines[1].split(",")[:4] == ["table", "f", "method", "penalty"]


def test_cli_figure(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"example": 2, "n": 25}))
    out = tmp_path / "fig1.csv"
    rc = cli.main(["figure", "--id", "1", "--config", str(cfg), "--out", str(out)])
    assert rc == 0
    rows = out.read_text().splitlines()
    assert rows[1] == "m_over_n,continuous,graph,galerkin"
    assert len(rows) == 27


def test_cli_config_file_and_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"example": 2, "n": 30, "method": "graph"}))
    out = tmp_path / "s.csv"
    rc = cli.main(["spectrum", "--config", str(cfg), "--n", "20", "--out", str(out)])
    assert rc == 0
    assert len(out.read_text().splitlines()) == 22  # flag wins over file


def test_cli_exit_code_bad_usage(capsys):
    assert cli.main(["spectrum", "--method", "fourier"]) == 1
    assert cli.main(["warp"]) == 1
    capsys.readouterr()


def test_cli_exit_code_bad_config(tmp_path, capsys):
    missing = tmp_path / "nope.json"
    assert cli.main(["spectrum", "--config", str(missing)]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["spectrum", "--config", str(bad)]) == 1
    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"order": 3}))
    assert cli.main(["spectrum", "--config", str(unknown)]) == 1
    capsys.readouterr()


def test_cli_exit_code_bad_parameter(capsys):
    rc = cli.main(
        ["deblur", "--example", "1", "--f", "3", "--n", "40", "--eps", "0.1",
         "--penalty", "a3", "--sigma", "0"]
    )
    assert rc == 1
    capsys.readouterr()


def test_cli_exit_code_numerical_failure(monkeypatch, capsys):
    def boom(cfg, seed=None):
        raise NumericalError("synthetic breakdown")

    monkeypatch.setattr(cli, "run_cell", boom)
    rc = cli.main(["deblur", "--example", "1", "--f", "3", "--n", "40", "--eps", "0"])
    assert rc == 2
    assert "numerical failure" in capsys.readouterr().err
