from __future__ import annotations

import csv
import io
import json

import pytest
from click.testing import CliRunner

from liouville_star.cli import main
from liouville_star.suite import REFERENCE_TABLE


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def _records(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line]


def test_verify_passing_suite(runner):
    res = runner.invoke(main, ["verify", "--only", "table"])
    assert res.exit_code == 0
    recs = _records(res.output)
    assert recs and all(r["status"] == "pass" for r in recs)
    for r in recs:
        assert r["schema"] == 1
        assert set(r) == {"schema", "check_id", "status", "mode", "residual", "window", "detail", "elapsed_ms"}


def test_verify_failing_suite_exits_nonzero(runner):
    res = runner.invoke(main, ["verify", "--only", "operator"])
    assert res.exit_code == 1
    failed = [r["check_id"] for r in _records(res.output) if r["status"] == "fail"]
    assert failed == ["operator/residual-scaling"]


def test_verify_is_deterministic(runner):
    args = ["verify", "--only", "dual-metric", "--only", "controls"]
    a, b = (_records(runner.invoke(main, args).output) for _ in range(2))
    strip = lambda rs: [{k: v for k, v in r.items() if k != "elapsed_ms"} for r in rs]
    assert strip(a) == strip(b)
    assert [r["check_id"] for r in a] == sorted(r["check_id"] for r in a)


def test_verify_parallel_matches_serial(runner):
    args = ["verify", "--only", "star-roots"]
    serial = _records(runner.invoke(main, args).output)
    parallel = _records(runner.invoke(main, [*args, "--jobs", "2"]).output)
    strip = lambda rs: [{k: v for k, v in r.items() if k != "elapsed_ms"} for r in rs]
    assert strip(serial) == strip(parallel)


def test_verify_exact_checks_have_null_residual(runner):
    recs = _records(runner.invoke(main, ["verify", "--only", "wigner-law"]).output)
    assert all(r["mode"] == "exact" and r["residual"] is None for r in recs)


def test_verify_mode_filter(runner):
    res = runner.invoke(main, ["verify", "--only", "metric-dependence", "--only", "controls", "--mode", "exact"])
    recs = _records(res.output)
    assert {r["status"] for r in recs if r["mode"] == "float"} == {"skipped"}
    assert res.exit_code == 0


def test_verify_unknown_filter(runner):
    res = runner.invoke(main, ["verify", "--only", "no-such-suite"])
    assert res.exit_code == 2
    assert "unknown filter id" in res.output


def test_verify_list(runner):
    res = runner.invoke(main, ["verify", "--list"])
    assert "appendix-d" in res.output.split()


def test_verify_out_file(runner, tmp_path):
    out = tmp_path / "v.jsonl"
    res = runner.invoke(main, ["verify", "--only", "limit", "--out", str(out)])
    assert res.exit_code == 0 and res.output == ""
    assert all(r["status"] == "pass" for r in _records(out.read_text()))


def test_table_markdown(runner):
    res = runner.invoke(main, ["table"])
    assert res.exit_code == 0
    lines = res.output.splitlines()
    assert lines[0].startswith("|  | p=0")
    for n, row in enumerate(REFERENCE_TABLE):
        cells = [c.strip() for c in lines[2 + n].strip("|").split("|")]
        assert cells[1:] == list(row)


def test_table_csv(runner, tmp_path):
    out = tmp_path / "t.csv"
    assert runner.invoke(main, ["table", "--format", "csv", "--out", str(out)]).exit_code == 0
    raw = out.read_bytes().decode()
    assert raw.count("\r\n") == 5
    rows = list(csv.reader(io.StringIO(raw)))
    assert rows[0] == ["", "p=0", "p=1", "p=2", "p=3"]
    assert [r[1:] for r in rows[1:]] == [list(r) for r in REFERENCE_TABLE]


def test_table_json(runner):
    data = json.loads(runner.invoke(main, ["table", "--format", "json"]).output)
    assert data["columns"] == ["p=0", "p=1", "p=2", "p=3"]
    assert len(data["rows"]) == 4


def test_table_rejects_bad_grid(runner):
    assert runner.invoke(main, ["table", "--nmax", "4", "--pmax", "3"]).exit_code == 2


def test_expect_csv(runner):
    res = runner.invoke(main, ["expect", "--family", "norm", "--n", "2", "--s", "1,2"])
    assert res.exit_code == 0
    rows = list(csv.reader(io.StringIO(res.output)))
    assert rows[0] == ["s", "N~", "closed", "generic", "abs_diff"]
    assert len(rows) == 3
    for r in rows[1:]:
        assert float(r[4]) <= 1e-9
        assert float(r[1]) == pytest.approx(float(r[2]), rel=1e-12)


def test_expect_empty_grid(runner, tmp_path):
    out = tmp_path / "e.csv"
    res = runner.invoke(main, ["expect", "--n", "1", "--s", "", "--out", str(out)])
    assert res.exit_code == 0
    assert out.read_bytes() == b"s,N~,closed,generic,abs_diff\r\n"


def test_expect_rejects_zero_s(runner):
    assert runner.invoke(main, ["expect", "--n", "1", "--s", "0"]).exit_code == 2


def test_expect_metric_norm(runner):
    rows = list(csv.reader(io.StringIO(runner.invoke(main, ["expect", "--family", "metric-norm", "--n", "1", "--s", "1"]).output)))
    assert float(rows[1][2]) == pytest.approx(0.2578943054, abs=1e-9)


def test_operator_command(runner):
    res = runner.invoke(main, ["operator", "--s", "1", "--N", "8,14"])
    assert res.exit_code == 0
    rows = list(csv.reader(io.StringIO(res.output)))
    assert rows[0] == ["s", "N", "intertwine_residual", "commutator_residual", "weyl_constant"]
    assert [r[1] for r in rows[1:]] == ["8", "14"]
    assert all(float(r[2]) <= 1e-9 and float(r[4]) == pytest.approx(0.5) for r in rows[1:])


def test_operator_rejects_bad_input(runner):
    assert runner.invoke(main, ["operator", "--s", "0"]).exit_code == 2
    assert runner.invoke(main, ["operator", "--N", "4"]).exit_code == 2


def test_limit_command(runner):
    res = runner.invoke(main, ["limit", "--m", "0,1/2"])
    assert res.exit_code == 0
    reps = _records(res.output)
    assert [r["m"] for r in reps] == ["0", "1/2"]
    assert all(r["orthonormality_max_deviation"] == "0" for r in reps)
    assert reps[0]["coefficient_max_deviation"] == "0"
    assert all(v == "0" for r in reps for v in r["positive_power_projections"])


def test_limit_rejects_bad_rational(runner):
    assert runner.invoke(main, ["limit", "--m", "abc"]).exit_code == 2
