from __future__ import annotations

import csv
import time

import pytest
from click.testing import CliRunner

from liouville_star.cli import main, verify_records
from liouville_star.suite import CRITERIA, REFERENCE_TABLE, VerifyConfig

# wall-clock limits in seconds, where the criterion states one
RUNTIME = {1: 1.0, 2: 10.0, 9: 5.0, 11: 30.0}

RESULTS: dict[int, str] = {}


def _cli_table_matches() -> bool:
    out = CliRunner().invoke(main, ["table", "--format", "csv"]).output.splitlines()
    rows = [line for line in out[1:] if line]
    parsed = list(csv.reader(rows))
    return [r[1:] for r in parsed] == [list(r) for r in REFERENCE_TABLE]


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    t0 = time.perf_counter()
    records = verify_records(list(CRITERIA[number]), VerifyConfig())
    if number == 1:
        table_ok = _cli_table_matches()
    elapsed = time.perf_counter() - t0
    failed = [r for r in records if r["status"] != "pass"]
    problems = [f"{r['check_id']}: {r['detail']}" for r in failed]
    if number == 1 and not table_ok:
        problems.append("table command output differs from the reference table")
    limit = RUNTIME.get(number)
    if limit is not None and elapsed >= limit:
        problems.append(f"runtime {elapsed:.2f}s exceeds {limit}s")
    status = "FAIL" if problems else "PASS"
    RESULTS[number] = f"criterion {number}: {status} ({len(records)} checks, {elapsed:.2f}s)"
    print(RESULTS[number])
    assert records, "no checks registered"
    assert not problems, "; ".join(problems)
