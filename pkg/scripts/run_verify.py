"""Run every registered check and summarize by acceptance criterion."""

from __future__ import annotations

import argparse
import json

from liouville_star.cli import verify_records
from liouville_star.suite import CRITERIA, VerifyConfig


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--kmax", type=int, default=10)
    ap.add_argument("--modemax", type=int, default=24)
    ap.add_argument("--jsonl", help="also write the raw records here")
    args = ap.parse_args()

    cfg = VerifyConfig(k_max=args.kmax, mode_max=args.modemax)
    records = verify_records(None, cfg, jobs=args.jobs)
    by_suite: dict[str, list[dict]] = {}
    for r in records:
        by_suite.setdefault(r["check_id"].split("/")[0], []).append(r)
    for n, suites in sorted(CRITERIA.items()):
        recs = [r for s in suites for r in by_suite.get(s, [])]
        bad = [r["check_id"] for r in recs if r["status"] != "pass"]
        print(f"criterion {n:2d}: {'FAIL' if bad else 'PASS'}  {len(recs):3d} checks  {' '.join(bad)}")
    if args.jsonl:
        with open(args.jsonl, "w") as fh:
            fh.writelines(json.dumps(r, sort_keys=True) + "\n" for r in records)


if __name__ == "__main__":
    main()
