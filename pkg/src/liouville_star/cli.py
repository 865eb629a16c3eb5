"""Command-line front end: ``python -m liouville_star <command>``."""

from __future__ import annotations

import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional

import click

from . import builders as B
from . import expectations as E
from . import operator as O
from . import suite as S

SCHEMA = 1


def _num(v: float) -> str:
    return f"{v:.17g}"


def _float_list(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip()]


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def run_check(check_id: str, cfg: S.VerifyConfig, mode: Optional[str] = None) -> dict:
    check = S.REGISTRY[check_id]
    record = {"schema": SCHEMA, "check_id": check_id, "mode": check.mode}
    if mode is not None and check.mode != mode:
        record.update(status="skipped", residual=None, window=[None, None], detail="mode filtered", elapsed_ms=0)
        return record
    t0 = time.perf_counter()
    try:
        outcome = check.run(cfg)
        status = "pass" if outcome.ok else "fail"
        residual, window, detail = outcome.residual, list(outcome.window), outcome.detail
    except Exception as exc:  # a crashing check is a failing check
        status, residual, window, detail = "fail", None, [None, None], f"{type(exc).__name__}: {exc}"
    record.update(
        status=status,
        residual=None if check.mode == "exact" else residual,
        window=window,
        detail=detail,
        elapsed_ms=int(round(1000 * (time.perf_counter() - t0))),
    )
    return record


def verify_records(
    only: Optional[list[str]] = None, cfg: S.VerifyConfig = S.VerifyConfig(), mode: Optional[str] = None, jobs: int = 1
) -> list[dict]:
    ids = [c.check_id for c in S.select(only)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(run_check, ids, [cfg] * len(ids), [mode] * len(ids)))
    else:
        records = [run_check(i, cfg, mode) for i in ids]
    return sorted(records, key=lambda r: r["check_id"])


@click.group()
def main() -> None:
    """Exact phase-space checks for imaginary Liouville quantum mechanics."""


@main.command()
@click.option("--only", multiple=True, help="Suite or check id (repeatable).")
@click.option("--mode", type=click.Choice(["exact", "float"]), default=None, help="Run only checks of this mode.")
@click.option("--tol", type=float, default=None, help="Tolerance override for float checks.")
@click.option("--kmax", type=int, default=B.DEFAULT.k_max, show_default=True)
@click.option("--modemax", type=int, default=B.DEFAULT.mode_max, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--list", "list_only", is_flag=True, help="List suites and exit.")
def verify(only, mode, tol, kmax, modemax, out, jobs, list_only) -> None:
    """Run the registered checks and print one JSON object per check."""
    if list_only:
        click.echo("\n".join(S.suites()))
        return
    try:
        S.select(list(only))
    except KeyError as exc:
        raise click.BadParameter(f"unknown filter id: {exc.args[0]}", param_hint="--only")
    try:
        cfg = S.VerifyConfig(k_max=kmax, mode_max=modemax, tol=tol)
        cfg.spec
    except ValueError as exc:
        raise click.BadParameter(str(exc))
    records = verify_records(list(only), cfg, mode, jobs)
    text = "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
    _emit(text, out)
    if any(r["status"] == "fail" for r in records):
        sys.exit(1)


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------


def render_table(cells: list[list[str]], fmt: str) -> str:
    header = ["", *(f"p={p}" for p in range(len(cells[0])))]
    rows = [[f"f_{n} , f~_{n}", *row] for n, row in enumerate(cells)]
    if fmt == "json":
        return json.dumps({"columns": header[1:], "rows": {r[0]: r[1:] for r in rows}}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


@main.command()
@click.option("--nmax", type=int, default=3, show_default=True)
@click.option("--pmax", type=int, default=3, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["markdown", "csv", "json"]), default="markdown", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def table(nmax, pmax, fmt, out) -> None:
    """WF and dual WF values at integer p."""
    if nmax > pmax:
        raise click.BadParameter("nmax must not exceed pmax")
    _emit(render_table(S.wf_table(nmax, pmax), fmt), out)


# ---------------------------------------------------------------------------
# expect
# ---------------------------------------------------------------------------


def expectation_rows(family: str, k: int, n: int, grid: list[float]) -> tuple[list[str], list[list[str]]]:
    if family == "norm":
        header = ["s", "N~", "closed", "generic", "abs_diff"]
        shown = E.DISPLAYED_NORMS.get((k, n))
        closed = lambda s: E.dual_norm_closed(k, n, s)
        generic = lambda s: E.dual_norm_generic(k, n, s).complex_value.real
    elif family == "h":
        header = ["s", "H~", "closed", "generic", "abs_diff"]
        shown = E.DISPLAYED_H.get((k, n))
        closed = lambda s: E.dual_h_closed(k, n, s)
        generic = lambda s: E.dual_h_generic(k, n, s).complex_value.real
    elif family == "metric-norm":
        if k != n:
            raise ValueError("metric-norm takes a single index")
        header = ["s", "N", "closed", "generic", "abs_diff"]
        shown = None
        closed = lambda s: float(E.metric_norm_series(n, s).value)
        generic = lambda s: E.metric_norm_generic(n, s)
    else:
        raise ValueError(f"unknown family {family!r}")
    rows = []
    for s in grid:
        c, g = closed(s), generic(s)
        v = shown(s) if shown is not None else c
        rows.append([_num(s), _num(v), _num(c), _num(g), _num(abs(c - g))])
    return header, rows


def _csv(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


@main.command()
@click.option("--family", type=click.Choice(["norm", "h", "metric-norm"]), default="norm", show_default=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, default=None, help="Left index for non-diagonal values (defaults to n).")
@click.option("--s", "grid", default="0.5,1,2", show_default=True, help="Comma-separated s values; may be empty.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def expect(family, n, k, grid, out) -> None:
    """Expectation values over an s grid as CSV (the displayed form where one exists)."""
    k = n if k is None else k
    try:
        values = _float_list(grid)
        if any(s == 0 for s in values):
            raise ValueError("s must be nonzero")
        header, rows = expectation_rows(family, k, n, values)
    except ValueError as exc:
        raise click.BadParameter(str(exc))
    _emit(_csv(header, rows), out)


# ---------------------------------------------------------------------------
# operator
# ---------------------------------------------------------------------------


def operator_rows(s_values: list[float], n_values: list[int]) -> list[list[str]]:
    rows = []
    for s in s_values:
        for N in sorted(n_values):
            inter = O.intertwine_residual(s, N)
            comm = max(O.pf_commutator_residual(s, N))
            const, _ = O.weyl_proportionality(s, N)
            rows.append([_num(s), str(N), _num(inter), _num(comm), _num(const)])
    return rows


@main.command()
@click.option("--s", "s_list", default="1", show_default=True)
@click.option("--N", "n_list", default="8,10,12,14", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def operator(s_list, n_list, out) -> None:
    """Residuals of the plane-wave matrix identities as CSV."""
    s_values, n_values = _float_list(s_list), _int_list(n_list)
    if any(s == 0 for s in s_values):
        raise click.BadParameter("s must be nonzero", param_hint="--s")
    if any(N < 6 for N in n_values):
        raise click.BadParameter("N must be at least 6", param_hint="--N")
    header = ["s", "N", "intertwine_residual", "commutator_residual", "weyl_constant"]
    _emit(_csv(header, operator_rows(s_values, n_values)), out)


# ---------------------------------------------------------------------------
# limit
# ---------------------------------------------------------------------------


def limit_report(m: Fraction, n_max: int = 4) -> dict:
    ortho = max(
        abs(B.rescaled_orthonormality(j, k, m).as_fraction() - int(j == k)) for j in range(n_max + 1) for k in range(n_max + 1)
    )
    dev = Fraction(0)
    for n in range(n_max + 1):
        a, j = B.rescaled_pair(n, m)
        fa, fj = B.free_limit_pair(n)
        for diff in (a - fa, j - fj):
            for c in diff.terms.values():
                dev = max(dev, abs(c.as_fraction()))
    positive = [str(B.kernel_positive_power(q, m)) for q in range(1, 4)]
    return {
        "m": str(m),
        "orthonormality_max_deviation": str(ortho),
        "coefficient_max_deviation": str(dev),
        "positive_power_projections": positive,
    }


@main.command()
@click.option("--m", "m_list", default="0,1/10,1/2", show_default=True, help="Comma-separated rationals.")
@click.option("--nmax", type=int, default=4, show_default=True)
def limit(m_list, nmax) -> None:
    """Free-particle limit of the rescaled biorthogonal pairs (JSON Lines)."""
    try:
        ms = [Fraction(t.strip()) for t in m_list.split(",") if t.strip()]
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--m")
    for m in ms:
        click.echo(json.dumps(limit_report(m, nmax), sort_keys=True))


if __name__ == "__main__":
    main()
