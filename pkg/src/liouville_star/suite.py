"""Registry of verification checks shared by the CLI and the test-suite.

Every check is a plain function of a :class:`VerifyConfig` that returns an
:class:`Outcome`.  Exact checks report no residual; float checks report the
residual they compared against their tolerance.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Literal, Optional

from . import builders as B
from . import expectations as E
from . import metrics as M
from . import operator as O
from .numerics import ExactScalar
from .phasespace import (
    CircleFunction,
    LatticeFunction,
    Symbol,
    conjugate,
    hamiltonian,
    hamiltonian_bar,
    lattice_delta,
    phase_trace,
    pointwise_mul,
    star,
    star_symbol_left,
    star_symbol_right,
    wigner_transform,
)

Mode = Literal["exact", "float"]
Status = Literal["pass", "fail", "skipped"]
Window = tuple[Optional[int], Optional[int]]


@dataclass(frozen=True)
class VerifyConfig:
    k_max: int = B.DEFAULT.k_max
    mode_max: int = B.DEFAULT.mode_max
    tol: Optional[float] = None

    @property
    def spec(self) -> B.TruncationSpec:
        return B.TruncationSpec(k_max=self.k_max, mode_max=max(self.mode_max, self.k_max))

    def tolerance(self, default: float) -> float:
        return default if self.tol is None else self.tol


@dataclass(frozen=True)
class Outcome:
    ok: bool
    residual: Optional[float] = None
    window: Window = (None, None)
    detail: str = ""


@dataclass(frozen=True)
class Check:
    check_id: str
    suite: str
    mode: Mode
    run: Callable[[VerifyConfig], Outcome] = field(compare=False)


REGISTRY: dict[str, Check] = {}


def register(suite: str, name: str, mode: Mode, fn: Callable[[VerifyConfig], Outcome]) -> None:
    cid = f"{suite}/{name}"
    if cid in REGISTRY:
        raise ValueError(f"duplicate check id {cid}")
    REGISTRY[cid] = Check(cid, suite, mode, fn)


def suites() -> list[str]:
    return sorted({c.suite for c in REGISTRY.values()})


def select(only: Optional[list[str]] = None) -> list[Check]:
    """Checks whose suite or id is in ``only`` (all when None), sorted by id."""
    if not only:
        return sorted(REGISTRY.values(), key=lambda c: c.check_id)
    known = set(suites()) | set(REGISTRY)
    unknown = [o for o in only if o not in known]
    if unknown:
        raise KeyError(", ".join(unknown))
    picked = [c for c in REGISTRY.values() if c.suite in only or c.check_id in only]
    return sorted(picked, key=lambda c: c.check_id)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _match(lhs: LatticeFunction, rhs: LatticeFunction) -> Outcome:
    """Exact agreement on a nonempty common trusted region."""
    region = lhs.known.intersect(rhs.known)
    if region.empty:
        return Outcome(False, window=lhs.window, detail="no common trusted region")
    bad = lhs.disagreements(rhs)
    return Outcome(not bad, window=lhs.window, detail=f"first mismatch at {bad[0]}" if bad else "")


def _zero(res: LatticeFunction) -> Outcome:
    return Outcome(M.trusted_zero(res), window=res.window)


def _all(outcomes: list[Outcome]) -> Outcome:
    failed = [o for o in outcomes if not o.ok]
    # intersection of the windows; None is an open end
    lo = [o.window[0] for o in outcomes if o.window[0] is not None]
    hi = [o.window[1] for o in outcomes if o.window[1] is not None]
    window = (max(lo) if lo else None, min(hi) if hi else None)
    return Outcome(not failed, window=window, detail=failed[0].detail if failed else f"{len(outcomes)} cases")


def _float(residual: float, tol: float) -> Outcome:
    return Outcome(residual <= tol, residual=residual)


# ---------------------------------------------------------------------------
# 1. the WF table
# ---------------------------------------------------------------------------

# transcribed cell for cell, rows f_n / f~_n (n = 0..3), columns p = 0..3
REFERENCE_TABLE: tuple[tuple[str, ...], ...] = (
    ("1 , 1", "-1/2 cos2x , 0", "1/32 cos4x + 1/16 , 0", "-1/1152 cos6x - 1/128 cos2x , 0"),
    ("", "1/4 , 4", "-1/16 cos2x , 0", "1/384 cos4x + 1/256 , 0"),
    ("0 , 4", "0 , 32 cos2x", "1/64 , 64", "-1/384 cos2x , 0"),
    ("", "0 , 36", "0 , 576 cos2x", "1/2304 , 2304"),
)


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def cos_string(row: CircleFunction) -> str:
    """Render an even real row as a cos series with descending harmonics."""
    coeffs: dict[int, Fraction] = {}
    for m, c in row.terms.items():
        if not (isinstance(c, ExactScalar) and c.is_rational()):
            raise ValueError("table cells must be rational")
        q = c.as_fraction()
        if row.coefficient(-m) != c:
            raise ValueError("row is not a cos series")
        if m == 0:
            coeffs[0] = q
        elif m > 0:
            coeffs[m] = 2 * q
    parts = []
    for m in sorted(coeffs, reverse=True):
        q = coeffs[m]
        if q == 0:
            continue
        mag = _fmt_fraction(abs(q))
        body = mag if m == 0 else (f"cos{m}x" if abs(q) == 1 else f"{mag} cos{m}x")
        if not parts:
            parts.append(("-" if q < 0 else "") + body)
        else:
            parts.append(("- " if q < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


def wf_table(n_max: int = 3, p_max: int = 3, spec: Optional[B.TruncationSpec] = None) -> list[list[str]]:
    """Cells "f_n , f~_n" at integer p; blank where both vanish."""
    if n_max > p_max:
        raise ValueError("n_max must not exceed p_max")
    spec = spec or B.TruncationSpec(k_max=max(B.DEFAULT.k_max, p_max + 2), mode_max=max(B.DEFAULT.mode_max, 2 * p_max + 4))
    out = []
    for n in range(n_max + 1):
        f = B.wf(n, spec)
        ft = B.dual_wf_closed(n)
        cells = []
        for p in range(p_max + 1):
            if not f.row_complete(2 * p):
                raise ValueError(f"row p={p} of f_{n} is outside the trusted window")
            a, b = f.row(2 * p), ft.row(2 * p)
            if not a.terms and not b.terms:
                cells.append("")
            else:
                cells.append(f"{cos_string(a)} , {cos_string(b)}")
        out.append(cells)
    return out


def _table_check(cfg: VerifyConfig) -> Outcome:
    got = wf_table(3, 3)
    bad = [(n, p) for n in range(4) for p in range(4) if got[n][p] != REFERENCE_TABLE[n][p]]
    return Outcome(not bad, detail=f"mismatched cells {bad}" if bad else "16 cells")


register("table", "cells", "exact", _table_check)


# ---------------------------------------------------------------------------
# 2. eigenvalue suite
# ---------------------------------------------------------------------------


def _genvalue_left(n: int) -> Callable[[VerifyConfig], Outcome]:
    def run(cfg: VerifyConfig) -> Outcome:
        f = B.wf(n, cfg.spec)
        return _zero(star_symbol_left(hamiltonian(), f) - f * (n * n))

    return run


def _genvalue_right(n: int) -> Callable[[VerifyConfig], Outcome]:
    def run(cfg: VerifyConfig) -> Outcome:
        f = B.wf(n, cfg.spec)
        return _zero(star_symbol_right(f, hamiltonian_bar()) - f * (n * n))

    return run


def _routes(n: int) -> Callable[[VerifyConfig], Outcome]:
    def run(cfg: VerifyConfig) -> Outcome:
        a = B.wf(n, cfg.spec)
        return _all([_match(a, B.wf_by_recursion(n, cfg.spec)), _match(a, B.wf_by_wigner(n, cfg.spec))])

    return run


for _n in range(6):
    register("genvalue", f"h-left-n{_n}", "exact", _genvalue_left(_n))
    register("genvalue", f"hbar-right-n{_n}", "exact", _genvalue_right(_n))
    register("genvalue", f"routes-n{_n}", "exact", _routes(_n))


# ---------------------------------------------------------------------------
# 3. inhomogeneities
# ---------------------------------------------------------------------------


def _dual_inhomo(n: int, side: Literal["right", "left"]) -> Callable[[VerifyConfig], Outcome]:
    def run(cfg: VerifyConfig) -> Outcome:
        f = B.dual_wf(n, n, cfg.spec)
        if side == "right":
            lhs = star_symbol_right(f, hamiltonian())
        else:
            lhs = star_symbol_left(hamiltonian_bar(), f)
        return _match(lhs, B.dual_wf_times_h_closed(n, side))

    return run


def _ground_state(cfg: VerifyConfig) -> Outcome:
    lhs = star_symbol_right(B.dual_wf_closed(0), hamiltonian())
    expected = LatticeFunction({(2, -2): 1})
    return Outcome(lhs == expected, window=lhs.window)


def _g_inhomo(n: int) -> Callable[[VerifyConfig], Outcome]:
    def run(cfg: VerifyConfig) -> Outcome:
        g = B.hybrid_g(n, cfg.spec)
        extra = B.nondiag_h(n, -1, cfg.spec) * (2 * n) if n % 2 else B.nondiag_h(n, -2, cfg.spec) * B.epsilon(n)
        return _all([_match(star_symbol_right(g, hamiltonian()), g * (n * n) + extra), _zero(star_symbol_left(hamiltonian(), g) - g * (n * n))])

    return run


for _n in range(7):
    register("inhomogeneity", f"dual-right-n{_n}", "exact", _dual_inhomo(_n, "right"))
    register("inhomogeneity", f"dual-left-n{_n}", "exact", _dual_inhomo(_n, "left"))
register("inhomogeneity", "dual-ground-state", "exact", _ground_state)
for _n in range(5):
    register("inhomogeneity", f"g-n{_n}", "exact", _g_inhomo(_n))


# ---------------------------------------------------------------------------
# 4. orthogonality
# ---------------------------------------------------------------------------


def _trace_is(f: LatticeFunction, expected: int) -> Outcome:
    tr = phase_trace(f)
    ok = tr.complete and isinstance(tr.value, ExactScalar) and tr.value == ExactScalar(expected)
    return Outcome(ok, window=f.window, detail=f"trace {tr.value} complete={tr.complete}")


def _biorthonormal(cfg: VerifyConfig) -> Outcome:
    out = []
    for k in range(6):
        f = B.wf(k, cfg.spec)
        for n in range(6):
            out.append(_trace_is(star(f, B.dual_wf_closed(n)), int(k == n)))
    return _all(out)


def _dual_norms(cfg: VerifyConfig) -> Outcome:
    out = []
    for n in range(7):
        rep = E.norm_under_dual_metric(B.dual_wf(n, n, cfg.spec))
        ok = rep.window_complete and rep.value == ExactScalar(B.epsilon(n))
        out.append(Outcome(ok, detail=f"n={n}: {rep.value}"))
    return _all(out)


def _dual_offdiag(cfg: VerifyConfig) -> Outcome:
    out = []
    for k in range(6):
        for n in range(6):
            if k != n:
                rep = E.norm_under_dual_metric(B.dual_wf(k, n, cfg.spec))
                out.append(Outcome(rep.window_complete and rep.value == ExactScalar(0), detail=f"({k},{n}): {rep.value}"))
    return _all(out)


register("orthogonality", "wf-dual-trace", "exact", _biorthonormal)
register("orthogonality", "dual-norms", "exact", _dual_norms)
register("orthogonality", "dual-offdiagonal", "exact", _dual_offdiag)


# ---------------------------------------------------------------------------
# 5. non-diagonal star table
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _family(name: str, j: int, k: int, spec: B.TruncationSpec) -> LatticeFunction:
    ctor = {
        "e": lambda: B.free_wf(j, k, "R"),
        "f": lambda: B.wf_pair(j, k, spec),
        "ft": lambda: B.dual_wf(j, k, spec),
        "g": lambda: B.hybrid_g_pair(j, k, spec),
        "h": lambda: B.hybrid_h_pair(j, k, "R", spec),
        "ht": lambda: B.dual_hybrid_pair(j, k, "R", spec),
    }[name]
    return ctor()


def _fam(name: str, j: int, k: int, spec: B.TruncationSpec, bar: bool = False) -> LatticeFunction:
    f = _family(name, j, k, spec)
    return conjugate(f) if bar else f


# (left factor, right factor, result), each (family, index order, conjugated);
# index letters refer to the tuple (j, k, l, m) and every product carries delta_{k,l}
STAR_TABLE: dict[str, tuple[tuple[str, str, bool], tuple[str, str, bool], tuple[str, str, bool]]] = {
    "e*e": (("e", "jk", False), ("e", "lm", False), ("e", "jm", False)),
    "f*ft": (("f", "jk", False), ("ft", "lm", False), ("g", "jm", False)),
    "ft*f": (("ft", "jk", False), ("f", "lm", False), ("g", "mj", True)),
    "f*gbar": (("f", "jk", False), ("g", "ml", True), ("f", "jm", False)),
    "g*f": (("g", "jk", False), ("f", "lm", False), ("f", "jm", False)),
    "g*g": (("g", "jk", False), ("g", "lm", False), ("g", "jm", False)),
    "gbar*ft": (("g", "lm", True), ("ft", "kj", False), ("ft", "mj", False)),
    "g*h": (("g", "jk", False), ("h", "lm", False), ("h", "jm", False)),
    "h*e": (("h", "jk", False), ("e", "lm", False), ("h", "jm", False)),
    "e*ht": (("e", "jk", False), ("ht", "lm", False), ("ht", "jm", False)),
    "h*ht": (("h", "jk", False), ("ht", "lm", False), ("g", "jm", False)),
    "f*htbar": (("f", "jk", False), ("ht", "ml", True), ("h", "jm", False)),
    "htbar*ht": (("ht", "kj", True), ("ht", "lm", False), ("ft", "jm", False)),
    "ht*f": (("ht", "jk", False), ("f", "lm", False), ("h", "mj", True)),
    "ht*g": (("ht", "jk", False), ("g", "lm", False), ("ht", "jm", False)),
    "ht*h": (("ht", "jk", False), ("h", "lm", False), ("e", "jm", False)),
}


def star_table_case(rule: str, j: int, k: int, l: int, m: int, spec: B.TruncationSpec = B.DEFAULT) -> Outcome:
    idx = {"j": j, "k": k, "l": l, "m": m}

    def build(part: tuple[str, str, bool]) -> LatticeFunction:
        name, order, bar = part
        return _fam(name, idx[order[0]], idx[order[1]], spec, bar)

    left, right, result = STAR_TABLE[rule]
    lhs = star(build(left), build(right))
    rhs = build(result) if k == l else LatticeFunction.zero()
    return _match(lhs, rhs)


def _star_rule(rule: str) -> Callable[[VerifyConfig], Outcome]:
    def run(cfg: VerifyConfig) -> Outcome:
        cases = [star_table_case(rule, *t, spec=cfg.spec) for t in itertools.product(range(5), repeat=4)]
        return _all(cases)

    return run


for _rule in STAR_TABLE:
    register("appendix-d", _rule, "exact", _star_rule(_rule))


# ---------------------------------------------------------------------------
# 6. composition law and the delta identity
# ---------------------------------------------------------------------------


def random_trig(rng: random.Random, degree: int = 6) -> CircleFunction:
    size = rng.randint(1, 2 * degree + 1)
    return CircleFunction(
        {m: Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for m in rng.sample(range(-degree, degree + 1), size)}
    )


def master_law_holds(psi: CircleFunction, phi: CircleFunction, eta: CircleFunction, chi: CircleFunction) -> bool:
    lhs = star(wigner_transform(psi, phi), wigner_transform(eta, chi))
    return lhs == wigner_transform(psi, chi) * phi.pairing(eta)


def delta_identity_holds(psi: CircleFunction, phi: CircleFunction) -> bool:
    mid = star_symbol_left(Symbol.from_circle(psi), lattice_delta(0))
    return star_symbol_right(mid, Symbol.from_circle(phi)) == wigner_transform(psi, phi)


def _master_law(cfg: VerifyConfig) -> Outcome:
    rng = random.Random(20240601)
    fails = sum(not master_law_holds(*(random_trig(rng) for _ in range(4))) for _ in range(60))
    return Outcome(fails == 0, detail=f"{fails} of 60 quadruples failed")


def _delta_identity(cfg: VerifyConfig) -> Outcome:
    rng = random.Random(7)
    fails = sum(not delta_identity_holds(random_trig(rng), random_trig(rng)) for _ in range(25))
    return Outcome(fails == 0, detail=f"{fails} of 25 pairs failed")


register("wigner-law", "master-law", "exact", _master_law)
register("wigner-law", "delta-identity", "exact", _delta_identity)


# ---------------------------------------------------------------------------
# 7. metrics
# ---------------------------------------------------------------------------

_ROWS = 16  # p <= 8


def _dual_entwine(cfg: VerifyConfig) -> Outcome:
    return _zero(M.entwine_residual_dual(M.dual_metric_exact(_ROWS)))


def _dual_as_wfs(cfg: VerifyConfig) -> Outcome:
    return _match(M.dual_metric_exact(_ROWS), M.dual_metric_as_wfs(_ROWS))


def _reflected(cfg: VerifyConfig) -> Outcome:
    return _zero(M.entwine_residual_metric(M.reflect_momentum(M.dual_metric_exact(_ROWS))))


COMPOSITE_PARAMS = ((Fraction(2), Fraction(1)), (Fraction(1), Fraction(3)), (Fraction(-3), Fraction(1, 2)), (Fraction(1, 2), Fraction(5, 4)))


def _composite(s: Fraction, t: Fraction) -> Callable[[VerifyConfig], Outcome]:
    def run(cfg: VerifyConfig) -> Outcome:
        fam = M.SeparableFamily("dualR_composite", s, t)
        return _zero(M.entwine_residual_dual(M.family_lattice(fam, (0, _ROWS))))

    return run


register("dual-metric", "exact-entwine", "exact", _dual_entwine)
register("dual-metric", "as-wf-sum", "exact", _dual_as_wfs)
register("dual-metric", "reflected-metric", "exact", _reflected)
for _s, _t in COMPOSITE_PARAMS:
    register("dual-metric", f"composite-s{_s}-t{_t}".replace("/", "_"), "exact", _composite(_s, _t))

FLOAT_FAMILIES = {"dualR_basic": (0, 12), "R_basic": (2, 12), "R_other": (-12, 0)}
FLOAT_S = (0.5, 1.0, 2.0)


def _float_family(kind: str, s: float) -> Callable[[VerifyConfig], Outcome]:
    def run(cfg: VerifyConfig) -> Outcome:
        res = M.family_residual(M.SeparableFamily(kind, s), FLOAT_FAMILIES[kind])  # type: ignore[arg-type]
        if res.known.empty:
            return Outcome(False, detail="empty trusted region")
        o = _float(res.max_abs_within(), cfg.tolerance(1e-10))
        return Outcome(o.ok, o.residual, res.window)

    return run


def _structure(s: float) -> Callable[[VerifyConfig], Outcome]:
    def run(cfg: VerifyConfig) -> Outcome:
        return _float(M.h_dual_r_structure_residual(s), cfg.tolerance(1e-10))

    return run


for _kind in FLOAT_FAMILIES:
    for _s in FLOAT_S:
        register("metric-float", f"{_kind}-s{_s}", "float", _float_family(_kind, _s))
for _s in FLOAT_S:
    register("metric-float", f"h-dual-structure-s{_s}", "float", _structure(_s))


# ---------------------------------------------------------------------------
# 8. star roots
# ---------------------------------------------------------------------------


def _root_square(which: str) -> Callable[[VerifyConfig], Outcome]:
    def run(cfg: VerifyConfig) -> Outcome:
        root = {"nc": lambda: M.dual_root_nc(_ROWS, 40), "r": lambda: M.dual_root_r(_ROWS), "l": lambda: M.dual_root_l(_ROWS, 40)}[which]()
        return _match(M.absolute_star_square(root), M.dual_metric_exact(_ROWS))

    return run


def _root_composite(s: Fraction) -> Callable[[VerifyConfig], Outcome]:
    def run(cfg: VerifyConfig) -> Outcome:
        root = M.family_lattice(M.SeparableFamily("dualS_basic", s), (0, _ROWS), 40)
        comp = M.family_lattice(M.SeparableFamily("dualR_composite", s * s, 1 + s**4 / 16), (0, _ROWS))
        return _match(M.absolute_star_square(root), comp)

    return run


def _root_hybrid(ch: str) -> Callable[[VerifyConfig], Outcome]:
    def run(cfg: VerifyConfig) -> Outcome:
        h = M.hybrid_sum_root(ch, 6, B.TruncationSpec(k_max=8, mode_max=30))  # type: ignore[arg-type]
        closed = {"R": lambda: M.dual_root_r(_ROWS), "L": lambda: M.dual_root_l(_ROWS, 40), "NC": lambda: M.dual_root_nc(_ROWS, 40)}[ch]()
        return _match(h, closed)

    return run


def _root_r_gamma(cfg: VerifyConfig) -> Outcome:
    return _match(M.dual_root_r(_ROWS), M.dual_root_r_via_gamma(_ROWS))


for _w in ("nc", "r", "l"):
    register("star-roots", f"square-{_w}", "exact", _root_square(_w))
for _s in (Fraction(2), Fraction(-2), Fraction(1)):
    register("star-roots", f"composite-s{_s}", "exact", _root_composite(_s))
for _ch in ("R", "L", "NC"):
    register("star-roots", f"hybrid-sum-{_ch}", "exact", _root_hybrid(_ch))
register("star-roots", "r-via-gamma", "exact", _root_r_gamma)


# ---------------------------------------------------------------------------
# 9-10. expectations
# ---------------------------------------------------------------------------

EXPECT_S = (0.5, 1.0, 2.0, 4.0)


def _displayed(shown_of, closed_of, generic_of) -> Callable[[VerifyConfig], Outcome]:
    def run(cfg: VerifyConfig) -> Outcome:
        worst, at = 0.0, ""
        for s in EXPECT_S:
            shown, closed, generic = shown_of(s), closed_of(s), generic_of(s).complex_value
            dev = max(abs(shown - closed), abs(shown - generic))
            if dev > worst:
                worst, at = dev, f"s={s:g}: displayed {shown:.12g}, closed {closed:.12g}, generic {generic.real:.12g}"
        o = _float(worst, cfg.tolerance(1e-9))
        return Outcome(o.ok, o.residual, detail="" if o.ok else at)

    return run


def _displayed_norm(key: tuple[int, int]) -> Callable[[VerifyConfig], Outcome]:
    return _displayed(
        E.DISPLAYED_NORMS[key], lambda s: E.dual_norm_closed(*key, s), lambda s: E.dual_norm_generic(*key, s)
    )


def _displayed_h(key: tuple[int, int]) -> Callable[[VerifyConfig], Outcome]:
    return _displayed(E.DISPLAYED_H[key], lambda s: E.dual_h_closed(*key, s), lambda s: E.dual_h_generic(*key, s))


def _h_ratio(cfg: VerifyConfig) -> Outcome:
    got = {n: E.h_ratio_exact(n) for n in range(5)}
    return Outcome(all(got[n] == n * n for n in got), detail=str({n: str(v) for n, v in got.items()}))


for _key in sorted(E.DISPLAYED_NORMS):
    register("expectations", f"norm-{_key[0]}-{_key[1]}", "float", _displayed_norm(_key))
for _key in sorted(E.DISPLAYED_H):
    register("expectations", f"h-{_key[0]}-{_key[1]}", "float", _displayed_h(_key))
register("expectations", "exact-h-ratio", "exact", _h_ratio)


def _ratio_shift(cfg: VerifyConfig) -> Outcome:
    dev = abs(E.dual_h_closed(2, 2, 2.0) / E.dual_norm_closed(2, 2, 2.0) - 4)
    return Outcome(dev > 0.01, detail=f"|H~_2/N~_2 - 4| = {dev:.6g} at s=2")


def _offdiag_norm(cfg: VerifyConfig) -> Outcome:
    v = E.dual_norm_closed(0, 2, 1.0)
    return Outcome(v != 0, detail=f"N~_0,2(1) = {v:.17g}")


register("metric-dependence", "h-ratio-shift", "float", _ratio_shift)
register("metric-dependence", "offdiagonal-norm", "float", _offdiag_norm)


# ---------------------------------------------------------------------------
# 11. operators
# ---------------------------------------------------------------------------


def _op_hermitian(cfg: VerifyConfig) -> Outcome:
    return _float(O.f_metric_matrix(1.0, 12).hermiticity_defect(), cfg.tolerance(1e-12))


def _op_residuals(cfg: VerifyConfig) -> Outcome:
    """Both residuals <= tol at N = 14 and at least 10x below their N = 8 values."""
    r14 = max(O.intertwine_residual(1.0, 14), *O.pf_commutator_residual(1.0, 14))
    r8 = max(O.intertwine_residual(1.0, 8), *O.pf_commutator_residual(1.0, 8))
    ok = r14 <= cfg.tolerance(1e-9) and 10 * r14 <= r8
    return Outcome(ok, residual=r14, detail=f"N=8: {r8:.3g}, N=14: {r14:.3g}")


def _op_residual_bound(cfg: VerifyConfig) -> Outcome:
    r14 = max(O.intertwine_residual(1.0, 14), *O.pf_commutator_residual(1.0, 14))
    return _float(r14, cfg.tolerance(1e-9))


def _op_sigma(cfg: VerifyConfig) -> Outcome:
    d = O.f_metric_matrix(1.0, 10).entries - O.f_metric_matrix_sigma(1.0, 10).entries
    return _float(float(abs(d).max()), cfg.tolerance(1e-10))


def _op_dpd(cfg: VerifyConfig) -> Outcome:
    d = O.f_metric_matrix(1.0, 10).entries - O.f_metric_matrix_dpd(1.0, 10).entries
    return _float(float(abs(d).max()), cfg.tolerance(1e-9))


def _op_weyl(cfg: VerifyConfig) -> Outcome:
    const, spread = O.weyl_proportionality(1.0, 12)
    o = _float(spread, cfg.tolerance(1e-6))
    return Outcome(o.ok, o.residual, detail=f"constant {const:.17g}")


register("operator", "f-hermitian", "float", _op_hermitian)
register("operator", "residual-bound", "float", _op_residual_bound)
register("operator", "residual-scaling", "float", _op_residuals)
register("operator", "dyadic-vs-sigma", "float", _op_sigma)
register("operator", "dpd-reconstruction", "float", _op_dpd)
register("operator", "weyl-proportionality", "float", _op_weyl)


# ---------------------------------------------------------------------------
# 12. free-particle limit
# ---------------------------------------------------------------------------

LIMIT_M = (Fraction(0), Fraction(1, 10), Fraction(1, 2))


def _limit_orthonormality(m: Fraction) -> Callable[[VerifyConfig], Outcome]:
    def run(cfg: VerifyConfig) -> Outcome:
        bad = [(j, k) for j in range(5) for k in range(5) if B.rescaled_orthonormality(j, k, m) != ExactScalar(int(j == k))]
        return Outcome(not bad, detail=f"failing pairs {bad}" if bad else "25 pairs")

    return run


def _limit_basis(cfg: VerifyConfig) -> Outcome:
    bad = []
    for n in range(5):
        a, j = B.rescaled_pair(n, 0)
        fa, fj = B.free_limit_pair(n)
        if (a - fa).terms or (j - fj).terms:
            bad.append(n)
    return Outcome(not bad, detail=f"failing n {bad}" if bad else "n <= 4")


for _m in LIMIT_M:
    register("limit", f"orthonormality-m{_m}".replace("/", "_"), "exact", _limit_orthonormality(_m))
register("limit", "m0-basis", "exact", _limit_basis)


# ---------------------------------------------------------------------------
# 13. negative controls
# ---------------------------------------------------------------------------


def _nonzero(res: LatticeFunction) -> Outcome:
    """Passes when the residual has a nonzero coefficient where it is trusted."""
    hit = any(res.known.contains(*key) and not c.is_zero() for key, c in res.terms.items())
    return Outcome(hit, window=res.window)


def _q_control(cfg: VerifyConfig) -> Outcome:
    return _nonzero(M.entwine_residual_dual(M.q_control()))


def _perturbed(cfg: VerifyConfig) -> Outcome:
    return _nonzero(M.star_root_residual_dual(M.perturbed_dual_root()))


def _parity(cfg: VerifyConfig) -> Outcome:
    v = O.parity_commutator(10)
    return Outcome(v > 0.5, residual=None, detail=f"|[H,P]| = {v}")


register("controls", "q-not-entwined", "exact", _q_control)
register("controls", "perturbed-root", "exact", _perturbed)
register("controls", "parity-noncommuting", "exact", _parity)


# criterion number -> suites
CRITERIA: dict[int, tuple[str, ...]] = {
    1: ("table",),
    2: ("genvalue",),
    3: ("inhomogeneity",),
    4: ("orthogonality",),
    5: ("appendix-d",),
    6: ("wigner-law",),
    7: ("dual-metric", "metric-float"),
    8: ("star-roots",),
    9: ("expectations",),
    10: ("metric-dependence",),
    11: ("operator",),
    12: ("limit",),
    13: ("controls",),
}
