"""Metrics, dual metrics, their star roots and the entwining checks.

Conventions: a dual metric R~ obeys H * R~ = R~ * Hbar, a metric R obeys
Hbar * R = R * H, a dual root S~ obeys H * S~ = S~ * p^2 and a root S obeys
p^2 * S = S * H.  Families whose x-profile is exp(a cos 2x) are stored with
float Fourier coefficients I_n(a); everything built from one-sided
exponentials or polynomials is exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Sequence

from .builders import DEFAULT, Chirality, TruncationSpec, dual_wf_closed, epsilon, hybrid_h, sqrt_epsilon
from .numerics import ExactScalar, FloatScalar, SQRT2, bessel_i, factorial, incomplete_gamma_poly
from .phasespace import (
    CircleFunction,
    LatticeFunction,
    Symbol,
    conjugate,
    hamiltonian,
    hamiltonian_bar,
    momentum_squared,
    star,
    star_symbol_left,
    star_symbol_right,
)
from .regions import Region

Kind = Literal[
    "dualR_basic",
    "dualR_other",
    "R_basic",
    "R_other",
    "dualS_basic",
    "dualS_other",
    "S_basic",
    "S_other",
    "dualR_composite",
    "S_bessel",
    "S_other_bessel",
]

# valid integer p for each profile; None is unbounded
_VALID: dict[str, tuple[Optional[int], Optional[int]]] = {
    "dualR_basic": (None, None),
    "dualR_other": (None, -1),
    "R_basic": (1, None),
    "R_other": (None, None),
    "dualS_basic": (None, None),
    "dualS_other": (None, -1),
    "S_basic": (1, None),
    "S_other": (None, None),
    "dualR_composite": (None, None),
    "S_bessel": (1, None),
    "S_other_bessel": (None, None),
}

# rows where the profile vanishes identically (1/Gamma of a nonpositive integer)
_ZERO_ROWS: dict[str, tuple[Optional[int], Optional[int]]] = {
    "dualR_basic": (None, -1),
    "R_other": (1, None),
    "dualS_basic": (None, -1),
    "S_other": (1, None),
    "dualR_composite": (None, -1),
    "S_other_bessel": (1, None),
}

_FLOAT_KINDS = {"dualR_basic", "dualR_other", "R_basic", "R_other"}
_DUAL_KINDS = {"dualR_basic", "dualR_other", "dualR_composite"}


@dataclass(frozen=True)
class SeparableFamily:
    """A product-ansatz solution: p-profile times x-profile.

    ``s`` is the family parameter (the coupling m for the Bessel kinds);
    ``t`` is the second parameter of the composite dual metric.
    """

    kind: Kind
    s: Fraction | float = Fraction(1)
    t: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.kind not in _VALID:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.s == 0:
            raise ValueError("s must be nonzero")
        if self.kind == "dualR_composite" and self.t is None:
            raise ValueError("the composite family needs t")
        if not isinstance(self.s, float):
            object.__setattr__(self, "s", Fraction(self.s))
        if self.t is not None:
            object.__setattr__(self, "t", Fraction(self.t))

    @property
    def regime(self) -> Literal["exact", "float"]:
        if self.kind in _FLOAT_KINDS or isinstance(self.s, float):
            return "float"
        return "exact"

    @property
    def valid(self) -> tuple[Optional[int], Optional[int]]:
        return _VALID[self.kind]

    @property
    def equation(self) -> Literal["dual", "metric", "dual_root", "root"]:
        if self.kind in _DUAL_KINDS:
            return "dual"
        if self.kind.startswith("dualS"):
            return "dual_root"
        if self.kind.startswith("S"):
            return "root"
        return "metric"


def _check_range(fam: SeparableFamily, p_lo: int, p_hi: int) -> None:
    lo, hi = fam.valid
    if (lo is not None and p_lo < lo) or (hi is not None and p_hi > hi):
        raise ValueError(f"{fam.kind} has Gamma poles outside p in [{lo}, {hi}]; requested [{p_lo}, {p_hi}]")


def _vanishes(fam: SeparableFamily, p: int) -> bool:
    zr = _ZERO_ROWS.get(fam.kind)
    if zr is None:
        return False
    lo, hi = zr
    return (lo is None or p >= lo) and (hi is None or p <= hi)


def _gamma_int(n: int) -> int:
    """Gamma(n) for a positive integer n."""
    return factorial(n - 1)


def _p_profile(fam: SeparableFamily, p: int):
    s = fam.s
    kind = fam.kind
    if _vanishes(fam, p):
        return 0
    if kind in ("dualR_basic", "dualS_basic"):
        return 1 / (s**p * factorial(p))
    if kind in ("dualR_other", "dualS_other"):
        return _gamma_int(-p) / s**p
    if kind in ("R_basic", "S_basic"):
        return s**p * _gamma_int(p)
    if kind in ("R_other", "S_other"):
        return s**p / factorial(-p)
    raise AssertionError(kind)


def _float_modes(a: float, mode_max: int) -> dict[int, float]:
    """Fourier coefficients of exp(a cos 2x), harmonics 2n with |2n| <= mode_max."""
    out = {}
    for n in range(0, mode_max // 2 + 1):
        c = bessel_i(n, a)
        out[2 * n] = c
        if n:
            out[-2 * n] = c
    return out


def _one_sided_exp(c: Fraction, mode_max: int) -> dict[int, Fraction]:
    """exp(c e^{2ix}) truncated to modes <= mode_max, exact."""
    out = {}
    term = Fraction(1)
    for a in range(0, mode_max // 2 + 1):
        if a:
            term = term * c / a
        out[2 * a] = term
    return out


def family_lattice(
    fam: SeparableFamily, k_range: tuple[int, int], mode_max: int = 40
) -> LatticeFunction:
    """Lattice rows k = 2p for integer p in [k_range[0]/2, k_range[1]/2].

    ``known`` covers the requested rows plus any rows where the profile is
    identically zero; ``support`` records the true mode range, with the
    float families' exp(a cos 2x) tails (below 1e-17 relative for the
    default mode_max) treated as absent.
    """
    k_lo, k_hi = k_range
    p_lo, p_hi = -((-k_lo) // 2), k_hi // 2
    if p_lo > p_hi:
        raise ValueError("empty momentum range")
    _check_range(fam, p_lo, p_hi)
    kind = fam.kind
    if kind == "dualR_composite":
        return _composite(fam, p_lo, p_hi)
    if kind in ("S_bessel", "S_other_bessel"):
        return _bessel_root(fam, p_lo, p_hi, mode_max)
    known = _rows_with_zeros(fam, 2 * p_lo, 2 * p_hi)
    terms: dict[tuple[int, int], object] = {}
    M = mode_max // 2
    if kind in _FLOAT_KINDS:
        sign = 1 if kind in ("dualR_other", "R_basic") else -1
        modes = _float_modes(sign * float(fam.s) / 2, mode_max)
        for p in range(p_lo, p_hi + 1):
            pref = float(_p_profile(fam, p))
            if pref:
                for m, c in modes.items():
                    terms[(m, 2 * p)] = FloatScalar(pref * c)
        support = _row_support(fam).intersect(Region(m=(-2 * M, 2 * M)))
        return LatticeFunction(terms, known=known, support=support)
    # one-sided exponentials exp(c e^{2ix}), exact unless s is a float
    c0 = (-1 if kind in ("dualS_basic", "S_other") else 1) * fam.s / 4
    series = _one_sided_exp(c0, mode_max) if fam.regime == "exact" else _one_sided_exp_float(c0, mode_max)
    for p in range(p_lo, p_hi + 1):
        pref = _p_profile(fam, p)
        if pref:
            for m, c in series.items():
                terms[(m, 2 * p)] = pref * c if fam.regime == "exact" else FloatScalar(float(pref) * c)
    known = known.intersect(Region(m=(None, 2 * M)))
    support = _row_support(fam).intersect(Region(m=(0, None)))
    return LatticeFunction(terms, known=known, support=support)


def _one_sided_exp_float(c: float, mode_max: int) -> dict[int, float]:
    out = {}
    term = 1.0
    for a in range(0, mode_max // 2 + 1):
        if a:
            term = term * c / a
        out[2 * a] = term
    return out


def _row_support(fam: SeparableFamily) -> Region:
    zr = _ZERO_ROWS.get(fam.kind)
    if zr is None:
        return Region.full()
    lo, hi = zr
    if lo is None:
        return Region.rows(2 * (hi + 1), None)
    return Region.rows(None, 2 * (lo - 1))


def _rows_with_zeros(fam: SeparableFamily, k_lo: int, k_hi: int) -> Region:
    """Requested rows, extended over the rows where the profile is identically zero."""
    zr = _ZERO_ROWS.get(fam.kind)
    lo, hi = k_lo, k_hi
    if zr is not None:
        z_lo, z_hi = zr
        if z_lo is None and k_lo <= 2 * (z_hi + 1):
            lo = None
        if z_hi is None and k_hi >= 2 * (z_lo - 1):
            hi = None
    return Region.rows(lo, hi)


def _composite(fam: SeparableFamily, p_lo: int, p_hi: int) -> LatticeFunction:
    """(t/s - cos(2x)/2)^p / (p!)^2, exact."""
    base = CircleFunction({0: fam.t / fam.s, 2: Fraction(-1, 4), -2: Fraction(-1, 4)})
    rows = {}
    for p in range(max(p_lo, 0), p_hi + 1):
        rows[2 * p] = base**p * Fraction(1, factorial(p) ** 2)
    known = _rows_with_zeros(fam, 2 * p_lo, 2 * p_hi)
    support = Region(k=(0, None), s=(0, None), d=(None, 0))
    return LatticeFunction.from_rows(rows, known=known, support=support)


def _bessel_root(fam: SeparableFamily, p_lo: int, p_hi: int, mode_max: int) -> LatticeFunction:
    """Gamma(p)(2/m)^p e^{-ipx} I_p(m e^{ix}) and (2/m)^p e^{-ipx} J_p(m e^{ix}) / Gamma(1-p).

    With coupling m the row p holds sum_k c_k e^{2ikx}; both kinds are exact.
    """
    m = fam.s
    q = (m / 2) ** 2
    terms = {}
    K = mode_max // 2
    for p in range(p_lo, p_hi + 1):
        if _vanishes(fam, p):
            continue
        for k in range(K + 1):
            if fam.kind == "S_bessel":
                c = Fraction(factorial(p - 1), factorial(k) * factorial(p + k)) * q**k
            else:
                if p + k < 0:
                    continue
                c = Fraction((-1) ** k, factorial(k) * factorial(p + k) * factorial(-p)) * q**k
            terms[(2 * k, 2 * p)] = c
    known = _rows_with_zeros(fam, 2 * p_lo, 2 * p_hi).intersect(Region(m=(None, 2 * K)))
    support = _row_support(fam).intersect(Region(m=(0, None)))
    return LatticeFunction(terms, known=known, support=support)


# ---------------------------------------------------------------------------
# the exact dual metric
# ---------------------------------------------------------------------------

_SIN2 = CircleFunction({0: Fraction(1, 2), 2: Fraction(-1, 4), -2: Fraction(-1, 4)})


def dual_metric_exact(k_max: int) -> LatticeFunction:
    """R~ = (sin^2 x)^p / (p!)^2 on integer p in [0, k_max/2]; zero for p < 0.

    Odd lattice rows are left absent (see ``odd_row_orthogonality``).
    """
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    rows = {2 * p: _SIN2**p * Fraction(1, factorial(p) ** 2) for p in range(k_max // 2 + 1)}
    support = Region(k=(0, None), s=(0, None), d=(None, 0))
    return LatticeFunction.from_rows(rows, known=Region.rows(None, k_max), support=support)


def dual_metric_as_wfs(k_max: int, spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    """sum_k eps_k f_k truncated at the first WF whose support starts above k_max."""
    from .builders import wf

    spec = TruncationSpec(k_max=max(spec.k_max, k_max // 2), mode_max=max(spec.mode_max, k_max), coupling=spec.coupling)
    total = LatticeFunction.zero()
    for n in range(k_max // 2 + 1):
        total = total + wf(n, spec) * epsilon(n)
    # f_n for n > k_max/2 vanishes on rows p < n
    return total.restricted(Region.rows(None, 2 * (k_max // 2)))


def scaled_dual_action_expected(k_max: int) -> LatticeFunction:
    """p sin^{2(p-1)} x / (2 (p!)^2): the closed form of H * R~."""
    rows = {}
    for p in range(1, k_max // 2 + 1):
        rows[2 * p] = _SIN2 ** (p - 1) * Fraction(p, 2 * factorial(p) ** 2)
    return LatticeFunction.from_rows(rows, known=Region.rows(None, k_max))


def scaled_dual_action(k_max: int) -> LatticeFunction:
    """H * R~ computed with the engine (rows above the window are dropped)."""
    r = dual_metric_exact(k_max + 2)
    return star_symbol_left(hamiltonian(), r).restricted(Region.rows(None, k_max))


def reflect_momentum(f: LatticeFunction) -> LatticeFunction:
    """p -> -p: row k moves to -k."""
    terms = {(m, -k): c for (m, k), c in f.terms.items()}
    if f.known.is_full():
        return LatticeFunction(terms)

    def flip(r: Region) -> Region:
        if r.empty:
            return r
        neg = lambda b: (None if b[1] is None else -b[1], None if b[0] is None else -b[0])
        # (m, k) -> (m, -k) swaps s and d
        return Region(neg(r.k), r.m, r.d, r.s)

    return LatticeFunction(terms, known=flip(f.known), support=flip(f.support))


def odd_row_orthogonality(f: LatticeFunction) -> bool:
    """Odd lattice rows of an f~ carry no m = 0 term against |sin x|^{2p}.

    The semi-integer rows of R~ are not stored; what the checks need is that
    the product with an odd-row term never reaches m = 0.  For an f~_{k,n}
    with k + n odd, every stored term sits on an odd row with odd m, and
    |sin x|^{2p} only has even harmonics, so the trace vanishes.
    """
    return all(m % 2 == 1 for (m, k) in f.terms if k % 2)


# ---------------------------------------------------------------------------
# entwining residuals
# ---------------------------------------------------------------------------


def _coupling_of(coupling) -> object:
    return 1 if coupling is None else coupling


def entwine_residual_dual(f: LatticeFunction, coupling=None) -> LatticeFunction:
    """H * f - f * Hbar."""
    c = _coupling_of(coupling)
    return star_symbol_left(hamiltonian(c), f) - star_symbol_right(f, hamiltonian_bar(c))


def entwine_residual_metric(f: LatticeFunction, coupling=None) -> LatticeFunction:
    """Hbar * f - f * H."""
    c = _coupling_of(coupling)
    return star_symbol_left(hamiltonian_bar(c), f) - star_symbol_right(f, hamiltonian(c))


def star_root_residual_dual(f: LatticeFunction, coupling=None) -> LatticeFunction:
    """H * S~ - S~ * p^2."""
    c = _coupling_of(coupling)
    return star_symbol_left(hamiltonian(c), f) - star_symbol_right(f, momentum_squared())


def star_root_residual(f: LatticeFunction, coupling=None) -> LatticeFunction:
    """p^2 * S - S * H."""
    c = _coupling_of(coupling)
    return star_symbol_left(momentum_squared(), f) - star_symbol_right(f, hamiltonian(c))


def family_residual(fam: SeparableFamily, k_range: tuple[int, int], mode_max: int = 40) -> LatticeFunction:
    """The residual of whichever equation the family is meant to solve."""
    f = family_lattice(fam, k_range, mode_max)
    coupling = fam.s if fam.kind in ("S_bessel", "S_other_bessel") else None
    return {
        "dual": entwine_residual_dual,
        "metric": entwine_residual_metric,
        "dual_root": star_root_residual_dual,
        "root": star_root_residual,
    }[fam.equation](f, coupling)


def star_root_check_dual(fam: SeparableFamily, k_range: tuple[int, int], mode_max: int = 40) -> LatticeFunction:
    if fam.equation != "dual_root":
        raise ValueError(f"{fam.kind} is not a dual root family")
    return family_residual(fam, k_range, mode_max)


def star_root_check(fam: SeparableFamily, k_range: tuple[int, int], mode_max: int = 40) -> LatticeFunction:
    if fam.equation != "root":
        raise ValueError(f"{fam.kind} is not a root family")
    return family_residual(fam, k_range, mode_max)


def trusted_zero(f: LatticeFunction, tol: Optional[float] = None) -> bool:
    """True when every trusted coefficient vanishes (exactly, or to ``tol``)
    and the trusted region is not empty."""
    if f.known.empty:
        return False
    if tol is None:
        return all(c.is_zero() if isinstance(c, ExactScalar) else c.to_complex() == 0 for c in f.terms.values())
    return f.max_abs_within() <= tol


def h_dual_r_structure_residual(s: float, p_max: int = 6, grid: int = 64, mode_max: int = 40) -> float:
    """max |H * R~(s) - P(x, p) R~(s)| on an x grid for 0 <= p <= p_max, where

    P = p^2 - s^2/8 + (p - 1/2) s cos 2x + (s^2/8) cos 4x.
    """
    fam = SeparableFamily("dualR_basic", float(s))
    r = family_lattice(fam, (-2, 2 * p_max + 2), mode_max)
    hr = star_symbol_left(hamiltonian(), r)
    worst = 0.0
    for p in range(0, p_max + 1):
        row = hr.row(2 * p)
        scale = float(_p_profile(fam, p))
        for j in range(grid):
            x = 2 * math.pi * j / grid
            poly = p * p - s * s / 8 + (p - 0.5) * s * math.cos(2 * x) + s * s / 8 * math.cos(4 * x)
            expected = poly * scale * math.exp(-s / 2 * math.cos(2 * x))
            worst = max(worst, abs(row.evaluate(x) - expected))
    return worst


# ---------------------------------------------------------------------------
# dual roots S~ and the absolute star square
# ---------------------------------------------------------------------------


def dual_root_nc(k_max: int, mode_max: int = 40) -> LatticeFunction:
    """S~_NC = (-1/2)^p / p! exp(e^{2ix}/2), the s = -2 basic dual root."""
    return family_lattice(SeparableFamily("dualS_basic", Fraction(-2)), (0, k_max), mode_max)


def dual_root_r(k_max: int) -> LatticeFunction:
    """S~_R row p = (-1)^p/(4^p p!) sum_{n<=p} sqrt(eps_n)(-1)^n 2^n/(p-n)! e^{2i(p-n)x}.

    Each row is a finite sum, so the object is exact on every stored row.
    """
    terms = {}
    for p in range(k_max // 2 + 1):
        pref = Fraction((-1) ** p, 4**p * factorial(p))
        for n in range(p + 1):
            terms[(2 * (p - n), 2 * p)] = sqrt_epsilon(n) * (pref * Fraction((-1) ** n * 2**n, factorial(p - n)))
    support = Region(k=(0, None), m=(0, None), d=(None, 0))
    return LatticeFunction(terms, known=Region.rows(None, 2 * (k_max // 2)), support=support)


def dual_root_r_via_gamma(k_max: int) -> LatticeFunction:
    """S~_R through the truncated exponential p! sum_{k<=p} z^k/k! at z = -e^{2ix}/2."""
    z = CircleFunction({2: Fraction(-1, 2)})
    rows = {}
    for p in range(k_max // 2 + 1):
        lead = CircleFunction({2 * p: (1 - SQRT2) * Fraction((-1) ** p, 4**p * factorial(p) ** 2)})
        rows[2 * p] = lead + incomplete_gamma_poly(p, z) * (SQRT2 * Fraction(1, 2**p * factorial(p) ** 2))
    support = Region(k=(0, None), m=(0, None), d=(None, 0))
    return LatticeFunction.from_rows(rows, known=Region.rows(None, 2 * (k_max // 2)), support=support)


def dual_root_l(k_max: int, mode_max: int = 40) -> LatticeFunction:
    """S~_L = (-1)^p/(4^p p!^2) e^{2ipx} + sqrt2 (-1)^p/(2^p p!) sum_{k>p} w^k/k!, w = e^{2ix}/2."""
    A = mode_max // 2
    terms = {}
    for p in range(k_max // 2 + 1):
        terms[(2 * p, 2 * p)] = ExactScalar(Fraction((-1) ** p, 4**p * factorial(p) ** 2))
        pref = SQRT2 * Fraction((-1) ** p, 2**p * factorial(p))
        for k in range(p + 1, A + 1):
            terms[(2 * k, 2 * p)] = pref * Fraction(1, 2**k * factorial(k))
    known = Region.rows(None, 2 * (k_max // 2)).intersect(Region(m=(None, 2 * A)))
    support = Region(k=(0, None), m=(0, None), d=(0, None))
    return LatticeFunction(terms, known=known, support=support)


def absolute_star_square(f: LatticeFunction, side: Literal["dual", "metric"] = "dual") -> LatticeFunction:
    """S~ * conj(S~) on the dual side, conj(S) * S on the metric side."""
    if side == "dual":
        return star(f, conjugate(f))
    return star(conjugate(f), f)


def hybrid_sum_root(chirality: Chirality, n_max: int, spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    """sum_{n<=n_max} sqrt(eps_n) h_n.

    The missing h_n with n > n_max live at |d| > 2 n_max, so the partial sum is
    trusted on |d| <= 2 n_max intersected with the Bessel truncation.
    """
    total = LatticeFunction.zero()
    for n in range(n_max + 1):
        total = total + hybrid_h(n, chirality, spec) * sqrt_epsilon(n)
    true_support = {
        "R": Region(k=(0, None), m=(0, None), d=(None, 0)),
        "L": Region(k=(0, None), m=(0, None), d=(0, None)),
        "NC": Region(k=(0, None), m=(0, None)),
    }[chirality]
    known = total.known.intersect(Region(d=(-2 * n_max, 2 * n_max)))
    return LatticeFunction(total.terms, known=known, support=true_support)


# ---------------------------------------------------------------------------
# composition and controls
# ---------------------------------------------------------------------------

Tag = Literal["R", "dualR", "S", "dualS", "conjS", "conjdualS"]

# (left symbol, right symbol) with left * K = K * right
_SIDES: dict[str, tuple[str, str]] = {
    "R": ("Hbar", "H"),
    "dualR": ("H", "Hbar"),
    "S": ("p2", "H"),
    "dualS": ("H", "p2"),
    "conjS": ("Hbar", "p2"),
    "conjdualS": ("p2", "Hbar"),
}


def _symbol(name: str) -> Symbol:
    return {"H": hamiltonian(), "Hbar": hamiltonian_bar(), "p2": momentum_squared()}[name]


def lemma_compose(parts: Sequence[tuple[Tag, LatticeFunction]]) -> tuple[LatticeFunction, LatticeFunction]:
    """Star-compose a chain of entwining kernels and return (product, residual).

    Adjacent kernels must share the Hamiltonian between them, as in
    Hbar * R1 * R~2 * R3 = R1 * R~2 * R3 * H.  The residual is
    left * K - K * right for the outer pair.
    """
    if not parts:
        raise ValueError("empty chain")
    for (a, _), (b, _) in zip(parts, parts[1:]):
        if _SIDES[a][1] != _SIDES[b][0]:
            raise ValueError(f"cannot chain {a} into {b}")
    product = parts[0][1]
    for _, f in parts[1:]:
        product = star(product, f)
    left, right = _SIDES[parts[0][0]][0], _SIDES[parts[-1][0]][1]
    residual = star_symbol_left(_symbol(left), product) - star_symbol_right(product, _symbol(right))
    return product, residual


def q_control(k_top: int = 6) -> LatticeFunction:
    """Q = sum_{k<=k_top} eps_k f~_k, which does not entwine."""
    total = LatticeFunction.zero()
    for k in range(k_top + 1):
        total = total + dual_wf_closed(k) * epsilon(k)
    return total


def perturbed_dual_root(s: Fraction = Fraction(1), k_max: int = 8, mode_max: int = 20) -> LatticeFunction:
    """S~(s) with one coefficient nudged by 1/7."""
    f = family_lattice(SeparableFamily("dualS_basic", s), (0, k_max), mode_max)
    bump = LatticeFunction({(2, 4): Fraction(1, 7)}, known=f.known, support=f.support)
    return f + bump


def continued_dual_metric(x: float, p: float) -> complex:
    """(sin^2 x)^p / Gamma(1+p)^2 at real, possibly non-integer, p (informational)."""
    s2 = math.sin(x) ** 2
    if s2 == 0:
        return 0j if p > 0 else complex(1 / math.gamma(1 + p) ** 2) if p == 0 else complex(math.inf)
    return cmath.exp(p * math.log(s2)) / math.gamma(1 + p) ** 2
