"""Phase-space expectation values and how they depend on the metric.

Two routes are kept side by side.  The closed forms are the finite modified
Bessel sums obtained by integrating term by term, while the generic path
builds the metric on the lattice, multiplies pointwise and takes the trace,
which for finite Fourier series is just the m = 0 coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional

from .builders import TruncationSpec, dual_wf, epsilon, wf_pair
from .metrics import SeparableFamily, dual_metric_exact, family_lattice
from .numerics import Coefficient, ExactScalar, bessel_i, coerce, factorial
from .phasespace import (
    LatticeFunction,
    hamiltonian,
    hamiltonian_bar,
    phase_trace,
    pointwise_mul,
    star_symbol_left,
    star_symbol_right,
)


@dataclass(frozen=True)
class ExpectationReport:
    value: Coefficient | complex | float
    window_complete: bool
    metric_id: str
    observable_id: str
    tail_bound: Optional[float] = None

    @property
    def complex_value(self) -> complex:
        v = self.value
        return v.to_complex() if hasattr(v, "to_complex") else complex(v)


def _i(order: int, arg: float) -> float:
    return bessel_i(order, arg)


# ---------------------------------------------------------------------------
# exact dual metric
# ---------------------------------------------------------------------------


def _exact_metric_for(f: LatticeFunction) -> LatticeFunction:
    top = max((k for _, k in f.terms), default=0)
    return dual_metric_exact(max(top, 0) + 2)


def _trace_report(product: LatticeFunction, metric_id: str, observable_id: str) -> ExpectationReport:
    tr = phase_trace(product)
    return ExpectationReport(tr.value, tr.complete, metric_id, observable_id)


def norm_under_dual_metric(f: LatticeFunction, observable_id: str = "f~") -> ExpectationReport:
    """(1/2pi) int sum R~ f with the exact dual metric."""
    r = _exact_metric_for(f)
    return _trace_report(pointwise_mul(r, f), "R~", observable_id)


def h_expectation_under_dual_metric(
    f: LatticeFunction, observable_id: str = "f~"
) -> tuple[ExpectationReport, ExpectationReport]:
    """trace(R~ (f * H)) and trace(R~ (Hbar * f))."""
    r = _exact_metric_for(f)
    right = star_symbol_right(f, hamiltonian())
    left = star_symbol_left(hamiltonian_bar(), f)
    return (
        _trace_report(pointwise_mul(r, right), "R~", observable_id + "*H"),
        _trace_report(pointwise_mul(r, left), "R~", "Hbar*" + observable_id),
    )


def h_ratio_exact(n: int) -> Fraction:
    """<H> of f~_n under the exact dual metric, as an exact rational."""
    f = dual_wf(n, n)
    norm = norm_under_dual_metric(f).value
    h, _ = h_expectation_under_dual_metric(f)
    ratio = h.value / norm
    if not ratio.is_rational():
        raise ArithmeticError("expectation ratio left the rationals")
    return ratio.as_fraction()


def mixed_state_dual_wf(alpha: Any, beta: Any) -> LatticeFunction:
    """The dual WF of chi = alpha A_0 + beta A_2."""
    a, b = coerce(alpha), coerce(beta)
    return (
        dual_wf(0, 0) * (a * a.conjugate())
        + dual_wf(0, 2) * (a.conjugate() * b)
        + dual_wf(2, 0) * (a * b.conjugate())
        + dual_wf(2, 2) * (b * b.conjugate())
    )


def mixed_state_exact_norm(alpha: Any, beta: Any) -> ExpectationReport:
    return norm_under_dual_metric(mixed_state_dual_wf(alpha, beta), "alpha A0 + beta A2")


# ---------------------------------------------------------------------------
# closed forms under the basic dual metric R~(x, p; s)
# ---------------------------------------------------------------------------


def _lead(n: int, j: int) -> int:
    """n (n-j-1)!, the Neumann coefficient factor; equals 1 for A_0."""
    if n == 0:
        return 1 if j == 0 else 0
    return n * factorial(n - j - 1)


def _even_terms(k: int, n: int):
    """(p, j, l, weight) over the even k + n double sum, weight = 4^p lead lead / (j! l!)."""
    if (k + n) % 2:
        raise ValueError("closed forms are available only for even k + n")
    half = (k + n) // 2
    for p in range(0, half + 1):
        for j in range(0, k // 2 + 1):
            l = half - p - j
            if l < 0 or l > n // 2:
                continue
            w = Fraction(4**p * _lead(k, j) * _lead(n, l), factorial(j) * factorial(l))
            if w:
                yield p, j, w


def _check_s(s: float) -> None:
    if s == 0:
        raise ValueError("s must be nonzero")


def dual_norm_closed(k: int, n: int, s: float) -> float:
    """N~_{k,n}(s) from the finite Bessel double sum (even k + n)."""
    _check_s(s)
    total = 0.0
    for p, j, w in _even_terms(k, n):
        total += float(w) / (s**p * factorial(p)) * _i(k - p - 2 * j, -s / 2)
    return total


def dual_h_closed(k: int, n: int, s: float) -> float:
    """H~_{k,n}(s) = trace(R~(s) (f~_{k,n} * H)) from the Bessel double sum (even k + n)."""
    _check_s(s)
    total = 0.0
    a = -s / 2
    for p, j, w in _even_terms(k, n):
        q = k - p - 2 * j
        inner = (
            p * p * _i(q, a)
            + s / 2 * p * (_i(q + 1, a) + _i(q - 1, a))
            + s / 4 * q * (_i(q + 1, a) - _i(q - 1, a))
        )
        total += float(w) / (s**p * factorial(p)) * inner
    return total


# the worked examples, written out
DISPLAYED_NORMS: dict[tuple[int, int], Callable[[float], float]] = {
    (0, 0): lambda s: _i(0, s / 2),
    (1, 1): lambda s: 4 / s * _i(0, s / 2),
    (2, 2): lambda s: 8 * _i(2, s / 2) + 4 / s**2 * (8 - s**2) * _i(0, s / 2),
    (3, 3): lambda s: 72 / s * _i(2, s / 2) + 12 / s**3 * (32 - 3 * s**2) * _i(0, s / 2),
    (0, 2): lambda s: 2 * _i(2, s / 2),
    (2, 0): lambda s: 2 * _i(2, s / 2),
}

DISPLAYED_H: dict[tuple[int, int], Callable[[float], float]] = {
    (0, 0): lambda s: s**2 / 8 * _i(2, s / 2),
    (0, 2): lambda s: 8 * _i(2, s / 2),
    (2, 2): lambda s: 48 * _i(2, s / 2) + 16 / s**2 * (8 - s**2) * _i(0, s / 2),
}


def dual_norm_basic(n: int, k: int, s: float) -> ExpectationReport:
    """N~_{k,n}(s) under R~(x, p; s)."""
    return ExpectationReport(dual_norm_closed(k, n, s), True, f"R~(s={s})", f"f~_{k},{n}")


def dual_h_expectation_basic(k: int, n: int, s: float) -> ExpectationReport:
    return ExpectationReport(dual_h_closed(k, n, s), True, f"R~(s={s})", f"f~_{k},{n}*H")


def mixed_state_norms(alpha: complex, beta: complex, s: float) -> tuple[ExpectationReport, ExpectationReport]:
    """N~(s) and H~(s) for chi = alpha A_0 + beta A_2, assembled from the closed double sums.

    The |alpha|^2 part of H~ is H~_0(s), which vanishes identically; see
    ``mixed_state_h_displayed`` for the variant carrying (s^2/8) I_2(s/2) there.
    """
    _check_s(s)
    a2, b2 = abs(alpha) ** 2, abs(beta) ** 2
    cross = (alpha.conjugate() * beta + alpha * beta.conjugate()).real
    norm = a2 * dual_norm_closed(0, 0, s) + cross * dual_norm_closed(0, 2, s) + b2 * dual_norm_closed(2, 2, s)
    h = a2 * dual_h_closed(0, 0, s) + cross * dual_h_closed(0, 2, s) + b2 * dual_h_closed(2, 2, s)
    mid = f"R~(s={s})"
    return ExpectationReport(norm, True, mid, "mixed"), ExpectationReport(h, True, mid, "mixed*H")


def mixed_state_h_displayed(alpha: complex, beta: complex, s: float) -> float:
    """The written-out H~(s) for alpha A_0 + beta A_2, including the (s^2/8)|alpha|^2 I_2 term."""
    _check_s(s)
    a2, b2 = abs(alpha) ** 2, abs(beta) ** 2
    cross = (alpha.conjugate() * beta + alpha * beta.conjugate()).real
    i0, i2 = _i(0, s / 2), _i(2, s / 2)
    return 16 / s**2 * (8 - s**2) * b2 * i0 + (s**2 / 8 * a2 + 8 * cross + 48 * b2) * i2


def mixed_state_norm_displayed(alpha: complex, beta: complex, s: float) -> float:
    _check_s(s)
    a2, b2 = abs(alpha) ** 2, abs(beta) ** 2
    cross = (alpha.conjugate() * beta + alpha * beta.conjugate()).real
    i0, i2 = _i(0, s / 2), _i(2, s / 2)
    return (a2 + 4 / s**2 * (8 - s**2) * b2) * i0 + (2 * cross + 8 * b2) * i2


# ---------------------------------------------------------------------------
# generic path
# ---------------------------------------------------------------------------


def _basic_dual_metric(s: float, top_row: int) -> LatticeFunction:
    return family_lattice(SeparableFamily("dualR_basic", float(s)), (0, max(top_row, 0)), 40)


def dual_norm_generic(k: int, n: int, s: float) -> ExpectationReport:
    """trace(R~(s) f~_{k,n}) through family_lattice + pointwise_mul + phase_trace."""
    f = dual_wf(k, n)
    r = _basic_dual_metric(s, k + n)
    return _trace_report(pointwise_mul(r, f), f"R~(s={s})", f"f~_{k},{n}")


def dual_h_generic(k: int, n: int, s: float, ordering: str = "right") -> ExpectationReport:
    """trace(R~(s) (f~_{k,n} * H)), or with (H * R~(s)) f~_{k,n} for ordering="lone-star"."""
    f = dual_wf(k, n)
    if ordering == "right":
        r = _basic_dual_metric(s, k + n)
        g = star_symbol_right(f, hamiltonian())
        return _trace_report(pointwise_mul(r, g), f"R~(s={s})", f"f~_{k},{n}*H")
    r = _basic_dual_metric(s, k + n + 2)
    hr = star_symbol_left(hamiltonian(), r)
    return _trace_report(pointwise_mul(hr, f), f"H*R~(s={s})", f"f~_{k},{n}")


# ---------------------------------------------------------------------------
# basic metric R(x, p; s) against f_n
# ---------------------------------------------------------------------------


def _metric_norm_term(n: int, p: int, s: float) -> float:
    inner = 0.0
    for k in range(p - n + 1):
        inner += _i(n - p + 2 * k, s / 2) / (
            factorial(k) * factorial(n + k) * factorial(p - k) * factorial(p - k - n)
        )
    return (-1) ** (p - n) * s**p * factorial(p - 1) / 4**p * inner


def metric_norm_series(n: int, s: float, p_max: int = 60) -> ExpectationReport:
    """N_n(s) = sum_{p>=n} (-1)^{p-n} s^p Gamma(p)/4^p sum_k I_{n-p+2k}(s/2) / (k!(n+k)!(p-k)!(p-k-n)!).

    The sign (-1)^{p-n} is the one carried by f_n itself.

    Stops once three consecutive terms fall below 1e-16 of the partial sum;
    the reported tail bound is a geometric estimate from the last two terms.
    """
    if n < 1:
        raise ValueError("N_0(s) diverges: the p = 0 term carries Gamma(0)")
    _check_s(s)
    total = 0.0
    small = 0
    prev = last = None
    converged = False
    for p in range(n, p_max + 1):
        term = _metric_norm_term(n, p, s)
        total += term
        prev, last = last, term
        if abs(term) < 1e-16 * abs(total):
            small += 1
            if small >= 3:
                converged = True
                break
        else:
            small = 0
    tail = math.inf
    if prev not in (None, 0.0) and last is not None:
        r = abs(last / prev)
        if r < 1:
            tail = abs(last) * r / (1 - r)
    return ExpectationReport(total, converged, f"R(s={s})", f"f_{n}", tail)


def metric_norm_pair(k: int, n: int, s: float, spec: TruncationSpec = TruncationSpec(k_max=24, mode_max=48)) -> complex:
    """trace(R(s) f_{k,n}) for k, n >= 1, summed over the trusted rows of f_{k,n}.

    Semi-integer rows only carry odd harmonics, which never meet the even
    harmonics of exp((s/2) cos 2x), so they drop out.
    """
    if k < 1 or n < 1:
        raise ValueError("the basic metric is singular against f_0")
    f = wf_pair(k, n, spec)
    lo, hi = f.window
    total = 0j
    for (m, row), c in f.terms.items():
        if row % 2 or m % 2 or not ((lo is None or row >= lo) and (hi is None or row <= hi)):
            continue
        p = row // 2
        total += c.to_complex() * s**p * factorial(p - 1) * _i(m // 2, s / 2)
    return total


def metric_norm_generic(n: int, s: float, spec: TruncationSpec = TruncationSpec(k_max=24, mode_max=48)) -> float:
    """N_n(s) from the truncated lattice f_n and R(s) rows."""
    return metric_norm_pair(n, n, s, spec).real


def exact_dual_norms(n_max: int) -> dict[int, ExactScalar]:
    """trace(R~ f~_n) for n <= n_max; expected eps_n."""
    return {n: norm_under_dual_metric(dual_wf(n, n)).value for n in range(n_max + 1)}


def expected_dual_norm(n: int) -> int:
    return epsilon(n)
