"""Plane-wave matrices for the imaginary Liouville operators.

Basis |n> = e^{inx}, |n| <= N, with the normalized inner product
(1/2pi) int dx.  Matrices are dense complex numpy arrays indexed by
(row mode + N, column mode + N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import FloatScalar, bessel_i, factorial
from .phasespace import LatticeFunction

SERIES_CUTOFF = 1e-16


@dataclass(frozen=True)
class OperatorMatrix:
    N: int
    entries: np.ndarray

    @property
    def modes(self) -> range:
        return range(-self.N, self.N + 1)

    def entry(self, m: int, n: int) -> complex:
        return complex(self.entries[m + self.N, n + self.N])

    def adjoint(self) -> "OperatorMatrix":
        return OperatorMatrix(self.N, self.entries.conj().T)

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        _same(self, other)
        return OperatorMatrix(self.N, self.entries @ other.entries)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        _same(self, other)
        return OperatorMatrix(self.N, self.entries - other.entries)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        _same(self, other)
        return OperatorMatrix(self.N, self.entries + other.entries)

    def interior_max(self, shield: int = 2) -> float:
        block = self.entries[shield : self.entries.shape[0] - shield, shield : self.entries.shape[1] - shield]
        return float(np.abs(block).max()) if block.size else 0.0

    def hermiticity_defect(self) -> float:
        return float(np.abs(self.entries - self.entries.conj().T).max())


def _same(a: OperatorMatrix, b: OperatorMatrix) -> None:
    if a.N != b.N:
        raise ValueError("matrix sizes differ")


def _check_n(N: int, minimum: int) -> None:
    if N < minimum:
        raise ValueError(f"N must be at least {minimum}")


def _check_s(s: float) -> None:
    if s == 0:
        raise ValueError("s must be nonzero")


def hamiltonian_matrix(N: int) -> OperatorMatrix:
    """<m|H|n> = n^2 delta_{m,n} + delta_{m,n+2}."""
    _check_n(N, 2)
    size = 2 * N + 1
    h = np.zeros((size, size), dtype=complex)
    for n in range(-N, N + 1):
        h[n + N, n + N] = n * n
        if n + 2 <= N:
            h[n + 2 + N, n + N] = 1.0
    return OperatorMatrix(N, h)


def parity_matrix(N: int) -> OperatorMatrix:
    """<m|P|n> = delta_{m,-n}."""
    size = 2 * N + 1
    return OperatorMatrix(N, np.fliplr(np.eye(size, dtype=complex)))


def _f_entry(m: int, n: int, s: float) -> float:
    """1/2 sum_{a,b,c} (1/2s)^a (-s/2)^b (-s/2)^c / (a! b! c!) with m = c-a-b, n = b-a-c."""
    if (m + n) % 2 or m + n > 0:
        return 0.0
    a = -(m + n) // 2
    shift = (m - n) // 2  # c - b
    lead = (1 / (2 * s)) ** a / factorial(a)
    half = -s / 2
    total = 0.0
    b = max(0, -shift)
    while True:
        c = b + shift
        term = half ** (b + c) / (factorial(b) * factorial(c))
        total += term
        if abs(term) < SERIES_CUTOFF * max(abs(total), 1e-300) and b > abs(half):
            break
        b += 1
    return 0.5 * lead * total


def f_metric_matrix(s: float, N: int) -> OperatorMatrix:
    """F(s) from the expansion of its dyadic kernel."""
    _check_s(s)
    size = 2 * N + 1
    f = np.zeros((size, size), dtype=complex)
    for m in range(-N, N + 1):
        for n in range(-N, N + 1):
            f[m + N, n + N] = _f_entry(m, n, s)
    return OperatorMatrix(N, f)


def f_metric_matrix_sigma(s: float, N: int) -> OperatorMatrix:
    """F(s) = 1/2 P int dsigma/2pi e^{-s cos sigma} exp(e^{i(2x+sigma)}/(2s)) exp(i sigma p).

    Acting on |n>, the sigma integral of e^{i(a+n) sigma} e^{-s cos sigma}
    gives I_{a+n}(-s) = (-1)^{a+n} I_{a+n}(s).
    """
    _check_s(s)
    size = 2 * N + 1
    f = np.zeros((size, size), dtype=complex)
    for n in range(-N, N + 1):
        a = 0
        while True:
            target = -(n + 2 * a)
            if target < -N:
                break
            if target <= N:
                j = a + n
                f[target + N, n + N] = 0.5 * (1 / (2 * s)) ** a / factorial(a) * (-1) ** (j % 2) * bessel_i(j, s)
            a += 1
    return OperatorMatrix(N, f)


def _exp_shift(c: complex, step: int, size: int, offset: int) -> np.ndarray:
    """exp(c e^{i step x}) on modes offset..offset+size-1 (raising by step)."""
    out = np.eye(size, dtype=complex)
    shift = np.zeros((size, size), dtype=complex)
    for i in range(size):
        j = i + step
        if 0 <= j < size:
            shift[j, i] = 1.0
    term = np.eye(size, dtype=complex)
    for k in range(1, size + 1):
        term = term @ shift * (c / k)
        if not term.any():
            break
        out = out + term
    return out


def f_metric_matrix_dpd(s: float, N: int, nodes: int = 128, pad: int = 40) -> OperatorMatrix:
    """F(s) rebuilt as 1/2 int dsigma/2pi e^{-s cos sigma} D P D^dag on a padded basis.

    D = exp(-i sigma p / 2) exp(e^{-2ix}/(4s)), D^dag = exp(e^{2ix}/(4s)) exp(i sigma p / 2).
    """
    _check_s(s)
    M = N + pad
    size = 2 * M + 1
    modes = np.arange(-M, M + 1)
    e_plus = _exp_shift(1 / (4 * s), 2, size, -M)
    e_minus = _exp_shift(1 / (4 * s), -2, size, -M)
    par = np.fliplr(np.eye(size, dtype=complex))
    core = e_minus @ par @ e_plus
    acc = np.zeros((size, size), dtype=complex)
    for q in range(nodes):
        sigma = 2 * math.pi * q / nodes
        left = np.exp(-0.5j * sigma * modes)
        right = np.exp(0.5j * sigma * modes)
        acc += math.exp(-s * math.cos(sigma)) * (left[:, None] * core * right[None, :])
    acc *= 0.5 / nodes
    lo, hi = pad, pad + 2 * N + 1
    return OperatorMatrix(N, acc[lo:hi, lo:hi])


def intertwine_residual(s: float, N: int) -> float:
    """Interior max of F H - H^dag F."""
    _check_n(N, 6)
    f = f_metric_matrix(s, N)
    h = hamiltonian_matrix(N)
    return (f @ h - h.adjoint() @ f).interior_max()


def pf_commutator_residual(s: float, N: int) -> tuple[float, float]:
    """Interior max of [H, P F] and of [H^dag, F P]."""
    _check_n(N, 6)
    f = f_metric_matrix(s, N)
    h = hamiltonian_matrix(N)
    p = parity_matrix(N)
    pf = p @ f
    fp = f @ p
    hd = h.adjoint()
    return (h @ pf - pf @ h).interior_max(), (hd @ fp - fp @ hd).interior_max()


def parity_commutator(N: int) -> float:
    h = hamiltonian_matrix(N)
    p = parity_matrix(N)
    return (h @ p - p @ h).interior_max()


def signature(op: OperatorMatrix, tol: float = 1e-12) -> tuple[int, int, int]:
    """(positive, negative, near-zero) eigenvalue counts of a hermitian matrix."""
    ev = np.linalg.eigvalsh(0.5 * (op.entries + op.entries.conj().T))
    return int((ev > tol).sum()), int((ev < -tol).sum()), int((abs(ev) <= tol).sum())


def weyl_correspondent(op: OperatorMatrix) -> LatticeFunction:
    """|k><n| -> e^{i(k-n)x} delta_{2p,k+n}, extended linearly."""
    terms = {}
    N = op.N
    for k in range(-N, N + 1):
        for n in range(-N, N + 1):
            c = op.entries[k + N, n + N]
            if c != 0:
                terms[(k - n, k + n)] = FloatScalar(complex(c))
    return LatticeFunction(terms)


def weyl_proportionality(s: float, N: int, floor: float = 1e-250) -> tuple[float, float]:
    """Compare the Weyl correspondent of P F(s) with I_p(-s) exp(e^{2ix}/(2s)).

    Returns (mean ratio, relative spread) over integer rows p >= 0 and every
    stored harmonic.
    """
    pf = parity_matrix(N) @ f_metric_matrix(s, N)
    w = weyl_correspondent(pf)
    ratios = []
    for (m, k), c in w.terms.items():
        if k % 2 or k < 0:
            continue
        p = k // 2
        if m % 2 or m < 0:
            raise AssertionError("unexpected harmonic in the correspondent of P F")
        a = m // 2
        target = (-1) ** (p % 2) * bessel_i(p, s) * (1 / (2 * s)) ** a / factorial(a)
        if abs(target) > floor:
            ratios.append(c.to_complex() / target)
    arr = np.array(ratios)
    mean = complex(arr.mean())
    spread = float(np.abs(arr - mean).max() / abs(mean))
    return mean.real if abs(mean.imag) < 1e-15 * abs(mean) else abs(mean), spread
