from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from liouville_star import operator as O
from liouville_star.numerics import FloatScalar
from liouville_star.phasespace import LatticeFunction


def _kernel_quadrature(s: float, N: int, nodes: int = 64) -> np.ndarray:
    # <m|F|n> = 1/2 mean_{x,y} K(x, y) e^{-imx} e^{iny}
    x = np.linspace(0, 2 * np.pi, nodes, endpoint=False)
    X, Y = np.meshgrid(x, x, indexing="ij")
    K = np.exp(np.exp(1j * (Y - X)) / (2 * s) - s / 2 * np.exp(-1j * (X + Y)) - s / 2 * np.exp(1j * (X + Y)))
    coeffs = np.fft.fft2(K) / nodes**2  # coeffs[i, j] = mean K e^{-i(ix + jy)}
    out = np.zeros((2 * N + 1, 2 * N + 1), dtype=complex)
    for m in range(-N, N + 1):
        for n in range(-N, N + 1):
            out[m + N, n + N] = 0.5 * coeffs[m % nodes, (-n) % nodes]
    return out


def test_hamiltonian_examples():
    h = O.hamiltonian_matrix(4)
    assert h.entry(3, 3) == 9
    assert h.entry(2, 0) == 1 and h.entry(0, 2) == 0
    assert h.adjoint().entry(0, 2) == 1
    with pytest.raises(ValueError):
        O.hamiltonian_matrix(1)


def test_parity():
    p = O.parity_matrix(6)
    assert np.array_equal((p @ p).entries, np.eye(13))
    assert O.parity_commutator(8) > 0.5


@pytest.mark.parametrize("s", [0.5, 1.0, -1.5, 2.0])
def test_f_matches_kernel_quadrature(s):
    f = O.f_metric_matrix(s, 6)
    assert np.abs(f.entries - _kernel_quadrature(s, 6)).max() < 1e-12


def test_f_examples():
    s = 1.0
    f = O.f_metric_matrix(s, 12)
    assert f.hermiticity_defect() <= 1e-12
    for m in range(-12, 13):
        for n in range(-12, 13):
            if (m + n) % 2:
                assert f.entry(m, n) == 0
    # <0|F|0> = 1/2 sum_b (s/2)^{2b}/(b!)^2 = I_0(s)/2, leading term 1/2
    assert f.entry(0, 0).real == pytest.approx(special.iv(0, s) / 2, rel=1e-15)
    assert O.f_metric_matrix(1e-3, 4).entry(0, 0).real == pytest.approx(0.5, rel=1e-6)
    with pytest.raises(ValueError):
        O.f_metric_matrix(0.0, 4)


@settings(max_examples=20, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6), st.floats(0.2, 3.0))
def test_f_entry_closed_form(m, n, s):
    # 1/2 (1/2s)^a / a! I_{(m-n)/2}(-s), a = -(m+n)/2
    got = O.f_metric_matrix(s, 6).entry(m, n).real
    if (m + n) % 2 or m + n > 0:
        assert got == 0
        return
    a = -(m + n) // 2
    expected = 0.5 * (1 / (2 * s)) ** a / special.factorial(a) * special.iv((m - n) // 2, -s)
    assert got == pytest.approx(expected, rel=1e-12, abs=1e-300)


def test_three_constructions_agree():
    dyadic = O.f_metric_matrix(1.0, 10)
    assert np.abs(dyadic.entries - O.f_metric_matrix_sigma(1.0, 10).entries).max() <= 1e-10
    assert np.abs(dyadic.entries - O.f_metric_matrix_dpd(1.0, 10).entries).max() <= 1e-9


@pytest.mark.parametrize("N", [8, 10, 14])
def test_residuals_are_small(N):
    assert O.intertwine_residual(1.0, N) <= 1e-9
    assert max(O.pf_commutator_residual(1.0, N)) <= 1e-9


def test_residual_requires_room():
    with pytest.raises(ValueError):
        O.intertwine_residual(1.0, 5)


def test_perturbed_f_does_not_intertwine():
    rng = np.random.default_rng(3)
    N = 10
    a = rng.normal(size=(2 * N + 1,) * 2) + 1j * rng.normal(size=(2 * N + 1,) * 2)
    f = O.f_metric_matrix(1.0, N) + O.OperatorMatrix(N, (a + a.conj().T) / 2)
    h = O.hamiltonian_matrix(N)
    assert (f @ h - h.adjoint() @ f).interior_max() > 0.1


def test_signature_counts_all_modes():
    pos, neg, zero = O.signature(O.f_metric_matrix(1.0, 8))
    assert pos + neg + zero == 17
    assert O.signature(O.OperatorMatrix(2, np.eye(5, dtype=complex))) == (5, 0, 0)


def test_weyl_correspondents():
    N = 4
    ident = O.weyl_correspondent(O.OperatorMatrix(N, np.eye(2 * N + 1, dtype=complex)))
    assert ident == LatticeFunction({(0, 2 * n): FloatScalar(1.0) for n in range(-N, N + 1)})
    wh = O.weyl_correspondent(O.hamiltonian_matrix(N))
    # H sampled on the lattice: p^2 on row k = 2p and e^{2ix} on every row
    for (m, k), c in wh.terms.items():
        expected = (k / 2) ** 2 if m == 0 else 1.0
        assert c.to_complex() == pytest.approx(expected)
    assert {m for m, _ in wh.terms} == {0, 2}


@pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
def test_weyl_of_pf_is_proportional(s):
    const, spread = O.weyl_proportionality(s, 10)
    assert spread <= 1e-6
    assert const == pytest.approx(0.5, rel=1e-12)
