from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from liouville_star import builders as B
from liouville_star.numerics import ExactScalar
from liouville_star.phasespace import CircleFunction, LatticeFunction, eval_point

spec = B.DEFAULT


def _lf(terms: dict) -> LatticeFunction:
    return LatticeFunction(terms)


def test_bessel_j_examples():
    assert B.bessel_j(0, terms=1) == CircleFunction({0: 1, 2: Fraction(-1, 4)})
    assert B.bessel_j(2, terms=0) == CircleFunction({2: Fraction(1, 8)})
    a, _ = B.rescaled_pair(0, 0)
    assert a == CircleFunction.constant(1)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 6), st.floats(0, 6.28))
def test_bessel_j_against_scipy(n, x):
    # J_n(e^{ix}) with complex argument
    z = np.exp(1j * x)
    assert abs(B.bessel_j(n).evaluate(x) - special.jv(n, z)) < 1e-12


def test_neumann_examples():
    assert B.neumann_a(0) == CircleFunction.constant(1)
    assert B.neumann_a(1) == CircleFunction({-1: 2})
    assert B.neumann_a(2) == CircleFunction({-2: 8, 0: 2})


@given(st.integers(0, 6), st.integers(0, 6))
def test_orthonormality(j, k):
    assert B.orthonormality_check(j, k) == ExactScalar(int(j == k))


@pytest.mark.parametrize("n", range(7))
def test_neumann_inhomogeneity(n):
    assert B.inhomogeneity(n) == B.inhomogeneity_expected(n)


def test_generating_function():
    assert B.generating_function_residual(8) == {}


def test_wf_examples():
    f0, f1 = B.wf(0), B.wf(1)
    assert f1.row(2) == CircleFunction.constant(Fraction(1, 4))
    assert f0.row(6) == CircleFunction({6: Fraction(-1, 2304), -6: Fraction(-1, 2304), 2: Fraction(-1, 256), -2: Fraction(-1, 256)})
    for n in range(5):
        f = B.wf(n)
        assert all(k >= 2 * n for _, k in f.terms)
    assert B.wf_by_recursion(2).row(4) == CircleFunction.constant(Fraction(1, 64))
    assert B.wf_by_recursion(1).row(6) == CircleFunction({4: Fraction(1, 768), -4: Fraction(1, 768), 0: Fraction(1, 256)})
    r0 = B.wf_by_recursion(0)
    assert r0.row(0) == CircleFunction.constant(1)
    assert r0.row(2) == CircleFunction({2: Fraction(-1, 4), -2: Fraction(-1, 4)})


@pytest.mark.parametrize("n", range(6))
def test_wf_routes_agree(n):
    a = B.wf(n)
    assert a.agrees_with(B.wf_by_recursion(n))
    assert a.agrees_with(B.wf_by_wigner(n))
    lo, hi = a.window
    assert hi is None or hi >= 2 * n


@pytest.mark.parametrize("k_max,mode_max", [(6, 12), (10, 24), (14, 30)])
def test_wf_window_grows_with_truncation(k_max, mode_max):
    s = B.TruncationSpec(k_max=k_max, mode_max=mode_max)
    a = B.wf(1, s)
    assert a.agrees_with(B.wf_by_recursion(1, s))
    assert a.window[1] is not None and a.window[1] >= 2 * k_max - 2


def test_dual_wf_examples():
    assert B.dual_wf(0, 0) == _lf({(0, 0): 1})
    assert B.dual_wf(2, 2) == _lf({(0, 0): 4, (2, 2): 16, (-2, 2): 16, (0, 4): 64})
    assert B.dual_wf(0, 2) == _lf({(0, 0): 2, (-2, 2): 8})
    assert B.dual_wf(0, 1) == _lf({(-1, 1): 2})
    for n in range(7):
        assert B.dual_wf(n, n) == B.dual_wf_closed(n)


def test_hybrid_examples():
    g0 = B.hybrid_g(0)
    for p in range(5):
        assert g0.coefficient(2 * p, 2 * p) == ExactScalar(Fraction((-1) ** p, 4**p * math.factorial(p) ** 2))
    assert B.hybrid_g(1).row(2) == CircleFunction.constant(1)
    # corrected prefactor n / 4^{p-n}
    assert B.hybrid_g(2).row(2) == CircleFunction({2: Fraction(1, 4)})
    assert B.hybrid_h(0, "R").agrees_with(g0)
    assert all(k >= 4 for _, k in B.hybrid_h(2, "R").terms)
    assert B.hybrid_h(1, "L").row(0) == CircleFunction({2: Fraction(1, 2)})


@pytest.mark.parametrize("n", range(5))
def test_hybrids_match_closed_forms(n):
    assert B.hybrid_g(n).agrees_with(B.hybrid_g_closed(n))
    for ch in ("R", "L", "NC"):
        assert B.hybrid_h(n, ch).agrees_with(B.hybrid_h_closed(n, ch))
    if n:  # the closed forms carry an overall factor n
        for ch in ("R", "L"):
            assert B.dual_hybrid_h(n, ch).agrees_with(B.dual_hybrid_h_closed(n, ch))


def test_dual_hybrid_examples():
    assert B.dual_hybrid_h(2, "R").row(2) == CircleFunction({2: 2})
    assert B.dual_hybrid_h_closed(1, "L").terms == {(-2, 0): ExactScalar(2)}
    for ch in ("R", "L"):
        assert B.dual_hybrid_h(0, ch) == _lf({(0, 0): 1})


def test_nondiagonal_hybrids():
    assert B.nondiag_h(0, -2).row(-2) != CircleFunction()
    assert B.nondiag_h(1, -1).row(0) == CircleFunction({2: Fraction(1, 2)})
    # the defining integral, not the n-prefixed closed form, fixes n = 0
    assert B.nondiag_h_dual(-2, 0) == _lf({(-2, -2): 1})
    for l in range(-3, 4):
        for n in range(5):
            assert B.nondiag_h(n, l).agrees_with(B.nondiag_h_closed(n, l))
            if n:
                assert B.nondiag_h_dual(l, n).agrees_with(B.nondiag_h_dual_closed(l, n))


def test_free_wf_examples():
    assert B.free_wf(0, 0, "NC") == _lf({(0, 0): 1})
    assert B.free_wf(2, 2, "NC") == _lf({(0, 4): Fraction(1, 2), (0, -4): Fraction(1, 2), (4, 0): Fraction(1, 2), (-4, 0): Fraction(1, 2)})
    assert B.free_wf(1, 0, "R") == _lf({(1, 1): 1})


def test_wigner_quadrature_of_f1():
    # f_1(x, p) = (1/2pi) int J_1(e^{i(x-y)}) conj J_1(e^{i(x+y)}) e^{2iyp} dy
    y = np.linspace(0, 2 * np.pi, 128, endpoint=False)
    f1 = B.wf(1)
    for x in (0.3, 1.1):
        for p in (1, 2, 3):
            vals = special.jv(1, np.exp(1j * (x - y))) * np.conj(special.jv(1, np.exp(1j * (x + y)))) * np.exp(2j * y * p)
            assert abs(eval_point(f1, x, 2 * p) - vals.mean()) < 1e-12


@pytest.mark.parametrize("m", [Fraction(0), Fraction(1, 10), Fraction(1, 2), Fraction(3, 2)])
def test_free_particle_limit(m):
    for j in range(5):
        for k in range(5):
            assert B.rescaled_orthonormality(j, k, m) == ExactScalar(int(j == k))
    for q in range(1, 4):
        assert B.kernel_positive_power(q, m).is_zero()


def test_m0_limit_basis():
    for n in range(5):
        a, j = B.rescaled_pair(n, 0)
        fa, fj = B.free_limit_pair(n)
        assert a == fa and (j - fj).is_zero()
    assert B.free_limit_pair(2)[0] == CircleFunction({-2: 8})


def test_kernel_limit_coefficients_are_i0():
    coeffs = B.kernel_limit_coefficients(6)
    assert coeffs == {n: Fraction(1, 4**n * math.factorial(n) ** 2) for n in range(7)}


def test_truncation_spec_validation():
    with pytest.raises(ValueError):
        B.TruncationSpec(k_max=-1)
    with pytest.raises(ValueError):
        B.TruncationSpec(k_max=10, mode_max=4)
