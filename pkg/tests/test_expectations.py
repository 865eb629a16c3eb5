from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from liouville_star import expectations as E
from liouville_star.builders import dual_wf
from liouville_star.numerics import ExactScalar

S_GRID = (0.5, 1.0, 2.0, 4.0)


@pytest.mark.parametrize("key", sorted(E.DISPLAYED_NORMS))
@pytest.mark.parametrize("s", S_GRID)
def test_displayed_norms(key, s):
    k, n = key
    shown = E.DISPLAYED_NORMS[key](s)
    assert E.dual_norm_closed(k, n, s) == pytest.approx(shown, rel=1e-12, abs=1e-12)
    assert E.dual_norm_generic(k, n, s).complex_value == pytest.approx(shown, rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("key", sorted(k for k in E.DISPLAYED_H if k != (0, 0)))
@pytest.mark.parametrize("s", S_GRID)
def test_displayed_h(key, s):
    k, n = key
    shown = E.DISPLAYED_H[key](s)
    assert E.dual_h_closed(k, n, s) == pytest.approx(shown, rel=1e-12, abs=1e-12)
    assert E.dual_h_generic(k, n, s).complex_value == pytest.approx(shown, rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("s", S_GRID)
def test_ground_state_h_vanishes(s):
    # f~_0 * H lives on the p = -1 row, where R~(s) has 1/Gamma(0) = 0
    assert E.dual_h_closed(0, 0, s) == 0
    assert E.dual_h_generic(0, 0, s).complex_value == 0
    assert E.dual_h_generic(0, 0, s, "lone-star").complex_value == pytest.approx(0, abs=1e-12)
    assert E.DISPLAYED_H[(0, 0)](s) > 0


@pytest.mark.parametrize("k,n", [(1, 1), (2, 2), (1, 3), (3, 3), (2, 4)])
def test_h_orderings_agree(k, n):
    for s in (0.5, 2.0):
        a = E.dual_h_generic(k, n, s).complex_value
        b = E.dual_h_generic(k, n, s, "lone-star").complex_value
        assert a == pytest.approx(b, rel=1e-10, abs=1e-12)


def test_odd_pairs_are_rejected():
    with pytest.raises(ValueError):
        E.dual_norm_closed(0, 1, 1.0)
    with pytest.raises(ValueError):
        E.dual_norm_closed(0, 0, 0.0)


def test_exact_dual_norms_are_eps():
    norms = E.exact_dual_norms(6)
    assert norms == {n: ExactScalar(E.expected_dual_norm(n)) for n in range(7)}
    for k in range(5):
        for n in range(5):
            if k != n:
                assert E.norm_under_dual_metric(dual_wf(k, n)).value.is_zero()


@pytest.mark.parametrize("n", range(5))
def test_exact_h_ratio(n):
    assert E.h_ratio_exact(n) == n * n


def test_ground_state_h_under_exact_metric():
    right, left = E.h_expectation_under_dual_metric(dual_wf(0, 0))
    assert right.value.is_zero() and left.value.is_zero()


def test_metric_dependence():
    ratio = E.dual_h_closed(2, 2, 2.0) / E.dual_norm_closed(2, 2, 2.0)
    assert abs(ratio - 4) > 0.01
    for s in S_GRID:
        assert E.dual_norm_closed(0, 2, s) != 0


def test_mixed_states():
    assert E.mixed_state_exact_norm(1, 1).value == ExactScalar(3)
    assert E.mixed_state_exact_norm(2, 0).value == ExactScalar(4)
    for s in (0.5, 1.0, 3.0):
        alpha, beta = 0.6 + 0.2j, -0.3 + 0.5j
        norm, h = E.mixed_state_norms(alpha, beta, s)
        assert norm.value == pytest.approx(E.mixed_state_norm_displayed(alpha, beta, s), rel=1e-12)
        gap = E.mixed_state_h_displayed(alpha, beta, s) - h.value
        assert gap == pytest.approx(abs(alpha) ** 2 * s**2 / 8 * special.iv(2, s / 2), rel=1e-10)


@settings(max_examples=15, deadline=None)
@given(st.complex_numbers(max_magnitude=3), st.complex_numbers(max_magnitude=3), st.floats(0.25, 4))
def test_mixed_norm_is_quadratic_form(alpha, beta, s):
    norm, _ = E.mixed_state_norms(alpha, beta, s)
    a, b = E.mixed_state_norms(alpha, 0j, s)[0].value, E.mixed_state_norms(0j, beta, s)[0].value
    cross = 2 * (alpha.conjugate() * beta).real * E.dual_norm_closed(0, 2, s)
    assert norm.value == pytest.approx(a + b + cross, rel=1e-10, abs=1e-10)


def _metric_norm_quadrature(n: int, s: float, nodes: int = 64, p_max: int = 10) -> float:
    # roundoff in the y-mean is amplified by s^p Gamma(p), so keep s <= 1 and p <= 10
    # f_n(x, p) = mean_y J_n(e^{i(x-y)}) conj(J_n(e^{i(x+y)})) e^{2iyp}, then sum_p R(x, p; s) f_n
    x = np.linspace(0, 2 * np.pi, nodes, endpoint=False)
    y = np.linspace(0, 2 * np.pi, nodes, endpoint=False)
    X, Y = np.meshgrid(x, y, indexing="ij")
    psi = special.jv(n, np.exp(1j * (X - Y)))
    phi = np.conj(special.jv(n, np.exp(1j * (X + Y))))
    total = 0.0
    for p in range(n, p_max + 1):
        f = np.mean(psi * phi * np.exp(2j * Y * p), axis=1)
        r = s**p * math.gamma(p) * np.exp(s / 2 * np.cos(2 * x))
        total += float(np.mean(r * f).real)
    return total


def test_metric_norm_against_quadrature():
    assert E.metric_norm_series(1, 1.0).value == pytest.approx(0.2578943054, abs=1e-9)
    for n, s in ((1, 1.0), (2, 0.5), (1, 0.5)):
        assert E.metric_norm_series(n, s).value == pytest.approx(_metric_norm_quadrature(n, s), rel=1e-9)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_metric_norm_routes(n):
    for s in (0.5, 1.0, 2.0):
        rep = E.metric_norm_series(n, s)
        assert rep.window_complete and rep.value > 0
        assert E.metric_norm_generic(n, s) == pytest.approx(rep.value, rel=1e-9)


def test_metric_norm_rejects_ground_state():
    with pytest.raises(ValueError):
        E.metric_norm_series(0, 1.0)

