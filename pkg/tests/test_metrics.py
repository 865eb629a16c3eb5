from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liouville_star import metrics as M
from liouville_star.builders import dual_wf, hybrid_h, wf
from liouville_star.numerics import ExactScalar, factorial
from liouville_star.phasespace import CircleFunction, LatticeFunction, conjugate

Fam = M.SeparableFamily


def _window_zero(f: LatticeFunction, tol: float | None = None) -> bool:
    return M.trusted_zero(f, tol)


def test_dual_metric_exact_rows():
    r = M.dual_metric_exact(8)
    assert r.row(0) == CircleFunction.constant(1)
    assert r.row(2) == CircleFunction({0: Fraction(1, 2), 2: Fraction(-1, 4), -2: Fraction(-1, 4)})
    assert r.row(-2) == CircleFunction()
    for p in range(5):
        c = r.coefficient(0, 2 * p)
        assert c.is_rational() and c.as_fraction() > 0
    with pytest.raises(ValueError):
        M.dual_metric_exact(-1)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 6), st.floats(0, 6.28))
def test_dual_metric_matches_pointwise_formula(p, x):
    r = M.dual_metric_exact(12)
    assert r.row(2 * p).evaluate(x) == pytest.approx(math.sin(x) ** (2 * p) / factorial(p) ** 2, abs=1e-14)


def test_dual_metric_entwines_exactly():
    r = M.dual_metric_exact(16)
    assert _window_zero(M.entwine_residual_dual(r))
    assert r.is_real()
    assert r.agrees_with(M.dual_metric_as_wfs(16))


def test_scaled_dual_action():
    got = M.scaled_dual_action(10)
    assert got.row(0) == CircleFunction()
    assert got.row(2) == CircleFunction.constant(Fraction(1, 2))
    assert got.row(4) == CircleFunction({0: Fraction(1, 8), 2: Fraction(-1, 16), -2: Fraction(-1, 16)})
    assert got.agrees_with(M.scaled_dual_action_expected(10))


def test_reflection_gives_a_metric():
    r = M.reflect_momentum(M.dual_metric_exact(12))
    assert _window_zero(M.entwine_residual_metric(r))
    assert not M.entwine_residual_metric(wf(0)).is_zero()


@pytest.mark.parametrize("kind,rows", [("dualR_basic", (0, 12)), ("R_basic", (2, 12)), ("R_other", (-12, 0))])
@pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
def test_float_families_solve_their_equation(kind, rows, s):
    res = M.family_residual(Fam(kind, s), rows)
    assert _window_zero(res, 1e-10)


def test_r_basic_zero_mode_against_quadrature():
    # the m = 0 coefficient of s Gamma(1) exp((s/2) cos 2x) is s I_0(s/2)
    s = 1.5
    x = np.linspace(0, 2 * np.pi, 256, endpoint=False)
    oracle = float(np.mean(s * np.exp(s / 2 * np.cos(2 * x))))
    f = M.family_lattice(Fam("R_basic", s), (2, 2))
    assert f.coefficient(0, 2).to_complex().real == pytest.approx(oracle, rel=1e-13)


def test_gamma_poles_are_errors():
    with pytest.raises(ValueError):
        M.family_lattice(Fam("R_basic", 1.0), (0, 4))
    with pytest.raises(ValueError):
        M.family_lattice(Fam("dualR_other", 1.0), (0, 4))
    with pytest.raises(ValueError):
        Fam("dualR_basic", 0)
    with pytest.raises(ValueError):
        Fam("dualR_composite", Fraction(1))


def test_dual_root_basic_at_minus_two_is_nc():
    f = M.family_lattice(Fam("dualS_basic", Fraction(-2)), (0, 8), 20)
    for p in range(5):
        for a in range(6):
            expected = Fraction((-1) ** p, 2**p * factorial(p)) * Fraction(1, 2**a * factorial(a))
            assert f.coefficient(2 * a, 2 * p) == ExactScalar(expected)


@pytest.mark.parametrize("s", [Fraction(1), Fraction(-2), Fraction(3, 2)])
def test_dual_roots_entwine_exactly(s):
    res = M.star_root_check_dual(Fam("dualS_basic", s), (0, 10), 24)
    assert _window_zero(res)


@pytest.mark.parametrize("m", [Fraction(1), Fraction(1, 2)])
def test_bessel_roots(m):
    assert _window_zero(M.star_root_check(Fam("S_bessel", m), (2, 10), 24))


def test_root_family_mismatch_raises():
    with pytest.raises(ValueError):
        M.star_root_check(Fam("dualS_basic", Fraction(1)), (0, 4))
    with pytest.raises(ValueError):
        M.star_root_check_dual(Fam("S_bessel", Fraction(1)), (2, 4))


@pytest.mark.parametrize("s,t", [(Fraction(2), Fraction(1)), (Fraction(1), Fraction(3, 2)), (Fraction(-3), Fraction(2))])
def test_composite_family(s, t):
    f = M.family_lattice(Fam("dualR_composite", s, t), (0, 16))
    assert _window_zero(M.entwine_residual_dual(f))
    base = CircleFunction({0: t / s, 2: Fraction(-1, 4), -2: Fraction(-1, 4)})
    for p in range(9):
        assert f.row(2 * p) == base**p * Fraction(1, factorial(p) ** 2)


def test_composite_reduces_to_exact_metric():
    f = M.family_lattice(Fam("dualR_composite", Fraction(2), Fraction(1)), (0, 12))
    assert f.agrees_with(M.dual_metric_exact(12))


def test_absolute_star_squares():
    r = M.dual_metric_exact(10)
    for root in (M.dual_root_nc(10), M.dual_root_r(10), M.dual_root_l(10)):
        sq = M.absolute_star_square(root)
        assert not root.is_real()
        assert sq.is_real()
        assert sq.agrees_with(r)


def test_dual_root_r_routes_agree():
    assert M.dual_root_r(12) == M.dual_root_r_via_gamma(12)


def test_hybrid_sum_roots():
    assert M.hybrid_sum_root("NC", 6).agrees_with(M.dual_root_nc(12))
    assert M.hybrid_sum_root("R", 6).agrees_with(M.dual_root_r(12))
    assert M.hybrid_sum_root("R", 0).terms == hybrid_h(0, "R").terms


def test_lemma_compose():
    r = M.dual_metric_exact(12)
    _, res = M.lemma_compose([("dualR", r)])
    assert _window_zero(res)
    nc = M.dual_root_nc(10)
    prod, res = M.lemma_compose([("dualS", nc), ("conjdualS", conjugate(nc))])
    assert prod.agrees_with(M.absolute_star_square(nc))
    assert _window_zero(res)
    with pytest.raises(ValueError):
        M.lemma_compose([("dualR", r), ("dualR", r)])
    with pytest.raises(ValueError):
        M.lemma_compose([])


def test_lemma_compose_float_chain():
    ro = M.family_lattice(Fam("R_other", 1.0), (-12, 0))
    rr = M.reflect_momentum(M.dual_metric_exact(12))
    _, res = M.lemma_compose([("R", ro), ("dualR", M.dual_metric_exact(12)), ("R", ro)])
    assert _window_zero(res, 1e-9)
    assert _window_zero(M.entwine_residual_metric(rr))


def test_controls_do_not_entwine():
    q = M.q_control()
    res = M.entwine_residual_dual(q)
    assert any(q.known.contains(*k) for k in res.terms)
    res = M.star_root_residual_dual(M.perturbed_dual_root())
    assert any(res.known.contains(*k) for k in res.terms)


def test_odd_row_orthogonality():
    assert M.odd_row_orthogonality(dual_wf(0, 1))
    assert M.odd_row_orthogonality(dual_wf(1, 2))
    assert not M.odd_row_orthogonality(LatticeFunction({(2, 1): 1}))


def test_h_dual_structure():
    for s in (0.5, 1.0, 2.0):
        assert M.h_dual_r_structure_residual(s) <= 1e-10


def test_continued_metric_matches_integers():
    for p in range(4):
        assert M.continued_dual_metric(0.4, p) == pytest.approx(math.sin(0.4) ** (2 * p) / factorial(p) ** 2)
    assert M.continued_dual_metric(0.0, 0.5) == 0
