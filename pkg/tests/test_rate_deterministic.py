import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import C_DB, fd_first, fd_second
from zfbend import rate_deterministic as det

ETAS = [0.1, 1.0, 2.5, 10.0, 37.2]


def test_c_db():
    assert det.C_DB == C_DB


@pytest.mark.parametrize("rho, eta, n, expected", [
    (0.0, 1.0, 1, math.log(2.0)),
    (10.0, 1.0, 2, 2 * math.log(11.0)),
])
def test_sum_rate_values(rho, eta, n, expected):
    assert det.sum_rate(rho, eta, n) == pytest.approx(expected, rel=1e-15)


def test_sum_rate_low_snr():
    for eta in ETAS:
        assert 0 <= det.sum_rate(-200.0, eta, 3) < 1e-18


@pytest.mark.parametrize("eta", [0.0, -1.0, math.nan, math.inf])
def test_sum_rate_bad_eta(eta):
    with pytest.raises(ValueError, match="eta"):
        det.sum_rate(0.0, eta, 1)


def test_sum_rate_matches_naive_form():
    for rho in np.linspace(-30, 40, 71):
        for eta in ETAS:
            naive = 3 * math.log1p(10 ** (rho / 10) / eta)
            assert det.sum_rate(rho, eta, 3) == pytest.approx(naive, rel=1e-13, abs=1e-300)


def test_derivative_examples():
    for eta in ETAS:
        assert det.rate_derivative(det.intercept(eta), eta, 2, 3) == pytest.approx(0, abs=1e-12)
    assert det.rate_derivative(0.0, 1.0, 1, 2) == pytest.approx(C_DB ** 2 / 4, rel=1e-15)
    assert det.rate_derivative(0.0, 1.0, 1, 2) == pytest.approx(0.0132545, abs=5e-7)
    for n in (1, 4):
        assert det.rate_derivative(200.0, 1.0, n, 1) == pytest.approx(n * C_DB, abs=1e-12)


def test_derivative_bad_order():
    with pytest.raises(ValueError, match="order"):
        det.rate_derivative(0.0, 1.0, 1, 4)


def _rate_fn(eta, n, order):
    if order == 0:
        return lambda r: det.sum_rate(r, eta, n)
    return lambda r: det.rate_derivative(r, eta, n, order)


@pytest.mark.parametrize("order", [1, 2, 3])
@pytest.mark.parametrize("eta", ETAS)
def test_derivative_consistency_fd(order, eta):
    lower = _rate_fn(eta, 2, order - 1)
    rho_int = det.intercept(eta)
    for off in np.arange(-20.25, 20.5, 0.5):
        rho = rho_int + off
        exact = det.rate_derivative(rho, eta, 2, order)
        assert fd_first(lower, rho, 1e-3) == pytest.approx(exact, rel=1e-6)


def test_second_derivative_against_fd_of_rate():
    f = _rate_fn(2.5, 1, 0)
    for rho in np.arange(-10.0, 20.0, 0.7):
        assert fd_second(f, rho, 1e-2) == pytest.approx(det.rate_derivative(rho, 2.5, 1, 2), rel=1e-5)


def test_third_derivative_expanded_form():
    for eta in ETAS:
        for off in np.arange(-20.25, 20.5, 0.5):
            rho = det.intercept(eta) + off
            assert det.third_derivative_expanded(rho, eta, 3) == pytest.approx(
                det.rate_derivative(rho, eta, 3, 3), rel=1e-12)


@pytest.mark.parametrize("rho, eta, n, expected", [
    (0.0, 1.0, 1, 0.0),
    (10.0, 10.0, 3, 0.0),
    (20.0, 1.0, 1, math.log(100.0)),
])
def test_asymptote(rho, eta, n, expected):
    assert det.high_snr_asymptote(rho, eta, n) == pytest.approx(expected, rel=1e-15, abs=1e-14)


def test_intercept_values():
    assert det.intercept(1.0) == 0.0
    assert det.intercept(10.0) == 10.0
    assert det.intercept(2.5) == pytest.approx(10 * math.log(2.5) / math.log(10), rel=1e-15)
    assert det.intercept(2.5) == pytest.approx(3.9794, abs=5e-5)
    with pytest.raises(ValueError):
        det.intercept(0.0)


def test_bend_point_analytic():
    res = det.bend_point_analytic(1.0, 1)
    assert res.rho_bend == 0.0 and res.rho_int == 0.0
    assert res.rate_at_bend == math.log(2.0)
    r = det.bend_point_analytic(2.5, 4)
    assert r.r2_max == pytest.approx(C_DB ** 2, rel=1e-15)
    assert r.r2_max == pytest.approx(0.0530, abs=5e-5)
    assert r.rate_at_bend > 0 and r.r2_max > 0


def test_golden_section():
    assert det.golden_section_max(lambda x: -(x - 2) ** 2, 1, 5, tol=1e-9) == pytest.approx(2, abs=1e-8)
    with pytest.raises(ValueError, match="bracket"):
        det.golden_section_max(lambda x: x, 1.0, 1.0)


@pytest.mark.parametrize("eta", ETAS)
def test_bend_numeric_matches_intercept(eta):
    r2 = lambda r: det.rate_derivative(r, eta, 1, 2)
    assert det.bend_point_numeric(r2, det.default_bracket(eta)) == pytest.approx(det.intercept(eta), abs=1e-3)


def test_bend_numeric_on_fd_second_derivative():
    for eta in (1.0, 2.5):
        f = _rate_fn(eta, 1, 0)
        rho = det.bend_point_numeric(lambda r: fd_second(f, r, 1e-3), (-40.0, 40.0))
        assert rho == pytest.approx(det.intercept(eta), abs=1e-2)


@settings(max_examples=50, deadline=None)
@given(st.floats(1e-3, 1e3), st.integers(1, 16), st.floats(0, 30))
def test_second_derivative_symmetry_and_cosh_form(eta, n, delta):
    rb = det.intercept(eta)
    up = det.rate_derivative(rb + delta, eta, n, 2)
    down = det.rate_derivative(rb - delta, eta, n, 2)
    assert up == pytest.approx(down, rel=1e-12)
    cosh_form = n * C_DB ** 2 / (4 * math.cosh(C_DB * delta / 2) ** 2)
    assert up == pytest.approx(cosh_form, rel=1e-11)


@pytest.mark.parametrize("eta", ETAS)
def test_second_derivative_monotone_away_from_bend(eta):
    rb = det.intercept(eta)
    right = [det.rate_derivative(rb + d, eta, 1, 2) for d in np.linspace(0.1, 60, 300)]
    left = [det.rate_derivative(rb - d, eta, 1, 2) for d in np.linspace(0.1, 60, 300)]
    assert all(a > b for a, b in zip(right, right[1:]))
    assert all(a > b for a, b in zip(left, left[1:]))


@settings(max_examples=50, deadline=None)
@given(st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
def test_scale_shift(eta, alpha):
    shifted = det.bend_point_analytic(alpha * eta, 1).rho_bend
    assert shifted == pytest.approx(det.bend_point_analytic(eta, 1).rho_bend + 10 * math.log10(alpha),
                                    abs=1e-12)
