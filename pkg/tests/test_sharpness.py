import math

import numpy as np
import pytest

from qminwiener.errors import DomainError, SaturationError
from qminwiener.exponents import solve_alpha_bar
from qminwiener.sharpness import (
    IteratedVerdict,
    constant_loop_residual,
    default_eps_grid,
    gamma_of,
    iterated_radii,
    iterated_sharpness_check,
    rho_eps,
    sharpness_fit,
    sharpness_run,
    u_eps_inf,
)

MATRIX = [(4 / 3, 2.0, 3), (2.0, 2.0, 3), (16 / 7, 2.0, 3), (4 / 3, 2.0, 4), (2.0, 2.0, 4), (16 / 7, 2.0, 4), (2.0, 2.5, 4)]


def test_gamma_examples():
    assert gamma_of(4 / 3, 2.0, 3) == pytest.approx(2.0)
    assert gamma_of(1 + 1e-12, 2.5, 4) == pytest.approx((4 - 2.5) / 1.5, rel=1e-5)
    with pytest.raises(DomainError):
        gamma_of(4 / 3, 3.0, 3)
    with pytest.raises(DomainError):
        gamma_of(1.0, 2.0, 3)


@pytest.mark.parametrize("Q, p, n", MATRIX)
def test_constant_loop(Q, p, n):
    assert constant_loop_residual(Q, p, n) < 1e-10


def test_u_eps_inf_examples():
    assert u_eps_inf(0.01, 2.0, 1.0) == 0.0
    assert u_eps_inf(0.01, 2.0, 2 / 3) == pytest.approx(0.0125)
    r = rho_eps(0.01, 2.0)
    assert u_eps_inf(0.01, 2.0, r) == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(SaturationError):
        u_eps_inf(0.01, 2.0, r / 2)


def test_rho_eps_decreases_to_zero():
    r = rho_eps(np.logspace(-2, -12, 11), 2.0)
    assert np.all((r > 0) & (r < 1))
    assert np.all(np.diff(r) < 0)
    assert r[-1] < 1e-5


def test_default_grid():
    g = default_eps_grid(2.0)
    assert g[0] == pytest.approx(1e-8) and g[-1] == pytest.approx(1e-2)
    assert math.log10(default_eps_grid(0.5).max() / default_eps_grid(0.5).min()) >= 4


def test_canonical_run_bounded_ratio():
    run = sharpness_run(4 / 3, 2.0, 3, eps_grid=np.logspace(-8, -2, 40))
    ratio = run.cap_ratio()
    assert np.all(np.diff(run.eps_grid) < 0)
    assert ratio.max() / ratio.min() < 2
    assert np.all(run.inf_2B == pytest.approx(run.eps_grid * ((1.5) ** 2 - 1)))


@pytest.mark.parametrize("Q, p, n", MATRIX)
def test_slope_matrix(Q, p, n):
    run = sharpness_run(Q, p, n)
    target = solve_alpha_bar(Q, p) / (p - 1)
    assert sharpness_fit(run) == pytest.approx(target, rel=0.02)


def test_fit_needs_decades():
    run = sharpness_run(4 / 3, 2.0, 3, eps_grid=np.logspace(-4, -2, 20))
    with pytest.raises(DomainError):
        sharpness_fit(run)


def test_summary_fields():
    s = sharpness_run(4 / 3, 2.0, 3).summary()
    assert s["target_slope"] == pytest.approx(2.0)
    assert s["rel_err"] < 0.02


def test_iterated_radii():
    assert iterated_radii(1) == pytest.approx([1 / 3, 1 / 9, 1 / 27])


@pytest.mark.parametrize("Q, p, n", MATRIX)
def test_iterated_flip(Q, p, n):
    run = sharpness_run(Q, p, n)
    thr = (n - p) / run.gamma
    assert iterated_sharpness_check(run, thr).verdict is IteratedVerdict.BOUNDARY
    assert iterated_sharpness_check(run, 2 * thr).verdict is IteratedVerdict.FALSIFIED
    assert iterated_sharpness_check(run, 0.5 * thr).verdict is IteratedVerdict.CONSISTENT
    assert iterated_sharpness_check(run, thr * (1 + 1e-6)).verdict is IteratedVerdict.FALSIFIED
    assert iterated_sharpness_check(run, thr * (1 - 1e-6)).verdict is IteratedVerdict.CONSISTENT


def test_iterated_exponents():
    run = sharpness_run(4 / 3, 2.0, 3)
    thr = (3 - 2.0) / run.gamma
    check = iterated_sharpness_check(run, 2 * thr, k=2)
    assert check.ratio_exponent == pytest.approx(0.5, abs=1e-9)
    assert check.expected_exponent == pytest.approx(0.5)
    # the capacity-sum version carries only small boundary corrections
    assert check.sum_ratio_exponent == pytest.approx(0.5, abs=1e-2)


def test_iterated_saturation_edge():
    run = sharpness_run(4 / 3, 2.0, 3)
    k = 1
    r = iterated_radii(k)
    eps = r[k + 1] ** run.gamma
    check = iterated_sharpness_check(run, 0.5, k=k, eps_grid=[eps, eps / 10])
    assert check.lhs[0] == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(DomainError):
        iterated_sharpness_check(run, 0.5, k=k, eps_grid=[eps * 2])
