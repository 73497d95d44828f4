import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from qminwiener.capacity import (
    CapacityProfile,
    Condenser,
    full_ball_density,
    profile_ball,
    profile_power_decay,
    radial_capacity,
    radial_capacity_minimizer,
    radial_capacity_oracle,
    sphere_area,
)
from qminwiener.errors import DomainError


def test_sphere_area():
    assert sphere_area(2) == pytest.approx(2 * math.pi)
    assert sphere_area(3) == pytest.approx(4 * math.pi)


def test_capacity_examples():
    assert radial_capacity(Condenser(2, 2.0, 1 / math.e, 1.0)) == pytest.approx(2 * math.pi, rel=1e-14)
    assert radial_capacity(Condenser(3, 2.0, 1.0, 1e12)) == pytest.approx(4 * math.pi, rel=1e-10)
    c = Condenser(3, 2.0, 1.0, 2.0)
    assert radial_capacity(c) == pytest.approx(8 * math.pi, rel=1e-14)
    assert radial_capacity_oracle(c) == pytest.approx(8 * math.pi, rel=5e-3)


@pytest.mark.parametrize("n, p", [(2, 1.5), (3, 2.5), (4, 3.0), (3, 3.0), (2, 2.5)])
def test_capacity_matches_quadrature(n, p):
    # independent of the closed form: integrate t**((1-n)/(p-1)) numerically
    rho, r = 0.2, 1.0
    integral, _ = quad(lambda t: t ** ((1 - n) / (p - 1)), rho, r, epsabs=0, epsrel=1e-13)
    expected = sphere_area(n) * integral ** (1 - p)
    assert radial_capacity(Condenser(n, p, rho, r)) == pytest.approx(expected, rel=1e-10)


def test_condenser_validation():
    with pytest.raises(DomainError):
        Condenser(1, 2.0, 0.1, 1.0)
    with pytest.raises(DomainError):
        Condenser(3, 1.0, 0.1, 1.0)
    with pytest.raises(DomainError):
        Condenser(3, 2.0, 1.0, 1.0)


@pytest.mark.parametrize("t", [0.5, 2.0, 10.0])
@pytest.mark.parametrize("n, p", [(2, 1.5), (3, 2.0), (4, 2.5), (3, 3.0)])
def test_scaling(n, p, t):
    base = radial_capacity(Condenser(n, p, 0.3, 1.0))
    scaled = radial_capacity(Condenser(n, p, 0.3 * t, t))
    assert scaled == pytest.approx(t ** (n - p) * base, rel=1e-10)


@settings(max_examples=50, deadline=None)
@given(
    n=st.integers(2, 5),
    p=st.floats(1.1, 6.0),
    rho=st.floats(0.01, 0.8),
    grow=st.floats(1.01, 2.0),
)
def test_monotonicity(n, p, rho, grow):
    base = radial_capacity(Condenser(n, p, rho, 1.0))
    assert radial_capacity(Condenser(n, p, min(rho * grow, 0.99), 1.0)) > base
    # for p near 1 the outer radius enters at relative size (rho/r)**((n-p)/(p-1)), below rounding
    assert radial_capacity(Condenser(n, p, rho, grow)) <= base


def test_strict_monotonicity():
    base = radial_capacity(Condenser(3, 2.0, 0.2, 1.0))
    assert radial_capacity(Condenser(3, 2.0, 0.3, 1.0)) > base
    assert radial_capacity(Condenser(3, 2.0, 0.2, 1.5)) < base


def test_oracle_refinement_monotone():
    c = Condenser(3, 1.5, 0.1, 1.0)
    values = [radial_capacity_oracle(c, m) for m in (101, 201, 401, 801)]
    # nodes of each grid contain the previous one, so feasible sets are nested
    assert all(b <= a for a, b in zip(values, values[1:]))
    assert values[-1] >= radial_capacity(c)


def test_oracle_minimizer_harmonic_profile():
    c = Condenser(2, 2.0, 0.1, 1.0)
    t, u = radial_capacity_minimizer(c, 10_000)
    exact = np.log(c.r / t) / np.log(c.r / c.rho)
    assert np.max(np.abs(u - exact)) < 1e-3


def test_oracle_grid_validation():
    with pytest.raises(DomainError):
        radial_capacity_oracle(Condenser(3, 2.0, 0.1, 1.0), 50)


def test_profile_ball_constant():
    prof = profile_ball(3, 2.0, 0.5, count=20)
    assert np.all(prof.kappa == prof.kappa[0])
    assert np.all(prof.kappa > 0)
    # (n, p, lam) = (3, 2, 1/2): 4 pi (1/rho - 1/r)**-1 with rho = 1/2, r = 1
    assert prof.kappa[0] == pytest.approx(4 * math.pi, rel=1e-14)


def test_profile_ball_scale_invariance_direct():
    n, p, lam = 4, 2.5, 0.4
    density = full_ball_density(n, p, lam)
    for j in range(5):
        r = lam**j
        direct = radial_capacity(Condenser(n, p, lam * r, r)) / r ** (n - p)
        assert direct == pytest.approx(density, rel=1e-12)


def test_profile_power_decay_examples():
    assert np.all(profile_power_decay(0.0, 0.3, 10).kappa == 0.3)
    prof = profile_power_decay(1.0, 1.0, 10)
    assert prof.kappa[5] == pytest.approx(1 / 6)
    assert np.all(np.diff(prof.kappa) <= 0)
    with pytest.raises(DomainError):
        profile_power_decay(1.0, 100.0, 10, n=3, p=2.0)


def test_profile_immutable_and_csv_round_trip(tmp_path):
    prof = profile_power_decay(1.5, 0.7, 25, lam=0.25, r0=2.0)
    with pytest.raises(ValueError):
        prof.kappa[0] = 1.0
    path = tmp_path / "profile.csv"
    text = prof.to_csv(path)
    assert text.startswith("j,r_j,kappa_j\n") and "\r" not in text
    back = CapacityProfile.from_csv(path)
    assert np.array_equal(back.kappa, prof.kappa)
    assert back.ratio == pytest.approx(0.25) and back.r0 == 2.0


def test_profile_csv_errors(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("j,r_j\n0,1.0\n")
    with pytest.raises(DomainError):
        CapacityProfile.from_csv(bad)
    with pytest.raises(DomainError):
        CapacityProfile(1.0, 0.5, np.array([1.0, -1.0]))
