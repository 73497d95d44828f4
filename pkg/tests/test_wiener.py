import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qminwiener._numerics import compensated_cumsum
from qminwiener.capacity import profile_ball, profile_power_decay
from qminwiener.errors import DomainError
from qminwiener.wiener import (
    Verdict,
    admissible_delta,
    admissible_s_interval,
    classify_regularity,
    classify_series,
    potential_lower_bound,
    wiener_partial_sums,
)


def test_basel_partial_sums():
    K = 5000
    prof = profile_power_decay(2.0, 1.0, K + 1)
    S = wiener_partial_sums(prof, 1.0)
    assert S.size == K + 1
    assert 0 < math.pi**2 / 6 - S[-1] < 1 / (K + 1)


def test_compensated_sum_matches_fsum():
    rng = np.random.default_rng(3)
    x = rng.standard_normal(20_000) * 10.0 ** rng.integers(-8, 8, 20_000)
    assert compensated_cumsum(x)[-1] == math.fsum(x.tolist())


def test_partial_sums_deterministic():
    prof = profile_power_decay(0.7, 0.9, 3000)
    a = wiener_partial_sums(prof, 1.3)
    b = wiener_partial_sums(prof, 1.3)
    assert a.tobytes() == b.tobytes()


def test_partial_sums_K_range():
    prof = profile_power_decay(1.0, 1.0, 10)
    assert wiener_partial_sums(prof, 1.0, 3).size == 4
    with pytest.raises(DomainError):
        wiener_partial_sums(prof, 1.0, 10)


@pytest.mark.parametrize("e", [0.1, 1.0, 5.0])
def test_constant_profile_divergent(e):
    assert classify_series(profile_ball(3, 2.0, count=1000), e).verdict is Verdict.DIVERGENT


@pytest.mark.parametrize("e", [0.5, 1.0, 2.0])
def test_p_series_oracle(e):
    conv = classify_series(profile_power_decay(2 / e, 1.0, 10_000), e)
    div = classify_series(profile_power_decay(0.5 / e, 1.0, 10_000), e)
    assert conv.verdict is Verdict.CONVERGENT
    assert div.verdict is Verdict.DIVERGENT
    assert conv.tail_slope == pytest.approx(2.0, rel=1e-9)


def test_threshold_is_inconclusive_or_divergent():
    report = classify_series(profile_power_decay(1.0, 1.0, 10_000), 1.0)
    assert report.verdict in (Verdict.INCONCLUSIVE, Verdict.DIVERGENT)


def test_convergent_note_disclaims_irregularity():
    report = classify_series(profile_power_decay(3.0, 1.0, 100), 1.0)
    assert any("no conclusion about irregularity" in n for n in report.notes)


@settings(max_examples=30, deadline=None)
@given(a=st.floats(0.05, 3.0), e1=st.floats(0.2, 3.0), e2=st.floats(0.2, 3.0))
def test_monotone_and_ordering(a, e1, e2):
    lo, hi = sorted((e1, e2))
    prof = profile_power_decay(a, 0.8, 2000)
    S_lo = wiener_partial_sums(prof, lo)
    S_hi = wiener_partial_sums(prof, hi)
    assert np.all(np.diff(S_lo) >= 0)
    assert np.all(S_hi <= S_lo * (1 + 1e-15))
    if classify_series(prof, hi).verdict is Verdict.DIVERGENT:
        assert classify_series(prof, lo).verdict is Verdict.DIVERGENT


def test_classify_regularity_exponent():
    prof = profile_power_decay(1.0, 1.0, 1000)
    report = classify_regularity(prof, 4 / 3, 2.0, 0.0)
    assert report.exponent_e == pytest.approx(2.0)
    assert report.verdict is Verdict.CONVERGENT
    assert any("eps=0" in n for n in report.notes)
    report = classify_regularity(prof, 1 + 1e-12, 3.0, 1e-9)
    assert report.exponent_e == pytest.approx(0.5, abs=1e-5)


def test_report_to_dict_keys():
    d = classify_series(profile_power_decay(1.0, 1.0, 50), 2.0).to_dict()
    assert list(d) == ["exponent", "terms", "partial_sums", "tail_slope", "verdict", "notes"]


def test_potential_bound_examples():
    prof = profile_ball(3, 2.0, count=30)
    assert potential_lower_bound(prof, 1.0, k=-1).final == 0.0
    kappa = float(prof.kappa[0])
    assert potential_lower_bound(prof, 1.0, 1.0, 0).final == pytest.approx(1 - math.exp(-kappa))
    small = profile_power_decay(0.0, 0.01, 30)
    levels = potential_lower_bound(small, 1.0, 1.0).levels
    assert np.all(np.diff(levels) > 0)


def test_potential_bound_limit_follows_divergence():
    div = profile_power_decay(0.5, 1.0, 200_000)
    conv = profile_power_decay(3.0, 1.0, 200_000)
    assert potential_lower_bound(div, 1.0).final > 1 - 1e-12
    assert potential_lower_bound(conv, 1.0).final < 1 - 0.1


@settings(max_examples=50, deadline=None)
@given(
    kappa=st.lists(st.floats(0.0, 2.0), min_size=2, max_size=50),
    delta=st.floats(0.05, 3.0),
    c=st.floats(0.01, 3.0),
)
def test_recursion(kappa, delta, c):
    kappa = np.array(kappa)
    m = potential_lower_bound(kappa, delta, c).levels
    rhs = (1 - m[:-1]) * np.exp(-c * kappa[1:] ** (1 / delta))
    assert np.max(np.abs((1 - m[1:]) - rhs)) < 1e-12


def test_admissible_delta():
    assert admissible_delta(4 / 3, 2.0, 2.5) == pytest.approx(1 / 3)
    lo, hi = admissible_s_interval(4 / 3, 2.0)
    assert lo == 2.0 and hi == pytest.approx(3.0)
    near = admissible_delta(4 / 3, 2.0, hi - 1e-9)
    assert near == pytest.approx(0.5, rel=1e-6)
    with pytest.raises(DomainError):
        admissible_delta(4 / 3, 2.0, 3.5)
