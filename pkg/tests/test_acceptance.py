"""Acceptance criteria, one test each. Each run prints a single PASS/FAIL line."""

import pytest

from qminwiener.acceptance import CRITERIA, run_criterion
from qminwiener.exponents import wiener_exponent


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion_{c.number:02d}")
def test_criterion(criterion):
    result = run_criterion(criterion)
    print(result.line())
    assert result.passed, result.line()


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0, 10.0])
def test_classical_limit_rate(p):
    # the gap to 1/(p-1) closes like sqrt(2(Q-1)/(p(p-1)))/(p-1), not linearly in Q-1
    for dq in (1e-6, 1e-8, 1e-10):
        gap = wiener_exponent(1 + dq, p) - 1 / (p - 1)
        predicted = (2 * dq / (p * (p - 1))) ** 0.5 / (p - 1)
        assert gap == pytest.approx(predicted, rel=2e-3)
