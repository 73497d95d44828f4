"""Brute-force recovery of the best quasiminimizer constant of ``x**alpha`` on (0, 1).

On an interval ``[a, b]`` the competitor with the same endpoint values and
least p-energy is the affine interpolant. The energy ratio of ``x**alpha``
against that interpolant, maximized over subintervals, should reproduce
``Q(alpha, p)``. This oracle takes as given that single-interval affine
replacements realize the best constant for a monotone function of one
variable; it only checks the resulting number. Both energies are closed
forms, so no quadrature error enters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError
from .exponents import q_of_alpha, solve_alpha_bar, solve_alpha_lower

MIN_INTERVAL = 1e-12


def _check(alpha: float, p: float) -> None:
    if not p > 1:
        raise DomainError(f"p must satisfy p > 1, got p={p!r}")
    if not alpha > 1 - 1 / p:
        raise DomainError(f"alpha must exceed 1 - 1/p = {1 - 1 / p!r}, got alpha={alpha!r}")


def power_energy(alpha: float, p: float, a, b):
    """``int_a^b |alpha t**(alpha-1)|**p dt``; finite at ``a = 0`` because ``(alpha-1)p + 1 > 0``."""
    m = (alpha - 1) * p + 1
    return alpha**p * (np.power(b, m) - np.power(a, m)) / m


def affine_energy(alpha: float, p: float, a, b):
    """p-energy of the affine function through ``(a, a**alpha)`` and ``(b, b**alpha)``."""
    return np.abs(np.power(b, alpha) - np.power(a, alpha)) ** p / np.power(b - a, p - 1)


def _ratio(alpha, p, a, b):
    return power_energy(alpha, p, a, b) / affine_energy(alpha, p, a, b)


@dataclass(frozen=True)
class PowerEnergyRatio:
    alpha: float
    p: float
    a: float
    b: float
    e_pow: float
    e_lin: float

    @property
    def ratio(self) -> float:
        return self.e_pow / self.e_lin

    @classmethod
    def evaluate(cls, alpha: float, p: float, a: float, b: float) -> "PowerEnergyRatio":
        _check(alpha, p)
        if not 0 <= a < b <= 1:
            raise DomainError(f"need 0 <= a < b <= 1, got a={a!r}, b={b!r}")
        if b - a < MIN_INTERVAL:
            raise DomainError(f"degenerate interval: b - a = {b - a!r}")
        return cls(alpha, p, a, b, float(power_energy(alpha, p, a, b)), float(affine_energy(alpha, p, a, b)))


def energy_ratio(alpha: float, p: float, a: float, b: float) -> float:
    """Energy of ``x**alpha`` on ``[a, b]`` over that of its affine interpolant (>= 1)."""
    if alpha == 1:
        _check(alpha, p)
        return 1.0
    return PowerEnergyRatio.evaluate(alpha, p, a, b).ratio


def best_constant_search(alpha: float, p: float, grid: int = 400) -> float:
    """Maximum energy ratio over subintervals of ``[0, 1]``.

    Scans all node pairs of a uniform grid (the ``a = 0`` row included
    exactly), then polishes the best pair with one bounded golden-section
    pass per coordinate.
    """
    _check(alpha, p)
    if grid < 50:
        raise DomainError(f"grid must be >= 50, got {grid!r}")
    if alpha == 1:
        return 1.0
    nodes = np.linspace(0.0, 1.0, grid + 1)
    ia, ib = np.triu_indices(grid + 1, k=1)
    ratios = _ratio(alpha, p, nodes[ia], nodes[ib])
    best = int(np.argmax(ratios))
    a, b = float(nodes[ia[best]]), float(nodes[ib[best]])
    value = float(ratios[best])

    h = 1.0 / grid
    mid = 0.5 * (a + b)
    a_lo, a_hi = max(0.0, a - h), min(a + h, mid)
    if a_hi - a_lo > MIN_INTERVAL:
        res = minimize_scalar(lambda x: -_ratio(alpha, p, x, b), bounds=(a_lo, a_hi), method="bounded")
        if -res.fun > value:
            value, a = float(-res.fun), float(res.x)
    b_lo, b_hi = max(b - h, 0.5 * (a + b)), min(1.0, b + h)
    if b_hi - b_lo > MIN_INTERVAL:
        res = minimize_scalar(lambda x: -_ratio(alpha, p, a, x), bounds=(b_lo, b_hi), method="bounded")
        if -res.fun > value:
            value = float(-res.fun)
    return value


def conjugate_alpha(alpha: float, p: float) -> float:
    """The other exponent sharing the constant ``Q(alpha, p)``."""
    Q = q_of_alpha(alpha, p)
    return solve_alpha_lower(Q, p) if alpha > 1 else solve_alpha_bar(Q, p)


def verify_power_table(alphas, p: float, grid: int = 400) -> list[dict]:
    """Rows ``alpha, p, Q_formula, Q_bruteforce, abs_err``."""
    rows = []
    for alpha in alphas:
        q_formula = q_of_alpha(alpha, p)
        q_brute = best_constant_search(alpha, p, grid)
        rows.append(
            {
                "alpha": float(alpha),
                "p": float(p),
                "Q_formula": q_formula,
                "Q_bruteforce": q_brute,
                "abs_err": abs(q_brute - q_formula),
            }
        )
    return rows
