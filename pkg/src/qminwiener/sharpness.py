"""Sharpness experiment with truncated negative powers.

For ``1 < p < n`` and ``Q > 1`` put ``gamma = alpha_bar (n-p)/(p-1)``; then
``|x|**(-gamma)`` has best quasiminimizer constant exactly ``Q`` and

    u_eps(x) = min(eps * (|x|**(-gamma) - 1), 1)

is a Q-quasiminimizing potential of ``E_eps = closed B(0, rho_eps)`` in
``B(0, 1)`` with ``rho_eps = (eps/(1+eps))**(1/gamma)``. As ``eps -> 0`` the
infimum of ``u_eps`` on ``2B = B(0, 2/3)`` scales like ``eps`` while the
normalized capacity of ``E_eps`` in ``3B = B(0, 1)`` scales like
``eps**((n-p)/gamma)``. The log-log slope between them is
``gamma/(n-p) = alpha_bar/(p-1)``, so no lower bound of the form
``c * capacity**(1/delta)`` can have ``1/delta`` below that value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ._numerics import line_fit
from .capacity import Condenser, radial_capacity
from .errors import DomainError, SaturationError
from .exponents import best_constant_power, solve_alpha_bar

DEFAULT_POINTS = 40
DEFAULT_BALL_RADIUS = 1 / 3
MIN_DECADES = 4.0
# |fitted exponent| below this counts as the borderline delta = (n-p)/gamma
BOUNDARY_TOL = 1e-9


def _check_setting(Q: float, p: float, n: int) -> None:
    if int(n) != n or n < 2:
        raise DomainError(f"dimension n must be an integer >= 2, got {n!r}")
    if not 1 < p < n:
        raise DomainError(f"the sharpness example needs 1 < p < n, got p={p!r}, n={n!r}")
    if not Q > 1:
        raise DomainError(f"Q must satisfy Q > 1, got Q={Q!r}")


def gamma_of(Q: float, p: float, n: int) -> float:
    """``alpha_bar(Q, p) * (n - p)/(p - 1)``, the decay rate whose power has constant Q."""
    _check_setting(Q, p, n)
    gamma = solve_alpha_bar(Q, p) * (n - p) / (p - 1)
    if not gamma > n / p - 1:
        raise DomainError(f"gamma={gamma!r} is not above n/p - 1 = {n / p - 1!r}")
    return gamma


def rho_eps(eps, gamma: float):
    """Radius where ``eps * (|x|**(-gamma) - 1)`` reaches 1."""
    eps = np.asarray(eps, dtype=float)
    out = np.exp(np.log(eps / (1 + eps)) / gamma)
    return float(out) if out.ndim == 0 else out


def u_eps_inf(eps: float, gamma: float, radius: float) -> float:
    """Infimum of ``u_eps`` over ``B(0, radius)``, i.e. its value on the sphere of that radius."""
    if not eps > 0 or not gamma > 0:
        raise DomainError(f"need eps > 0 and gamma > 0, got eps={eps!r}, gamma={gamma!r}")
    if not 0 < radius <= 1:
        raise DomainError(f"radius must lie in (0, 1], got {radius!r}")
    r_sat = rho_eps(eps, gamma)
    if radius < r_sat * (1 - 1e-15):
        raise SaturationError(f"radius {radius!r} is inside the saturation ball rho_eps={r_sat!r}")
    return min(eps * (radius ** (-gamma) - 1), 1.0)


def default_eps_grid(gamma: float, points: int = DEFAULT_POINTS) -> np.ndarray:
    """Log grid ``[10**(-4 gamma), 10**(-gamma)]``, so ``rho_eps`` runs over about ``[1e-4, 0.1]``.

    For ``gamma = 2`` this is ``[1e-8, 1e-2]``. For ``gamma < 4/3`` the lower end
    moves down so that the grid still spans four decades.
    """
    hi = -gamma
    lo = min(-4 * gamma, hi - MIN_DECADES)
    return np.logspace(lo, hi, points)


@dataclass(frozen=True)
class SharpnessRun:
    Q: float
    p: float
    n: int
    gamma: float
    alpha_bar: float
    ball_radius: float
    eps_grid: np.ndarray = field(repr=False)
    rho: np.ndarray = field(repr=False)
    inf_2B: np.ndarray = field(repr=False)
    cap_term: np.ndarray = field(repr=False)

    @property
    def outer_radius(self) -> float:
        return 3 * self.ball_radius

    @property
    def target_slope(self) -> float:
        return self.alpha_bar / (self.p - 1)

    @property
    def usable(self) -> np.ndarray:
        """Points where the capacity comparison is valid (outer radius at least ``2 rho_eps``)."""
        return self.rho <= self.outer_radius / 2

    def cap_ratio(self) -> np.ndarray:
        """``cap_term / rho_eps**(n-p)``, bounded above and below uniformly in eps."""
        return self.cap_term / self.rho ** (self.n - self.p)

    def rows(self) -> list[dict]:
        return [
            {"eps": e, "rho_eps": r, "inf_u": i, "cap_term": c}
            for e, r, i, c in zip(self.eps_grid.tolist(), self.rho.tolist(), self.inf_2B.tolist(), self.cap_term.tolist())
        ]

    def summary(self) -> dict:
        slope = sharpness_fit(self)
        target = self.target_slope
        return {
            "Q": self.Q,
            "p": self.p,
            "n": self.n,
            "gamma": self.gamma,
            "alpha_bar": self.alpha_bar,
            "fitted_slope": slope,
            "target_slope": target,
            "rel_err": abs(slope - target) / target,
            "eps_min": float(self.eps_grid.min()),
            "eps_max": float(self.eps_grid.max()),
            "points": int(self.eps_grid.size),
            "cap_ratio_min": float(self.cap_ratio().min()),
            "cap_ratio_max": float(self.cap_ratio().max()),
        }


def sharpness_run(
    Q: float,
    p: float,
    n: int,
    eps_grid=None,
    ball_radius: float = DEFAULT_BALL_RADIUS,
) -> SharpnessRun:
    """Tabulate ``inf_{2B} u_eps`` and the normalized capacity of ``E_eps`` in ``3B``.

    ``B = B(0, ball_radius)``; ``3B`` must fit in the unit ball where ``u_eps`` lives.
    """
    _check_setting(Q, p, n)
    if not 0 < ball_radius <= 1 / 3:
        raise DomainError(f"ball_radius must lie in (0, 1/3], got {ball_radius!r}")
    alpha_bar = solve_alpha_bar(Q, p)
    gamma = gamma_of(Q, p, n)
    eps = default_eps_grid(gamma) if eps_grid is None else np.asarray(eps_grid, dtype=float)
    if eps.ndim != 1 or np.any(eps <= 0):
        raise DomainError("eps_grid must be a one-dimensional array of positive values")
    eps = np.sort(eps)[::-1]
    rho = rho_eps(eps, gamma)
    outer = 3 * ball_radius
    if np.any(rho >= outer):
        raise DomainError(f"eps too large: rho_eps reaches the outer radius {outer!r}")
    inf_2b = np.array([u_eps_inf(e, gamma, 2 * ball_radius) for e in eps.tolist()])
    cap = np.array([radial_capacity(Condenser(n, p, r, outer)) for r in rho.tolist()])
    cap_term = cap / ball_radius ** (n - p)
    return SharpnessRun(Q, p, n, gamma, alpha_bar, ball_radius, eps, rho, inf_2b, cap_term)


def sharpness_fit(run: SharpnessRun) -> float:
    """Least-squares slope of ``log inf_2B`` against ``log cap_term`` on the usable points."""
    mask = run.usable & (run.inf_2B > 0) & (run.inf_2B < 1)
    if mask.sum() < 4:
        raise DomainError(f"degenerate fit: only {int(mask.sum())} usable points")
    eps = run.eps_grid[mask]
    decades = math.log10(eps.max() / eps.min())
    if decades < MIN_DECADES - 1e-9:
        raise DomainError(f"eps grid spans {decades:.2f} decades, need at least {MIN_DECADES}")
    slope, _, _ = line_fit(np.log(run.cap_term[mask]), np.log(run.inf_2B[mask]))
    return slope


def constant_loop_residual(Q: float, p: float, n: int) -> float:
    """``|best_constant_power(gamma_of(Q, p, n)) - Q|``; zero up to rounding."""
    return abs(best_constant_power(gamma_of(Q, p, n), p, n, mode="negative") - Q)


class IteratedVerdict(str, Enum):
    CONSISTENT = "CONSISTENT"  # the lower bound survives eps -> 0
    FALSIFIED = "FALSIFIED"  # lhs/rhs -> 0: the iterated estimate would fail
    BOUNDARY = "BOUNDARY"  # delta = (n-p)/gamma: neither confirmed nor ruled out


@dataclass(frozen=True)
class IteratedCheck:
    delta: float
    delta_threshold: float
    k: int
    c: float
    eps_grid: np.ndarray = field(repr=False)
    lhs: np.ndarray = field(repr=False)
    rhs: np.ndarray = field(repr=False)
    rhs_sum: np.ndarray = field(repr=False)
    ratio_exponent: float
    expected_exponent: float
    sum_ratio_exponent: float
    verdict: IteratedVerdict

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "delta_threshold": self.delta_threshold,
            "k": self.k,
            "c": self.c,
            "ratio_exponent": self.ratio_exponent,
            "expected_exponent": self.expected_exponent,
            "sum_ratio_exponent": self.sum_ratio_exponent,
            "verdict": self.verdict.value,
        }


def iterated_radii(k: int) -> np.ndarray:
    """``r_j = 3**(-(j+1))`` for ``j = 0..k+1``."""
    return 3.0 ** (-(np.arange(k + 2) + 1.0))


def iterated_sharpness_check(
    run: SharpnessRun,
    delta: float,
    c: float = 1.0,
    k: int = 1,
    eps_grid=None,
    boundary_tol: float = BOUNDARY_TOL,
) -> IteratedCheck:
    """Compare both sides of the iterated potential estimate for ``u_eps`` as ``eps -> 0``.

    ``lhs = eps * r_{k+1}**(-gamma)`` and ``rhs = c (eps**(1/gamma)/r_k)**((n-p)/delta)``.
    ``lhs/rhs`` behaves like ``eps**(1 - (n-p)/(gamma delta))``; its fitted
    exponent decides the verdict. The same exponent is also fitted against
    the linearized sum ``c * sum_j (cap_j/r_j**(n-p))**(1/delta)`` built from
    exact capacities, for comparison.

    The default grid spans ``[1e-10, 1e-4] * r_{k+1}**gamma``, well inside the
    admissible range ``eps**(1/gamma) <= r_{k+1}``; near its upper edge the
    capacity sum still carries O(rho_eps/r_j) corrections.
    """
    if not delta > 0 or not c > 0:
        raise DomainError(f"need delta > 0 and c > 0, got delta={delta!r}, c={c!r}")
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k!r}")
    n, p, gamma = run.n, run.p, run.gamma
    r = iterated_radii(k)
    eps_max = r[k + 1] ** gamma
    if eps_grid is None:
        eps = np.logspace(math.log10(eps_max) - 10, math.log10(eps_max) - 4, DEFAULT_POINTS)
    else:
        eps = np.asarray(eps_grid, dtype=float)
        if np.any(eps ** (1 / gamma) > r[k + 1] * (1 + 1e-12)):
            raise DomainError(f"eps**(1/gamma) must not exceed r_(k+1) = {r[k + 1]!r}")
    power = (n - p) / delta
    log_lhs = np.log(eps) - gamma * math.log(r[k + 1])
    log_rhs = math.log(c) + power * (np.log(eps) / gamma - math.log(r[k]))
    expo, _, _ = line_fit(np.log(eps), log_lhs - log_rhs)

    rho = rho_eps(eps, gamma)
    sums = np.zeros_like(eps)
    for j in range(k + 1):
        cap = np.array([radial_capacity(Condenser(n, p, rh, r[j])) for rh in rho.tolist()])
        sums += (cap / r[j] ** (n - p)) ** (1 / delta)
    rhs_sum = c * sums
    sum_expo, _, _ = line_fit(np.log(eps), log_lhs - np.log(rhs_sum))

    if expo > boundary_tol:
        verdict = IteratedVerdict.FALSIFIED
    elif expo < -boundary_tol:
        verdict = IteratedVerdict.CONSISTENT
    else:
        verdict = IteratedVerdict.BOUNDARY
    return IteratedCheck(
        delta=delta,
        delta_threshold=(n - p) / gamma,
        k=k,
        c=c,
        eps_grid=eps,
        lhs=np.exp(log_lhs),
        rhs=np.exp(log_rhs),
        rhs_sum=rhs_sum,
        ratio_exponent=expo,
        expected_exponent=1 - power / gamma,
        sum_ratio_exponent=sum_expo,
        verdict=verdict,
    )
