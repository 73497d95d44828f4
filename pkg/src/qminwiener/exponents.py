"""Scalar exponents attached to power-type quasiminimizers.

For ``p > 1`` the function ``Q(alpha, p) = alpha**p / (1 + p*(alpha - 1))`` is
the best quasiminimizer constant of ``x**alpha`` on ``(0, 1)``. Each ``Q >= 1``
has two preimages ``1 - 1/p < alpha <= 1 <= alpha_bar``; the larger one sets
the Wiener-type exponent ``alpha_bar/(p - 1) + eps``.

All solvers work in logarithmic variables so that ``Q`` up to ``1e3`` and
``p`` close to 1 stay free of overflow and cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from ._numerics import DEFAULT_MAXITER, DEFAULT_TOL, find_root
from .errors import DomainError

# Q - 1 below this is treated as Q == 1 (flat minimum of Q(., p) at alpha = 1).
DEGENERATE_Q = 1e-14


@dataclass(frozen=True)
class PEnvironment:
    p: float
    n: int = 1

    def __post_init__(self):
        _check_p(self.p)
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"dimension n must be an integer >= 1, got {self.n!r}")

    def require_capacity_range(self) -> None:
        """Raise unless ``1 < p <= n`` (needed wherever ``r**(n-p)`` normalizes)."""
        if self.p > self.n:
            raise DomainError(f"capacity normalization needs p <= n, got p={self.p!r}, n={self.n!r}")


@dataclass(frozen=True)
class ExponentPair:
    p: float
    Q: float
    alpha_lower: float
    alpha_bar: float


@dataclass(frozen=True)
class DualityRecord:
    """Exponents for ``(Q, p)`` and for the dual pair ``(Q**(1/(p-1)), p/(p-1))``."""

    p: float
    p_dual: float
    Q: float
    Q_dual: float
    alpha_lower: float
    alpha_bar: float
    beta_lower: float
    beta_bar: float

    def cross_residuals(self) -> dict[str, float]:
        """Absolute residuals of the four cross identities linking alpha and beta."""
        p, pd = self.p, self.p_dual
        return {
            "beta_lower": abs(self.beta_lower - beta_of_alpha(self.alpha_bar, p)),
            "beta_bar": abs(self.beta_bar - beta_of_alpha(self.alpha_lower, p)),
            "alpha_lower": abs(self.alpha_lower - beta_of_alpha(self.beta_bar, pd)),
            "alpha_bar": abs(self.alpha_bar - beta_of_alpha(self.beta_lower, pd)),
        }


@dataclass(frozen=True)
class DeltaExponent:
    p: float
    Q: float
    s: float
    delta: float
    p1: float


class PowerMode(str, Enum):
    """Which power family ``best_constant_power`` evaluates."""

    POSITIVE = "positive"  # |x|**alpha with p > n
    NEGATIVE = "negative"  # |x|**(-gamma) with 1 < p < n


def _check_p(p: float) -> None:
    if not p > 1:
        raise DomainError(f"p must satisfy p > 1, got p={p!r}")


def _check_q(Q: float) -> None:
    if not Q >= 1:
        raise DomainError(f"Q must satisfy Q >= 1, got Q={Q!r}")


def _check_alpha(alpha: float, p: float) -> None:
    if not alpha > 1 - 1 / p:
        raise DomainError(f"alpha must exceed 1 - 1/p = {1 - 1 / p!r}, got alpha={alpha!r}")


def q_of_alpha(alpha: float, p: float) -> float:
    """Best 1D quasiminimizer constant ``alpha**p / (1 + p*(alpha - 1))`` of ``x**alpha``."""
    _check_p(p)
    _check_alpha(alpha, p)
    return alpha**p / (1 + p * (alpha - 1))


def conjugate_dual_p(p: float) -> float:
    _check_p(p)
    return p / (p - 1)


def solve_alpha_bar(Q: float, p: float, tol: float = DEFAULT_TOL, maxiter: int = DEFAULT_MAXITER) -> float:
    """The root ``alpha_bar >= 1`` of ``Q(alpha, p) = Q``.

    Solved for ``u = log(alpha)`` on ``[0, log((pQ)**(1/(p-1))) + log 2]``,
    where ``log Q(e**u, p) = (p-1)u - log1p(-(p-1)*expm1(-u))`` is increasing.
    """
    _check_q(Q)
    _check_p(p)
    if Q - 1 < DEGENERATE_Q:
        return 1.0
    log_q = math.log(Q)
    pm1 = p - 1

    def g(u):
        return pm1 * u - math.log1p(-pm1 * math.expm1(-u)) - log_q

    def dg(u):
        e = math.exp(-u)
        return pm1 - pm1 * e / (1 - pm1 * math.expm1(-u))

    hi = math.log(p * Q) / pm1 + math.log(2.0)
    return math.exp(find_root(g, 0.0, hi, dg, tol=tol, maxiter=maxiter))


def solve_alpha_lower(Q: float, p: float, tol: float = DEFAULT_TOL, maxiter: int = DEFAULT_MAXITER) -> float:
    """The root ``alpha`` in ``(1 - 1/p, 1]`` of ``Q(alpha, p) = Q``.

    Parametrized by ``v = log(1 + p*(alpha - 1))``, which resolves the region
    next to ``alpha = 1 - 1/p`` where the denominator vanishes.
    """
    _check_q(Q)
    _check_p(p)
    if Q - 1 < DEGENERATE_Q:
        return 1.0
    log_q = math.log(Q)

    def h(v):
        return p * math.log1p(math.expm1(v) / p) - v - log_q

    def dh(v):
        return math.exp(v) / (1 + math.expm1(v) / p) - 1

    lo = p * math.log1p(-1 / p) - log_q - 1.0
    v = find_root(h, lo, 0.0, dh, tol=tol, maxiter=maxiter)
    return 1 + math.expm1(v) / p


def exponent_pair(Q: float, p: float, tol: float = DEFAULT_TOL) -> ExponentPair:
    return ExponentPair(p, Q, solve_alpha_lower(Q, p, tol), solve_alpha_bar(Q, p, tol))


def solve_p1(p: float, t: float, tol: float = DEFAULT_TOL, maxiter: int = DEFAULT_MAXITER) -> float:
    """Unique ``x > p`` with ``t**p * (x - p)/x * (x/(x - 1))**p = 1``.

    The logarithm of the left side increases from ``-inf`` (x -> p) to
    ``p*log(t) > 0`` (x -> inf); the root is found in ``w = log(x - p)``.
    """
    _check_p(p)
    if not t > 1:
        raise DomainError(f"t must satisfy t > 1, got t={t!r}")
    plog_t = p * math.log(t)

    def f(w):
        x = p + math.exp(w)
        return plog_t + w - math.log(x) - p * math.log1p(-1 / x)

    def df(w):
        x = p + math.exp(w)
        return p * (p - 1) / (x * (x - 1))

    # far-field: f ~ p log t - p(p-1)/(2x^2), so x ~ sqrt((p-1)/(2 log t))
    guess = math.log(math.sqrt((p - 1) / (2 * math.log(t))) + 1.0)
    lo, hi = guess - 1.0, guess + 1.0
    while f(lo) >= 0:
        lo -= 2.0
    while f(hi) <= 0:
        hi += 2.0
    return p + math.exp(find_root(f, lo, hi, df, tol=tol, maxiter=maxiter))


def beta_of_alpha(alpha: float, p: float) -> float:
    """Map ``alpha / (1 + p(alpha - 1))`` sending (Q, p) exponents to (Q**(1/(p-1)), p/(p-1)) ones."""
    _check_p(p)
    _check_alpha(alpha, p)
    return alpha / (1 + p * (alpha - 1))


def duality_record(Q: float, p: float, tol: float = DEFAULT_TOL) -> DualityRecord:
    _check_q(Q)
    _check_p(p)
    p_dual = p / (p - 1)
    Q_dual = Q ** (1 / (p - 1))
    return DualityRecord(
        p=p,
        p_dual=p_dual,
        Q=Q,
        Q_dual=Q_dual,
        alpha_lower=solve_alpha_lower(Q, p, tol),
        alpha_bar=solve_alpha_bar(Q, p, tol),
        beta_lower=solve_alpha_lower(Q_dual, p_dual, tol),
        beta_bar=solve_alpha_bar(Q_dual, p_dual, tol),
    )


def wiener_exponent(Q: float, p: float, eps: float = 0.0, tol: float = DEFAULT_TOL) -> float:
    """Exponent ``alpha_bar/(p - 1) + eps`` of the Wiener-type sum."""
    if not eps >= 0:
        raise DomainError(f"eps must be >= 0, got eps={eps!r}")
    return solve_alpha_bar(Q, p, tol) / (p - 1) + eps


def alpha_bar_bounds(Q: float, p: float) -> tuple[float, float]:
    """``(Q**(1/(p-1)), (p*Q)**(1/(p-1)))``; ``alpha_bar`` lies in the half-open interval."""
    _check_q(Q)
    _check_p(p)
    return Q ** (1 / (p - 1)), (p * Q) ** (1 / (p - 1))


def explicit_wiener_exponent(Q: float, p: float) -> float:
    """Cruder explicit exponent ``(pQ)**(1/(p-1))/(p-1)``; wrong asymptotics as Q -> 1."""
    return alpha_bar_bounds(Q, p)[1] / (p - 1)


def delta_range(Q: float, p: float, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Open interval ``(0, (p*beta - 1)/beta)`` of admissible ``delta``.

    ``beta`` is the lower dual exponent; ``(p*beta - 1)/beta`` equals
    ``(p - 1)/alpha_bar``.
    """
    _check_p(p)
    if not Q > 1:
        raise DomainError(f"Q must satisfy Q > 1, got Q={Q!r}")
    beta = duality_record(Q, p, tol).beta_lower
    return 0.0, (p * beta - 1) / beta


def p1_dual(Q: float, p: float, tol: float = DEFAULT_TOL) -> float:
    """``p1(p/(p-1), Q**(1/p))``, the upper end of the admissible ``s`` range (inf when Q = 1)."""
    _check_q(Q)
    _check_p(p)
    if Q - 1 < DEGENERATE_Q:
        return math.inf
    return solve_p1(p / (p - 1), Q ** (1 / p), tol)


def delta_exponent(Q: float, p: float, s: float, tol: float = DEFAULT_TOL) -> DeltaExponent:
    """``delta = p - s/(s - 1)`` for ``s`` strictly inside ``(p/(p-1), p1)``."""
    _check_q(Q)
    _check_p(p)
    lo = p / (p - 1)
    hi = p1_dual(Q, p, tol)
    if not lo < s < hi:
        raise DomainError(f"s must lie in the open interval ({lo!r}, {hi!r}), got s={s!r}")
    return DeltaExponent(p=p, Q=Q, s=s, delta=p - s / (s - 1), p1=hi)


def best_constant_power(exponent: float, p: float, n: int, mode: PowerMode | str = PowerMode.POSITIVE) -> float:
    """Best quasiminimizer constant of a radial power in ``B(0,1) minus {0}`` in R^n.

    ``mode="positive"``: ``|x|**alpha`` with ``p > n`` and ``alpha > 1 - n/p``.
    ``mode="negative"``: ``|x|**(-gamma)`` with ``1 < p < n`` and ``gamma > n/p - 1``.
    The exponent 0 (a constant) is a minimizer in either mode and yields 1.
    """
    mode = PowerMode(mode)
    _check_p(p)
    if int(n) != n or n < 1:
        raise DomainError(f"dimension n must be an integer >= 1, got {n!r}")
    if p == n:
        raise DomainError("best_constant_power is undefined for p == n")
    if exponent == 0:
        return 1.0
    if mode is PowerMode.POSITIVE:
        if not p > n:
            raise DomainError(f"positive powers need p > n, got p={p!r}, n={n!r}")
        if not exponent > 1 - n / p:
            raise DomainError(f"alpha must exceed 1 - n/p = {1 - n / p!r}, got {exponent!r}")
        a = exponent
        return ((p - 1) / (p - n)) ** (p - 1) * a**p / (n + p * (a - 1))
    if not p < n:
        raise DomainError(f"negative powers need p < n, got p={p!r}, n={n!r}")
    if not exponent > n / p - 1:
        raise DomainError(f"gamma must exceed n/p - 1 = {n / p - 1!r}, got {exponent!r}")
    g = exponent
    return ((p - 1) / (n - p)) ** (p - 1) * g**p / (p * g - (n - p))
