"""Wiener-type sums, divergence classification and iterated potential bounds.

A finite computation cannot prove divergence. The classifier therefore uses
a log-log tail fit, a large-sum escape hatch and an explicit INCONCLUSIVE
band. A DIVERGENT verdict means the sufficient condition for regularity is
met. A CONVERGENT verdict says nothing about irregularity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from ._numerics import DEFAULT_TOL, compensated_cumsum, line_fit
from .capacity import CapacityProfile
from .errors import DomainError
from .exponents import delta_exponent, p1_dual, wiener_exponent

FIT_MARGIN = 0.05
DIVERGENCE_THRESHOLD = 1e3
MIN_FIT_WINDOW = 10
# RMS residual of the log-log tail fit above which a power law is not trusted
RESIDUAL_TOL = 0.1


class Verdict(str, Enum):
    DIVERGENT = "DIVERGENT"
    CONVERGENT = "CONVERGENT"
    INCONCLUSIVE = "INCONCLUSIVE"


VERDICT_NOTES = {
    Verdict.DIVERGENT: "sum diverges: sufficient condition for regularity met",
    Verdict.CONVERGENT: "sum converges: condition not met; no conclusion about irregularity",
    Verdict.INCONCLUSIVE: "tail decay too close to the 1/j threshold to decide",
}


@dataclass(frozen=True)
class WienerReport:
    exponent_e: float
    terms: np.ndarray = field(repr=False)
    partial_sums: np.ndarray = field(repr=False)
    tail_slope: float
    fit_residual: float
    verdict: Verdict
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "exponent": self.exponent_e,
            "terms": int(self.terms.size),
            "partial_sums": self.partial_sums.tolist(),
            "tail_slope": self.tail_slope,
            "verdict": self.verdict.value,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class PotentialBound:
    delta: float
    c: float
    levels: np.ndarray = field(repr=False)

    @property
    def final(self) -> float:
        """Last level; 0 for the empty sum."""
        return float(self.levels[-1]) if self.levels.size else 0.0


def _kappa(profile: CapacityProfile | Sequence[float]) -> np.ndarray:
    if isinstance(profile, CapacityProfile):
        return profile.kappa
    k = np.asarray(profile, dtype=float)
    if k.ndim != 1 or np.any(k < 0):
        raise DomainError("profile must be a one-dimensional array of nonnegative densities")
    return k


def _terms(kappa: np.ndarray, e: float) -> np.ndarray:
    if not e > 0:
        raise DomainError(f"exponent e must be positive, got {e!r}")
    return kappa**e


def wiener_partial_sums(profile, e: float, K: int | None = None) -> np.ndarray:
    """Partial sums ``S_k = sum_{j<=k} kappa_j**e`` for ``k = 0..K``."""
    kappa = _kappa(profile)
    if K is None:
        K = kappa.size - 1
    if not 0 <= K < kappa.size:
        raise DomainError(f"K must lie in [0, {kappa.size - 1}], got {K!r}")
    return compensated_cumsum(_terms(kappa[: K + 1], e))


def fit_tail_slope(terms: np.ndarray, min_window: int = MIN_FIT_WINDOW) -> tuple[float, float]:
    """Decay rate ``b`` in ``terms_j ~ C (j+1)**(-b)`` over the last half of the terms.

    Returns ``(b, rms_residual)``. Zero terms are dropped; an all-zero window
    yields ``b = inf``.
    """
    K = terms.size - 1
    window = max(min_window, K // 2)
    if terms.size < window or terms.size < min_window:
        raise DomainError(f"profile has {terms.size} terms, fewer than the fit window {window}")
    j = np.arange(terms.size - window, terms.size, dtype=float)
    tail = terms[-window:]
    positive = tail > 0
    if positive.sum() < 2:
        return math.inf, 0.0
    slope, _, resid = line_fit(np.log1p(j[positive]), np.log(tail[positive]))
    return -slope, resid


def classify_series(
    profile,
    e: float,
    *,
    fit_margin: float = FIT_MARGIN,
    divergence_threshold: float = DIVERGENCE_THRESHOLD,
    min_window: int = MIN_FIT_WINDOW,
    residual_tol: float = RESIDUAL_TOL,
    notes: Sequence[str] = (),
) -> WienerReport:
    """Verdict on ``sum kappa_j**e`` from its tail decay rate and its size."""
    kappa = _kappa(profile)
    terms = _terms(kappa, e)
    sums = compensated_cumsum(terms)
    b, resid = fit_tail_slope(terms, min_window)
    if b < 1 - fit_margin or sums[-1] > divergence_threshold:
        verdict = Verdict.DIVERGENT
    elif b > 1 + fit_margin and resid <= residual_tol:
        verdict = Verdict.CONVERGENT
    else:
        verdict = Verdict.INCONCLUSIVE
    all_notes = (*notes, VERDICT_NOTES[verdict])
    return WienerReport(e, terms, sums, b, resid, verdict, all_notes)


def classify_regularity(profile, Q: float, p: float, eps: float, tol: float = DEFAULT_TOL, **kwargs) -> WienerReport:
    """Test the sufficient condition with exponent ``alpha_bar/(p-1) + eps``.

    ``eps = 0`` is accepted for exploring the threshold exponent itself; the
    regularity statement needs ``eps > 0`` and the report says so.
    """
    notes = []
    if eps == 0:
        notes.append("eps=0: threshold exponent; the sufficiency statement requires eps > 0")
    e = wiener_exponent(Q, p, eps, tol)
    return classify_series(profile, e, notes=notes, **kwargs)


def potential_lower_bound(profile, delta: float, c: float = 1.0, k: int | None = None) -> PotentialBound:
    """Levels ``m_i = 1 - exp(-c * sum_{j<=i} kappa_j**(1/delta))`` for ``i = 0..k``.

    ``m_i`` bounds the infimum of the potential on ``B_{i+1}`` from below.
    ``k = -1`` gives the empty sum and no levels.
    """
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta!r}")
    if not c > 0:
        raise DomainError(f"c must be positive, got {c!r}")
    kappa = _kappa(profile)
    if k is None:
        k = kappa.size - 1
    if k == -1:
        return PotentialBound(delta, c, np.empty(0))
    sums = wiener_partial_sums(kappa, 1 / delta, k)
    return PotentialBound(delta, c, -np.expm1(-c * sums))


def admissible_s_interval(Q: float, p: float, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Open interval ``(p/(p-1), p1(p/(p-1), Q**(1/p)))`` of auxiliary exponents ``s``."""
    return p / (p - 1), p1_dual(Q, p, tol)


def admissible_delta(Q: float, p: float, s: float, tol: float = DEFAULT_TOL) -> float:
    """``delta = p - s/(s-1)`` for admissible ``s``; raises with the interval otherwise."""
    return delta_exponent(Q, p, s, tol).delta

