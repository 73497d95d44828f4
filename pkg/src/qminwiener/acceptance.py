"""Acceptance criteria, runnable from pytest and from ``qminwiener selftest``.

Each check returns a :class:`CriterionResult`; tolerances and runtime limits
are fixed here and are not configurable.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import mpmath
import numpy as np

from .capacity import Condenser, radial_capacity, radial_capacity_oracle
from .exponents import (
    duality_record,
    q_of_alpha,
    solve_alpha_bar,
    solve_p1,
    wiener_exponent,
)
from .onedim import best_constant_search
from .sharpness import IteratedVerdict, iterated_sharpness_check, sharpness_fit, sharpness_run
from .wiener import Verdict, classify_series, potential_lower_bound
from .capacity import profile_power_decay

GRID_SIZE = 50
Q_GRID = np.logspace(0.0, 3.0, GRID_SIZE)
P_GRID = 1 + np.logspace(-1.0, math.log10(9.0), GRID_SIZE)  # p in [1.1, 10]

SHARPNESS_MATRIX = [(4 / 3, 2.0, 3), (2.0, 2.0, 3), (16 / 7, 2.0, 3), (4 / 3, 2.0, 4), (2.0, 2.0, 4), (16 / 7, 2.0, 4), (2.0, 2.5, 4)]
CANONICAL = (4 / 3, 2.0, 3)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d}: {self.title} ({self.detail}; {self.seconds:.2f}s)"


def _mp_q(alpha, p):
    return alpha**p / (1 + p * (alpha - 1))


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def exponent_identities() -> tuple[bool, str]:
    """Identities over the 50x50 (Q, p) grid, relative error < 1e-8.

    p1 identities are skipped at Q = 1, where p1 is undefined (t = 1). The
    algebraic identities are evaluated from the float solver outputs in
    50-digit arithmetic: near p = 1.1, Q = 1e3 the dual exponent beta sits
    within 1e-32 of its pole 1/p and double precision cannot evaluate them.
    """
    worst = {"lem_pQ": 0.0, "cor_beta_p1": 0.0, "lem_al_be": 0.0, "be_to_albar": 0.0}
    with mpmath.workdps(50):
        for p in P_GRID.tolist():
            pd = p / (p - 1)
            mp_p = mpmath.mpf(p)
            mp_pd = mp_p / (mp_p - 1)
            for Q in Q_GRID.tolist():
                rec = duality_record(Q, p)
                if Q > 1:
                    t = Q ** (1 / p)
                    worst["lem_pQ"] = max(worst["lem_pQ"], _rel(solve_p1(p, t), 1 / (1 - rec.alpha_lower)))
                    worst["cor_beta_p1"] = max(worst["cor_beta_p1"], _rel(solve_p1(pd, t), 1 / (1 - rec.beta_lower)))
                mp_Q = mpmath.mpf(Q)
                for alpha in (rec.alpha_lower, rec.alpha_bar):
                    a = mpmath.mpf(alpha)
                    beta = a / (1 + mp_p * (a - 1))
                    lhs = _mp_q(a, mp_p) ** (1 / (mp_p - 1))
                    worst["lem_al_be"] = max(worst["lem_al_be"], float(abs(lhs - _mp_q(beta, mp_pd)) / lhs))
                a = mpmath.mpf(rec.alpha_bar)
                beta = a / (1 + mp_p * (a - 1))
                target = a / (mp_p - 1)
                worst["be_to_albar"] = max(worst["be_to_albar"], float(abs(beta / (mp_p * beta - 1) - target) / target))
                # the float solve must also reproduce Q itself
                worst["lem_al_be"] = max(worst["lem_al_be"], float(abs(_mp_q(a, mp_p) - mp_Q) / mp_Q))
    ok = all(v < 1e-8 for v in worst.values())
    return ok, "max rel err " + ", ".join(f"{k}={v:.1e}" for k, v in worst.items())


def closed_form_p2() -> tuple[bool, str]:
    """Closed form at p = 2, and the two-sided bounds on alpha_bar over the grid.

    The upper bound is tight to a relative gap of about ``1/(p alpha_bar)``,
    below double precision once ``alpha_bar > 1e15``. The bounds are therefore
    checked in 50-digit arithmetic against the root polished from the float
    solution, and the float solution must match that root to 1e-12.
    """
    qs = np.logspace(0.0, 3.0, 1000)
    err = max(abs(solve_alpha_bar(Q, 2.0) - (Q + math.sqrt(Q * Q - Q))) for Q in qs.tolist())
    bound_violations = 0
    solver_err = 0.0
    with mpmath.workdps(50):
        for p in P_GRID.tolist():
            mp_p = mpmath.mpf(p)
            for Q in Q_GRID.tolist():
                ab = solve_alpha_bar(Q, p)
                mp_Q = mpmath.mpf(Q)
                lo = mp_Q ** (1 / (mp_p - 1))
                hi = (mp_p * mp_Q) ** (1 / (mp_p - 1))
                if Q == 1:
                    root = mpmath.mpf(1)
                else:
                    root = mpmath.findroot(lambda a: mp_p * mpmath.log(a) - mpmath.log(1 + mp_p * (a - 1)) - mpmath.log(mp_Q), mpmath.mpf(ab))
                if not lo <= root < hi:
                    bound_violations += 1
                solver_err = max(solver_err, float(abs(ab / root - 1)))
    ok = err < 1e-10 and bound_violations == 0 and solver_err < 1e-12
    return ok, (
        f"max |alpha_bar - closed form| = {err:.1e}, bound violations = {bound_violations}, "
        f"float vs 50-digit root rel err = {solver_err:.1e}"
    )


def onedim_oracle() -> tuple[bool, str]:
    cases = [(a, 2.0) for a in (0.6, 0.8, 1.5, 2.0, 5.0)] + [(0.75, 3.0), (3.0, 3.0)]
    err = max(abs(best_constant_search(a, p, 400) - q_of_alpha(a, p)) for a, p in cases)
    return err < 1e-3, f"max abs err {err:.1e} over {len(cases)} cases"


def capacity_cases():
    for n in (2, 3, 4):
        for p in (1.5, 2.0, 2.5, float(n)):
            for rho in (0.1, 0.5):
                yield Condenser(n, p, rho, 1.0)


def capacity_oracle() -> tuple[bool, str]:
    errs = [_rel(radial_capacity_oracle(c, 10_000), radial_capacity(c)) for c in capacity_cases()]
    return max(errs) < 5e-3 and len(errs) == 24, f"max rel err {max(errs):.1e} over {len(errs)} cases"


def capacity_boundedness() -> tuple[bool, str]:
    run = sharpness_run(*CANONICAL, eps_grid=np.logspace(-8, -2, 40))
    ratio = run.cap_ratio()
    spread = float(ratio.max() / ratio.min())
    return spread < 2, f"max/min of cap_term/rho_eps^(n-p) = {spread:.4f}"


def sharpness_slopes() -> tuple[bool, str]:
    errs = []
    for Q, p, n in SHARPNESS_MATRIX:
        run = sharpness_run(Q, p, n)
        errs.append(_rel(sharpness_fit(run), run.target_slope))
    return max(errs) < 0.02, f"max rel err {max(errs):.2e} over {len(errs)} configurations"


def iterated_flip() -> tuple[bool, str]:
    failures = []
    factors = [0.25, 0.5, 1 - 1e-6, 1.0, 1 + 1e-6, 2.0, 4.0]
    for Q, p, n in SHARPNESS_MATRIX:
        run = sharpness_run(Q, p, n)
        threshold = (n - p) / run.gamma
        for f in factors:
            check = iterated_sharpness_check(run, threshold * f, c=1.0, k=1)
            want = IteratedVerdict.BOUNDARY if f == 1.0 else (IteratedVerdict.CONSISTENT if f < 1 else IteratedVerdict.FALSIFIED)
            if check.verdict is not want:
                failures.append((Q, p, n, f, check.verdict.value))
    return not failures, f"{len(SHARPNESS_MATRIX) * len(factors)} checks, mismatches: {failures or 'none'}"


def classifier_truth() -> tuple[bool, str]:
    mismatches = []
    for e in (0.5, 1.0, 2.0, 3.0):
        for a in (0.1, 0.4, 1 / e, 0.9 / e, 1.1 / e, 2 / e):
            report = classify_series(profile_power_decay(a, 1.0, 10_000), e)
            ae = a * e
            if abs(ae - 1) < 0.05 and report.verdict is Verdict.INCONCLUSIVE:
                continue
            want = Verdict.DIVERGENT if ae <= 1 + 1e-12 else Verdict.CONVERGENT
            if report.verdict is not want:
                mismatches.append((e, round(a, 4), report.verdict.value))
    return not mismatches, f"24 cases, mismatches: {mismatches or 'none'}"


def recursion_invariant(seed: int = 20240519) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(1000):
        size = int(rng.integers(2, 60))
        kappa = rng.uniform(0.0, 2.0, size) * (rng.uniform(size=size) > 0.1)
        delta = float(rng.uniform(0.05, 3.0))
        c = float(rng.uniform(0.01, 3.0))
        m = potential_lower_bound(kappa, delta, c).levels
        lhs = 1 - m[1:]
        rhs = (1 - m[:-1]) * np.exp(-c * kappa[1:] ** (1 / delta))
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst < 1e-12, f"max abs residual {worst:.1e} over 1000 profiles"


def classical_limit() -> tuple[bool, str]:
    gaps = {p: abs(wiener_exponent(1 + 1e-8, p, 0.0) - 1 / (p - 1)) for p in (1.5, 2.0, 3.0, 10.0)}
    return all(g < 1e-6 for g in gaps.values()), "gap " + ", ".join(f"p={p:g}: {g:.1e}" for p, g in gaps.items())


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    check: Callable[[], tuple[bool, str]]
    max_seconds: float | None = None


CRITERIA = [
    Criterion(1, "exponent identities on the 50x50 grid", exponent_identities, 5.0),
    Criterion(2, "p=2 closed form and alpha_bar bounds", closed_form_p2),
    Criterion(3, "1D best-constant oracle", onedim_oracle, 30.0),
    Criterion(4, "capacity oracle equivalence", capacity_oracle, 10.0),
    Criterion(5, "capacity ratio bounded along the eps sweep", capacity_boundedness),
    Criterion(6, "sharpness slope equals alpha_bar/(p-1)", sharpness_slopes, 5.0),
    Criterion(7, "iterated-estimate verdict flips at (n-p)/gamma", iterated_flip),
    Criterion(8, "Wiener classifier vs p-series truth", classifier_truth),
    Criterion(9, "potential bound recursion", recursion_invariant),
    Criterion(10, "classical limit of the Wiener exponent", classical_limit),
]


def run_criterion(criterion: Criterion) -> CriterionResult:
    start = time.perf_counter()
    ok, detail = criterion.check()
    elapsed = time.perf_counter() - start
    if criterion.max_seconds is not None and elapsed >= criterion.max_seconds:
        ok = False
        detail += f"; exceeded {criterion.max_seconds:g}s budget"
    return CriterionResult(criterion.number, criterion.title, ok, detail, elapsed)


def run_all(echo: Callable[[str], None] | None = print) -> list[CriterionResult]:
    results = []
    for criterion in CRITERIA:
        result = run_criterion(criterion)
        if echo is not None:
            echo(result.line())
        results.append(result)
    return results
