"""Small numerical kernels: safeguarded root finding, compensated prefix sums, line fits."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import ConvergenceError

DEFAULT_TOL = 1e-12
DEFAULT_MAXITER = 200


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    fprime: Callable[[float], float] | None = None,
    tol: float = DEFAULT_TOL,
    maxiter: int = DEFAULT_MAXITER,
) -> float:
    """Root of a continuous ``f`` on a sign-change bracket ``[lo, hi]``.

    Newton steps are taken whenever they land strictly inside the current
    bracket; otherwise the bracket is bisected. Iteration stops once the last
    step (or the bracket width) drops below ``tol``. A converged Newton step
    leaves an error far below ``tol``, so ``tol`` is an upper bound rather
    than the achieved accuracy.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on [{lo!r}, {hi!r}]: f={flo!r}, {fhi!r}")
    increasing = fhi > 0

    x = 0.5 * (lo + hi)
    for _ in range(maxiter):
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx > 0) == increasing:
            hi = x
        else:
            lo = x

        step_ok = False
        if fprime is not None:
            d = fprime(x)
            if d != 0.0 and math.isfinite(d):
                x_new = x - fx / d
                step_ok = lo < x_new < hi
        if not step_ok:
            x_new = 0.5 * (lo + hi)

        if abs(x_new - x) <= tol or hi - lo <= tol:
            return x_new
        x = x_new
    raise ConvergenceError(f"root not found to tol={tol!r} in {maxiter} iterations")


def compensated_cumsum(values) -> np.ndarray:
    """Prefix sums with Neumaier compensation.

    Strict left-to-right order, so the result is bit-reproducible.
    """
    vals = np.asarray(values, dtype=float)
    out = np.empty(vals.shape[0], dtype=float)
    s = 0.0
    comp = 0.0
    for i, v in enumerate(vals.tolist()):
        t = s + v
        if abs(s) >= abs(v):
            comp += (s - t) + v
        else:
            comp += (v - t) + s
        s = t
        out[i] = s + comp
    return out


def line_fit(x, y) -> tuple[float, float, float]:
    """Least-squares line ``y ~ slope*x + intercept``.

    Returns ``(slope, intercept, rms_residual)``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xm = x.mean()
    ym = y.mean()
    dx = x - xm
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise ValueError("degenerate fit: all abscissae coincide")
    slope = float(dx @ (y - ym)) / sxx
    intercept = ym - slope * xm
    resid = y - (slope * x + intercept)
    return slope, float(intercept), float(math.sqrt(float(resid @ resid) / x.size))
