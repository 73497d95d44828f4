"""Radial p-capacity of spherical condensers and capacity-density profiles.

The capacity of the annular condenser ``(closed B(0, rho), B(0, r))`` in R^n is

    omega_{n-1} * (int_rho^r t**((1-n)/(p-1)) dt) ** (1 - p),

which is the closed form used by :func:`radial_capacity`. The oracle
:func:`radial_capacity_oracle` instead minimizes the exact p-energy over
piecewise-linear radial profiles, never touching that formula.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DomainError


def sphere_area(n: int) -> float:
    """Surface measure ``2 pi**(n/2) / Gamma(n/2)`` of the unit sphere in R^n."""
    return 2 * math.pi ** (n / 2) / math.gamma(n / 2)


@dataclass(frozen=True)
class Condenser:
    """Concentric balls ``closed B(0, rho)`` inside ``B(0, r)`` in R^n.

    ``p > n`` is accepted: annular capacities stay finite there, only the
    ``r**(n-p)`` normalization of the profiles loses meaning.
    """

    n: int
    p: float
    rho: float
    r: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"dimension n must be an integer >= 2, got {self.n!r}")
        if not self.p > 1:
            raise DomainError(f"p must satisfy p > 1, got p={self.p!r}")
        if not 0 < self.rho < self.r:
            raise DomainError(f"radii must satisfy 0 < rho < r, got rho={self.rho!r}, r={self.r!r}")


def _radial_integral(n: int, p: float, rho: float, r: float) -> float:
    # int_rho^r t**(a-1) dt with a = (p-n)/(p-1), written to survive a -> 0
    a = (p - n) / (p - 1)
    log_ratio = math.log(r / rho)
    if a == 0:
        return log_ratio
    return rho**a * math.expm1(a * log_ratio) / a


def radial_capacity(c: Condenser) -> float:
    """Exact p-capacity of a radial condenser."""
    n, p = c.n, c.p
    omega = sphere_area(n)
    if p == n:
        return omega * math.log(c.r / c.rho) ** (1 - n)
    return omega * _radial_integral(n, p, c.rho, c.r) ** (1 - p)


def _oracle_solution(c: Condenser, grid_points: int) -> tuple[np.ndarray, np.ndarray, float]:
    if grid_points < 100:
        raise DomainError(f"grid_points must be >= 100, got {grid_points!r}")
    t = np.geomspace(c.rho, c.r, grid_points)
    t[0], t[-1] = c.rho, c.r
    h = np.diff(t)
    # exact energy of a linear piece with jump d on [t_i, t_{i+1}]: w_i * |d|**p
    w = sphere_area(c.n) * h ** (-c.p) * np.diff(t**c.n) / c.n
    # min sum w_i |d_i|^p subject to sum d_i = 1 is attained at d_i ~ w_i**(-1/(p-1))
    g = w ** (-1.0 / (c.p - 1))
    total = float(np.sum(g))
    energy = total ** (1 - c.p)
    u = np.concatenate(([1.0], 1.0 - np.cumsum(g) / total))
    u[-1] = 0.0
    return t, u, energy


def radial_capacity_oracle(c: Condenser, grid_points: int = 10_000) -> float:
    """Discrete minimum of the radial p-energy over piecewise-linear profiles.

    Nodes are log-spaced on ``[rho, r]``; the energy of each linear piece is
    integrated exactly, and the resulting separable convex problem is solved
    in closed form. The value is an upper bound for the capacity that
    decreases under nested refinement.
    """
    return _oracle_solution(c, grid_points)[2]


def radial_capacity_minimizer(c: Condenser, grid_points: int = 10_000) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and nodal values of the discrete minimizer behind the oracle."""
    t, u, _ = _oracle_solution(c, grid_points)
    return t, u


def full_ball_density(n: int, p: float, lam: float = 0.5) -> float:
    """``cp_p(closed B(0, lam), B(0, 1))``, the largest possible profile entry for ratio ``lam``."""
    _check_ratio(lam)
    if p > n:
        raise DomainError(f"capacity densities need 1 < p <= n, got p={p!r}, n={n!r}")
    return radial_capacity(Condenser(n, p, lam, 1.0))


def _check_ratio(lam: float) -> None:
    if not 0 < lam < 1:
        raise DomainError(f"radius ratio must lie in (0, 1), got {lam!r}")


@dataclass(frozen=True)
class CapacityProfile:
    """Normalized capacity densities ``kappa_j`` at radii ``r_j = r0 * ratio**j``."""

    r0: float
    ratio: float
    kappa: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_ratio(self.ratio)
        if not self.r0 > 0:
            raise DomainError(f"r0 must be positive, got {self.r0!r}")
        k = np.array(self.kappa, dtype=float)
        if k.ndim != 1:
            raise DomainError("kappa must be one-dimensional")
        if np.any(~np.isfinite(k)) or np.any(k < 0):
            raise DomainError("kappa entries must be finite and nonnegative")
        k.setflags(write=False)
        object.__setattr__(self, "kappa", k)

    def __len__(self) -> int:
        return self.kappa.size

    @property
    def radii(self) -> np.ndarray:
        return self.r0 * self.ratio ** np.arange(self.kappa.size)

    def to_csv(self, path: str | Path | None = None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["j", "r_j", "kappa_j"])
        for j, (rj, kj) in enumerate(zip(self.radii.tolist(), self.kappa.tolist())):
            writer.writerow([j, repr(rj), repr(kj)])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text, encoding="utf-8", newline="\n")
        return text

    @classmethod
    def from_csv(cls, path: str | Path) -> "CapacityProfile":
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
        if not rows:
            raise DomainError(f"{path}: empty profile")
        missing = {"j", "r_j", "kappa_j"} - set(rows[0])
        if missing:
            raise DomainError(f"{path}: missing columns {sorted(missing)}")
        rows.sort(key=lambda row: int(row["j"]))
        if [int(row["j"]) for row in rows] != list(range(len(rows))):
            raise DomainError(f"{path}: j must run 0, 1, 2, ... without gaps")
        radii = [float(row["r_j"]) for row in rows]
        kappa = [float(row["kappa_j"]) for row in rows]
        ratio = radii[1] / radii[0] if len(radii) > 1 else 0.5
        return cls(r0=radii[0], ratio=ratio, kappa=np.array(kappa))


def profile_ball(n: int, p: float, lam: float = 0.5, r0: float = 1.0, count: int = 100) -> CapacityProfile:
    """Profile of a full ball complement: every entry equals the full-ball density."""
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count!r}")
    density = full_ball_density(n, p, lam)
    return CapacityProfile(r0=r0, ratio=lam, kappa=np.full(count, density))


def profile_power_decay(
    a: float,
    scale: float,
    count: int,
    *,
    n: int | None = None,
    p: float | None = None,
    lam: float = 0.5,
    r0: float = 1.0,
) -> CapacityProfile:
    """Synthetic profile ``kappa_j = scale * (j + 1)**(-a)``.

    Stands in for thin complements (cusps and the like). When ``n`` and ``p``
    are given, ``scale`` is checked against the full-ball density.
    """
    if not a >= 0:
        raise DomainError(f"decay rate a must be >= 0, got {a!r}")
    if not scale > 0:
        raise DomainError(f"scale must be positive, got {scale!r}")
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count!r}")
    if n is not None and p is not None:
        bound = full_ball_density(n, p, lam)
        if scale > bound:
            raise DomainError(f"scale {scale!r} exceeds the full-ball density {bound!r}")
    j = np.arange(count, dtype=float)
    return CapacityProfile(r0=r0, ratio=lam, kappa=scale * (j + 1) ** (-a))
