"""Wiener-type exponents, capacities and sharpness checks for quasiminimizers of the p-energy."""

from .capacity import (
    CapacityProfile,
    Condenser,
    profile_ball,
    profile_power_decay,
    radial_capacity,
    radial_capacity_oracle,
)
from .errors import ConvergenceError, DomainError, SaturationError
from .exponents import (
    duality_record,
    exponent_pair,
    q_of_alpha,
    solve_alpha_bar,
    solve_alpha_lower,
    solve_p1,
    wiener_exponent,
)
from .onedim import best_constant_search, verify_power_table
from .sharpness import iterated_sharpness_check, sharpness_fit, sharpness_run
from .wiener import Verdict, classify_regularity, classify_series, potential_lower_bound

__version__ = "0.1.0"

__all__ = [
    "CapacityProfile",
    "Condenser",
    "ConvergenceError",
    "DomainError",
    "SaturationError",
    "Verdict",
    "best_constant_search",
    "classify_regularity",
    "classify_series",
    "duality_record",
    "exponent_pair",
    "iterated_sharpness_check",
    "potential_lower_bound",
    "profile_ball",
    "profile_power_decay",
    "q_of_alpha",
    "radial_capacity",
    "radial_capacity_oracle",
    "sharpness_fit",
    "sharpness_run",
    "solve_alpha_bar",
    "solve_alpha_lower",
    "solve_p1",
    "verify_power_table",
    "wiener_exponent",
]
