"""Exact ILP solving for standard form with group constraints."""

from .core import (
    E_UPPER,
    DpConfig,
    brute_force_ilp,
    gomory_group_min,
    proximity_radius,
    proximity_shift,
    rho_for,
    select_base,
    solve,
    solve_canonical,
)
from .dp import DpOutcome, dp_solve, window_points
from .instances import (
    FEASIBLE,
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    CanonIlpInstance,
    GenIlpInstance,
    ModIlpInstance,
    SolveResult,
)
from .lp import LpResult, lp_relax
from .reductions import Infeasible, normalize_gcd, reduce_cf_to_gensf, reduce_modsf_to_cf

__all__ = [
    "E_UPPER",
    "DpConfig",
    "DpOutcome",
    "LpResult",
    "Infeasible",
    "GenIlpInstance",
    "CanonIlpInstance",
    "ModIlpInstance",
    "SolveResult",
    "OPTIMAL",
    "FEASIBLE",
    "INFEASIBLE",
    "UNBOUNDED",
    "brute_force_ilp",
    "dp_solve",
    "gomory_group_min",
    "lp_relax",
    "normalize_gcd",
    "proximity_radius",
    "proximity_shift",
    "reduce_cf_to_gensf",
    "reduce_modsf_to_cf",
    "rho_for",
    "select_base",
    "solve",
    "solve_canonical",
    "window_points",
]
