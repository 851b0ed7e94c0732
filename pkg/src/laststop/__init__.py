"""Optimal stopping on the last +1 or -1 in a sequence of ternary trials."""

from laststop.advisor import Advice, Advisor
from laststop.appendix import AsymptoticResult, Regime, appendix_asymptotics, near_boundary_solve
from laststop.errors import (
    DomainError,
    EqualCaseRequired,
    InvalidArgs,
    MaxIterations,
    NoSignChange,
    NumericalError,
    ParamError,
    WBranchError,
)
from laststop.incomplete import CrossingCase, ObservationState, analytic_success, mstar_dist, stop_boundary
from laststop.model import ModelParams, new_model
from laststop.montecarlo import Outcome, Path, SimulationReport, monte_carlo, run_adaptive, run_fixed_x, simulate_path
from laststop.numerics import find_root, lambert_w_m1, maximize_1d
from laststop.regions import RegionClass, RegionRow, classify, gamma3, gamma_curve, gamma_endpoints, p_bullet
from laststop.success import p_eq_success, w_closed, w_recurrence
from laststop.thresholds import (
    ThresholdSolution,
    continuous_optimum,
    diag_optimum,
    discrete_optimum,
    equal_case_optima,
    phi1,
    phi2,
    solve_thresholds,
    tie_point,
)
from laststop.xstrategy import (
    XStrategyResult,
    success_prob_x,
    success_prob_x_unequal,
    x_star,
    x_star_unequal,
    xstrategy_exact,
)

__all__ = [name for name in dir() if not name.startswith("_")]
