"""Awareness-coupled epidemic ODE models: equilibria, bifurcations, simulation.

Implements two compartmental models in which hosts may become aware of an
outbreak (and possibly unwilling to alert others), with a configurable
fraction of recovering hosts gaining awareness from direct experience.
Provides the vector fields and analytic Jacobians, an adaptive integrator
with attractor classification, closed-form and numerical equilibrium
analysis, transcritical-bifurcation diagnostics, and two-parameter Hopf
curve continuation, plus a scenario-driven CLI.
"""

__version__ = "0.1.0"

from .errors import (
    AbsentEquilibriumError,
    AwareDynError,
    ConfigError,
    DegenerateEquilibriumError,
    DomainError,
    InsufficientDataError,
    InvalidInputError,
    InvarianceBreachError,
    NoConvergenceError,
    NotAnEquilibriumError,
    PreconditionError,
    SpuriousRootError,
    StiffnessError,
)
from .hopf import (
    Binding,
    HopfCurve,
    HopfDiagram,
    HopfPoint,
    curve_covers_simplex,
    find_hopf_point,
    hopf_diagram,
    hopf_residual,
    parse_binding,
    prevalence_along_curve,
    region_coverage_check,
    scan_hopf_points,
    solve_hopf_point,
    trace_hopf_curve,
)
from .config import ScenarioConfig, parse_config
from .integrate import AttractorSummary, Trajectory, classify_attractor, integrate
from .models import (
    SAUISUAS_PARAM_NAMES,
    SaiasParams,
    SauisuasParams,
    in_omega,
    saias_field,
    saias_jacobian,
    saias_rhs,
    sauisuas_field,
    sauisuas_hessian,
    sauisuas_jacobian,
    sauisuas_rhs,
)
from .rates import RateFunction
from .saias import (
    PhasePortraitData,
    ReproductionNumbers,
    SaiasEquilibrium,
    a_nullcline,
    dulac_divergence,
    eigenvalues_p1,
    eigenvalues_p2,
    find_equilibria,
    i_nullcline_line,
    phase_portrait_data,
    reproduction_numbers,
)
from .sauisuas import (
    BranchDiagram,
    SauisuasEquilibrium,
    SotomayorReport,
    awareness_reproduction_number,
    branch_diagram,
    classify_stability,
    critical_beta_a,
    disease_free_coordinates,
    equilibrium_p1,
    equilibrium_p2,
    find_endemic_equilibria,
    lambda3_p2,
    sotomayor_at_r0_equal_1,
)

__all__ = [
    "__version__",
    "AbsentEquilibriumError",
    "AttractorSummary",
    "AwareDynError",
    "Binding",
    "BranchDiagram",
    "ConfigError",
    "DegenerateEquilibriumError",
    "DomainError",
    "HopfCurve",
    "HopfDiagram",
    "HopfPoint",
    "InsufficientDataError",
    "InvalidInputError",
    "InvarianceBreachError",
    "NoConvergenceError",
    "NotAnEquilibriumError",
    "PhasePortraitData",
    "PreconditionError",
    "RateFunction",
    "ReproductionNumbers",
    "SAUISUAS_PARAM_NAMES",
    "SaiasEquilibrium",
    "SaiasParams",
    "SauisuasEquilibrium",
    "SauisuasParams",
    "ScenarioConfig",
    "SotomayorReport",
    "SpuriousRootError",
    "StiffnessError",
    "Trajectory",
    "a_nullcline",
    "awareness_reproduction_number",
    "branch_diagram",
    "classify_attractor",
    "classify_stability",
    "critical_beta_a",
    "curve_covers_simplex",
    "disease_free_coordinates",
    "dulac_divergence",
    "eigenvalues_p1",
    "eigenvalues_p2",
    "equilibrium_p1",
    "equilibrium_p2",
    "find_endemic_equilibria",
    "find_equilibria",
    "find_hopf_point",
    "hopf_diagram",
    "hopf_residual",
    "i_nullcline_line",
    "in_omega",
    "integrate",
    "lambda3_p2",
    "parse_binding",
    "parse_config",
    "phase_portrait_data",
    "prevalence_along_curve",
    "region_coverage_check",
    "reproduction_numbers",
    "saias_field",
    "saias_jacobian",
    "saias_rhs",
    "sauisuas_field",
    "sauisuas_hessian",
    "sauisuas_jacobian",
    "sauisuas_rhs",
    "scan_hopf_points",
    "solve_hopf_point",
    "sotomayor_at_r0_equal_1",
    "trace_hopf_curve",
]
