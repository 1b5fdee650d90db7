"""Edge domain walls in thin ferromagnetic films: a one-dimensional
relaxation solver for the wall angle on the half-line, with a nonlocal
stray-field term entering through a half-Laplacian of the magnetization
trace along the film edge."""

from .analysis import (
    DecayFit,
    DecayFitResult,
    ProfileDiagnostics,
    boundary_slope,
    diagnostics,
    fit_decay,
)
from .dynamics import (
    RelaxationConfig,
    RelaxationResult,
    analytic_zero_nu_profile,
    el_residual,
    initial_profile,
    relax,
)
from .energy import (
    Cutoff,
    EnergyBreakdown,
    Profile,
    ThreeWays,
    cutoff_eval,
    edge_integrand_bound_constant,
    energy_lower_bound,
    gagliardo_J,
    local_energy,
    nonlocal_three_ways,
    renormalized_energy,
)
from .errors import (
    DivergenceError,
    DomainError,
    EdgewallError,
    ProfileParseError,
    SingularEndpointError,
    StabilityError,
    WindowError,
)
from .fileio import (
    RunRecord,
    read_profile_csv,
    read_run_json,
    write_grid_csv,
    write_profile_csv,
    write_run_json,
    write_sweep_json,
)
from .grid import Grid, make_stretched_grid, make_uniform_grid
from .operators import (
    Extension,
    Field,
    half_laplacian_pv,
    half_laplacian_spectral,
    hilbert_of_derivative,
)
from .params import (
    DimensionlessScales,
    MaterialParams,
    ModelParams,
    derive_scales,
    load_config,
    parse_angle,
)
from .validation import Criterion, CriterionResult, get_criteria, run_suite

__version__ = "0.1.0"

__all__ = [
    "Criterion",
    "CriterionResult",
    "Cutoff",
    "DecayFit",
    "DecayFitResult",
    "DimensionlessScales",
    "DivergenceError",
    "DomainError",
    "EdgewallError",
    "EnergyBreakdown",
    "Extension",
    "Field",
    "Grid",
    "MaterialParams",
    "ModelParams",
    "Profile",
    "ProfileDiagnostics",
    "ProfileParseError",
    "RelaxationConfig",
    "RelaxationResult",
    "RunRecord",
    "SingularEndpointError",
    "StabilityError",
    "ThreeWays",
    "WindowError",
    "analytic_zero_nu_profile",
    "boundary_slope",
    "cutoff_eval",
    "derive_scales",
    "diagnostics",
    "edge_integrand_bound_constant",
    "el_residual",
    "energy_lower_bound",
    "fit_decay",
    "gagliardo_J",
    "get_criteria",
    "half_laplacian_pv",
    "half_laplacian_spectral",
    "hilbert_of_derivative",
    "initial_profile",
    "load_config",
    "local_energy",
    "make_stretched_grid",
    "make_uniform_grid",
    "nonlocal_three_ways",
    "parse_angle",
    "read_profile_csv",
    "read_run_json",
    "relax",
    "renormalized_energy",
    "run_suite",
    "write_grid_csv",
    "write_profile_csv",
    "write_run_json",
    "write_sweep_json",
    "__version__",
]
