"""Interpolating finite Blaschke products with prescribed arc preimages."""

from .disk import (
    Arc,
    BlaschkeProduct,
    Partition,
    boundary_arg_derivative,
    canonical_angle,
    evaluate,
    normalize_rotation,
    pseudo_hyperbolic_distance,
    separation_constant,
)
from .measure import (
    arc_harmonic_measure,
    min_radius_for_monotonicity,
    mu,
    mu_vector,
    poisson_quadrature_oracle,
)
from .solver import (
    MaxIterationsExceeded,
    NoBracketError,
    SeparationUnreachable,
    SolverConfig,
    SolverTrace,
    TraceStep,
    choose_initial_radius,
    convergence_ratio,
    error,
    iterate,
    radial_update,
    solve,
    verify_solution,
)
from .interpolation import (
    CheckResult,
    FipProblem,
    InterpolationProblem,
    TargetUnreachable,
    check_near_one,
    check_radial_rays,
    check_zero_localization,
    solve_fip,
    solve_with_target,
)

__version__ = "0.1.0"
