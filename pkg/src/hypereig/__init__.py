"""Power-series eigenfunctions of a nonlinear radial hyperbolic operator.

The package builds truncated Taylor solutions of

    d/dz[(z**2 - scale**2) * d(u**n)/dz] = eigenvalue * u,

maps them back to the geodesic coordinate via z = scale*cosh(eta),
cross-validates them against an independent adaptive Runge-Kutta
integration of the equivalent first-order system, proves out the
no-polynomial-solution laws on exact polynomials, and assembles full
separable space-time solutions of the associated reactive diffusion
equations with closed-form time factors.
"""

from .eigen import (
    DEFAULT_ORDER,
    EigenParams,
    a2_closed_form,
    center_formula_agreement,
    determinism_check,
    eigen_coefficients,
    eigen_coefficients_direct,
    eigen_residual,
    radius_estimate,
    residual_max,
)
from .errors import (
    BranchError,
    CenterMismatchError,
    ContractViolationError,
    DegenerateSolveError,
    HyperEigError,
    InconsistentParametersError,
    InsufficientOrderError,
    InvalidParamsError,
    NearZeroConstantTermError,
    NoEstimateError,
    NumericFailureError,
    OutOfRadiusWarning,
    PoleError,
    RejectedInitialConditionError,
    SingularEvaluationError,
    StepTooLargeError,
    WrongCenterError,
)
from .operator import (
    EPS_Q,
    OperatorParams,
    apply_operator,
    eta_of_z,
    eval_in_eta,
    hyperbolic_residual,
    z_of_eta,
)
from .series import EPS0, TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "BranchError",
    "CenterMismatchError",
    "ContractViolationError",
    "DEFAULT_ORDER",
    "DegenerateSolveError",
    "EigenParams",
    "EPS0",
    "EPS_Q",
    "HyperEigError",
    "InconsistentParametersError",
    "InsufficientOrderError",
    "InvalidParamsError",
    "NearZeroConstantTermError",
    "NoEstimateError",
    "NumericFailureError",
    "OperatorParams",
    "OutOfRadiusWarning",
    "PoleError",
    "RejectedInitialConditionError",
    "SingularEvaluationError",
    "StepTooLargeError",
    "TruncatedSeries",
    "WrongCenterError",
    "a2_closed_form",
    "apply_operator",
    "center_formula_agreement",
    "determinism_check",
    "eigen_coefficients",
    "eigen_coefficients_direct",
    "eigen_residual",
    "eta_of_z",
    "eval_in_eta",
    "hyperbolic_residual",
    "radius_estimate",
    "residual_max",
    "z_of_eta",
]
