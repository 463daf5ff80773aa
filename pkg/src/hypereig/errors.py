"""Exception types shared across the package.

The three direct bases map one-to-one onto the CLI exit codes:
``InvalidParamsError`` -> 2 (bad input), ``ContractViolationError`` -> 3
(a numeric contract the library promises was not met), and
``NumericFailureError`` -> 4 (a computation could not be carried out).
"""


class HyperEigError(Exception):
    """Base class for everything raised on purpose by this package."""


class InvalidParamsError(HyperEigError, ValueError):
    """A precondition on user-supplied input was violated."""


class ContractViolationError(HyperEigError):
    """A computed result failed one of the package's numeric contracts."""


class NumericFailureError(HyperEigError, ArithmeticError):
    """A computation broke down (degenerate solve, singularity, ...)."""


class CenterMismatchError(InvalidParamsError):
    """Two series with different expansion points were combined."""


class NearZeroConstantTermError(InvalidParamsError):
    """A recurrence that divides by the constant term got |c0| below the guard."""


class InsufficientOrderError(InvalidParamsError):
    """The operation needs more coefficients than the series carries."""


class WrongCenterError(InvalidParamsError):
    """A formula valid only at expansion point 0 was asked for elsewhere."""


class StepTooLargeError(InvalidParamsError):
    """A finite-difference step does not fit inside the admissible domain."""


class RejectedInitialConditionError(InvalidParamsError):
    """An ODE initial condition violates a singularity guard outright."""


class InconsistentParametersError(InvalidParamsError):
    """Two parameter blocks that must agree (e.g. shared eigenvalue) do not."""


class DegenerateSolveError(NumericFailureError):
    """The per-coefficient linear solve lost its slope (conditioning guard)."""


class NoEstimateError(NumericFailureError):
    """Too few nonzero tail coefficients to estimate a convergence radius."""


class SingularEvaluationError(NumericFailureError):
    """The ODE right-hand side was evaluated inside a guard floor.

    ``guard`` is ``"u"`` (solution value near zero) or ``"q"`` (independent
    variable near a singular point of the equation).
    """

    def __init__(self, message: str, guard: str):
        super().__init__(message)
        self.guard = guard


class PoleError(NumericFailureError):
    """The closed-form time factor was evaluated at (or too near) a pole."""


class BranchError(NumericFailureError):
    """Real-only evaluation hit an even root of a negative bracket."""


class OutOfRadiusWarning(UserWarning):
    """Evaluation outside the trusted disk of a truncated series."""
