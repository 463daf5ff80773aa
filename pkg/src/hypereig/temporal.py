"""Closed-form time factors and separable space-time solutions.

The scalar ODE  f' = nonlin * f**n + lin * f  (nonlin, lin nonzero,
possibly complex) has the closed-form family

    f(t) = ( -lin / (nonlin - c * exp(-(n-1) * lin * t)) )**(1/(n-1)),

with c fixed by the initial value.  Pairing f with an eigenfunction
series Q (nonlin set to the eigenvalue) gives separable solutions
u(eta, t) = f(t) * Q(eta) of the reactive diffusion equation

    du/dt - lin * u = Laplacian_part(u**n)

on the geodesic coordinate: lin = -1 recovers the plain reactive decay
form, lin = i*(omega/alpha) the time-periodic form (omega and alpha only
ever enter through that ratio).  Complex roots take the principal branch
(argument in (-pi, pi]); a strict real mode exists that raises instead of
silently choosing a branch when the bracket goes negative under an even
root order.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .eigen import EigenParams, eigen_coefficients, radius_estimate
from .errors import (
    BranchError,
    InconsistentParametersError,
    InvalidParamsError,
    PoleError,
)
from .operator import OperatorParams, apply_operator, hyperbolic_residual, z_of_eta
from .series import TruncatedSeries

#: Bracket denominators closer to zero than this count as sitting on a pole.
POLE_EPS = 1e-10


def _finite_complex(v) -> complex:
    v = complex(v)
    if not cmath.isfinite(v):
        raise InvalidParamsError("temporal coefficients must be finite")
    return v


@dataclass(frozen=True)
class TemporalParams:
    """Data of one time factor: exponent and the three ODE constants.

    ``nonlin`` multiplies f**n, ``lin`` multiplies f; both must be
    nonzero.  ``c`` selects the trajectory (0 is the steady state) and is
    allowed to be complex so that complex initial values invert cleanly.
    """

    n: int
    nonlin: complex
    lin: complex
    c: complex

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 2:
            raise InvalidParamsError("exponent n must be an integer >= 2")
        nonlin = _finite_complex(self.nonlin)
        lin = _finite_complex(self.lin)
        c = _finite_complex(self.c)
        if nonlin == 0 or lin == 0:
            raise InvalidParamsError("nonlin and lin must both be nonzero")
        object.__setattr__(self, "nonlin", nonlin)
        object.__setattr__(self, "lin", lin)
        object.__setattr__(self, "c", c)

    @property
    def is_real(self) -> bool:
        return self.nonlin.imag == 0.0 and self.lin.imag == 0.0 and self.c.imag == 0.0


def oscillatory_lin(omega_over_alpha: float) -> complex:
    """The linear coefficient i*(omega/alpha) of the time-periodic form."""
    if not math.isfinite(omega_over_alpha) or omega_over_alpha == 0.0:
        raise InvalidParamsError("omega/alpha must be finite and nonzero")
    return complex(0.0, omega_over_alpha)


def _require_real(p: TemporalParams) -> None:
    if not p.is_real:
        raise InvalidParamsError("real mode needs real nonlin, lin and c")


def _root(w, m: int, real_mode: bool):
    # Principal branch for complex work; sign-aware real root otherwise.
    if m == 1:
        return w
    if real_mode:
        if w >= 0.0:
            return w ** (1.0 / m)
        if m % 2 == 1:
            return -((-w) ** (1.0 / m))
        raise BranchError(
            "negative bracket under an even root order has no real branch; "
            "evaluate in complex mode"
        )
    return complex(w) ** (1.0 / m)


def _bracket(p: TemporalParams, t: float, real_mode: bool):
    m = p.n - 1
    if real_mode:
        ex = math.exp(-m * p.lin.real * t)
        denom = p.nonlin.real - p.c.real * ex
    else:
        ex = cmath.exp(-m * p.lin * t)
        denom = p.nonlin - p.c * ex
    if abs(denom) < POLE_EPS:
        raise PoleError(f"time factor has a pole near t = {t:g}")
    lin = p.lin.real if real_mode else p.lin
    return -lin / denom, (p.c.real if real_mode else p.c) * ex / denom


def f_closed_form(p: TemporalParams, t: float, real_mode: bool = False):
    """The closed-form time factor at t (principal branch).

    With c = 0 the factor is the steady state (-lin/nonlin)**(1/(n-1)),
    constant in t.  For real parameters with a positive bracket the
    result is real and positive in either mode.
    """
    if real_mode:
        _require_real(p)
    bracket, _ = _bracket(p, t, real_mode)
    return _root(bracket, p.n - 1, real_mode)


def f_derivative(p: TemporalParams, t: float, real_mode: bool = False):
    """Analytic d/dt of the closed form: (-lin*c*e / (nonlin - c*e)) * f."""
    if real_mode:
        _require_real(p)
    bracket, ce_over_denom = _bracket(p, t, real_mode)
    lin = p.lin.real if real_mode else p.lin
    return -lin * ce_over_denom * _root(bracket, p.n - 1, real_mode)


def ode_residual(p: TemporalParams, t: float, real_mode: bool = False):
    """f' - nonlin*f**n - lin*f; vanishes identically for the closed form."""
    f = f_closed_form(p, t, real_mode)
    fd = f_derivative(p, t, real_mode)
    if real_mode:
        return fd - p.nonlin.real * f**p.n - p.lin.real * f
    return fd - p.nonlin * f**p.n - p.lin * f


def c_from_initial(n: int, nonlin: complex, lin: complex, f0: complex) -> complex:
    """Trajectory constant giving f(0) = f0, inverted from the closed form.

    The round trip f_closed_form(t=0) == f0 holds exactly (to rounding)
    whenever f0 is the principal (n-1)-th root of its own power; other
    branch choices come back as the principal representative.
    """
    nonlin = _finite_complex(nonlin)
    lin = _finite_complex(lin)
    f0 = _finite_complex(f0)
    if f0 == 0:
        raise InvalidParamsError("initial value f0 must be nonzero")
    return nonlin + lin / f0 ** (n - 1)


def params_from_initial(
    n: int, nonlin: complex, lin: complex, f0: complex
) -> TemporalParams:
    return TemporalParams(n=n, nonlin=nonlin, lin=lin, c=c_from_initial(n, nonlin, lin, f0))


def pole_times(p: TemporalParams, t_max: float) -> tuple[float, ...]:
    """Real times in [0, t_max] where the bracket denominator vanishes.

    Solves c * exp(-(n-1)*lin*t) = nonlin over all logarithm branches and
    keeps the solutions with negligible imaginary part.
    """
    if p.c == 0:
        return ()
    m = p.n - 1
    base = cmath.log(p.nonlin / p.c)  # -m*lin*t = base + 2*pi*i*k
    k_span = int(math.ceil(abs(m * p.lin) * t_max / (2.0 * math.pi))) + 2
    out = []
    for k in range(-k_span, k_span + 1):
        t = -(base + 2.0j * math.pi * k) / (m * p.lin)
        if abs(t.imag) <= 1e-9 * max(1.0, abs(t.real)) and -1e-12 <= t.real <= t_max:
            out.append(t.real)
    return tuple(sorted(out))


@dataclass(frozen=True)
class ResidualBudget:
    """Auditable parts of the grid-residual tolerance budget.

    ``series_part`` is the exact truncation residual of the space factor
    (the full-length operator image minus eigenvalue times the series,
    evaluated on the grid) scaled by max |f|**n: this is the true
    residual the assembled solution carries before any stencil enters.
    ``temporal_part`` bounds the rounding of the time-factor identity,
    ``stencil_part`` is a Richardson estimate of the O(h^2) stencil error
    (doubled for safety), and ``rounding_part`` bounds the subtractive
    cancellation noise of the stencils at double precision.
    """

    series_part: float
    temporal_part: float
    stencil_part: float
    rounding_part: float

    @property
    def total(self) -> float:
        return self.series_part + self.temporal_part + self.stencil_part + self.rounding_part


@dataclass(frozen=True)
class GridSolution:
    """u(eta, t) = f(t) * Q(eta) sampled on a rectangle, with residuals."""

    eta_grid: tuple[float, ...]
    t_grid: tuple[float, ...]
    values: np.ndarray  # complex, shape (len(eta_grid), len(t_grid))
    residual_max: float
    tolerance_budget: float
    budget: ResidualBudget

    def __post_init__(self):
        if self.values.shape != (len(self.eta_grid), len(self.t_grid)):
            raise InvalidParamsError("values shape must match the grids")


def _validate_grid(name: str, grid, minimum: float) -> tuple[float, ...]:
    grid = tuple(float(g) for g in grid)
    if len(grid) < 3:
        raise InvalidParamsError(f"{name} needs at least 3 points")
    if any(not math.isfinite(g) for g in grid):
        raise InvalidParamsError(f"{name} must be finite")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidParamsError(f"{name} must be strictly ascending")
    if grid[0] < minimum:
        raise InvalidParamsError(f"{name} must start at or above {minimum}")
    return grid


def _truncation_residual(series: TruncatedSeries, ep: EigenParams) -> TruncatedSeries:
    # Full-length L[u] - eigenvalue*u of the truncated series taken as an
    # exact polynomial; coefficients through series.order - 2 vanish by
    # construction, the tail is the genuine truncation defect.
    op = OperatorParams(ep.n, ep.scale)
    image = apply_operator(series, op, exact=True)
    coeffs = list(image.coeffs)
    for i, c in enumerate(series.coeffs):
        coeffs[i] -= ep.eigenvalue * c
    return TruncatedSeries(series.center, tuple(coeffs))


def separable_solution(
    tp: TemporalParams,
    ep: EigenParams,
    op: OperatorParams,
    eta_grid,
    t_grid,
    order: int = 24,
) -> GridSolution:
    """Assemble u = f(t) * Q(eta) on the grid and audit its residual.

    The residual of  du/dt - lin*u - Laplacian_part(u**n)  is measured by
    second-order central stencils at every interior grid point (step
    1e-4 * max(1, |coordinate|)), with a printed tolerance budget built
    from the exact series truncation defect, the time-factor identity
    noise, a Richardson estimate of the stencil error and a rounding
    bound.  Requires tp.nonlin == ep.eigenvalue (the separation constant
    is shared), consistent exponents and scale, grids inside the trusted
    radius of the series, and a time grid clear of poles.
    """
    if tp.nonlin != complex(ep.eigenvalue):
        raise InconsistentParametersError(
            "temporal nonlinear coefficient must equal the eigenvalue "
            f"({tp.nonlin} vs {ep.eigenvalue})"
        )
    if not (tp.n == ep.n == op.n):
        raise InconsistentParametersError("exponent n must agree across parameter blocks")
    if op.scale != ep.scale:
        raise InconsistentParametersError("substitution scale must agree across parameter blocks")
    if order < 8:
        raise InvalidParamsError("order must be >= 8 (trusted-radius bookkeeping)")

    eta_grid = _validate_grid("eta_grid", eta_grid, minimum=1e-3)
    t_grid = _validate_grid("t_grid", t_grid, minimum=0.0)

    series = eigen_coefficients(ep, order)
    radius = radius_estimate(series)
    zs = [z_of_eta(op, e) for e in eta_grid]
    worst = max(abs(z - ep.center) for z in zs)
    if worst > radius:
        raise InvalidParamsError(
            f"eta grid reaches {worst:.6g} from the expansion center, outside "
            f"the trusted radius {radius:.6g}"
        )
    t_hi = t_grid[-1]
    poles = pole_times(tp, t_hi + 1.0)
    for t in t_grid:
        if any(abs(t - tpole) < 1e-3 * max(1.0, t_hi) for tpole in poles):
            raise PoleError(f"time grid touches a pole of the time factor near t = {t:g}")

    f_vals = [complex(f_closed_form(tp, t)) for t in t_grid]
    q_vals = [complex(series.eval(z)) for z in zs]
    values = np.array([[q * f for f in f_vals] for q in q_vals], dtype=complex)
    values.setflags(write=False)

    def u_of(eta: float, t: float) -> complex:
        return complex(f_closed_form(tp, t)) * complex(series.eval(op.scale * math.cosh(eta)))

    def residual_at(eta: float, t: float, h_scale: float) -> complex:
        h_eta = h_scale * max(1.0, abs(eta))
        h_t = h_scale * max(1.0, abs(t))
        du_dt = (u_of(eta, t + h_t) - u_of(eta, t - h_t)) / (2.0 * h_t)
        lap = hyperbolic_residual(lambda e: u_of(e, t), op, 0.0, eta, h_eta)
        return du_dt - tp.lin * u_of(eta, t) - lap

    res_max = 0.0
    stencil_est = 0.0
    for eta in eta_grid[1:-1]:
        for t in t_grid[1:-1]:
            r_h = residual_at(eta, t, 1e-4)
            r_h2 = residual_at(eta, t, 0.5e-4)
            res_max = max(res_max, abs(r_h))
            stencil_est = max(stencil_est, (4.0 / 3.0) * abs(r_h - r_h2))

    # Budget pieces (see ResidualBudget).
    trunc = _truncation_residual(series, ep)
    h_pad = 2e-4 * max(1.0, eta_grid[-1])
    z_probe = [op.scale * math.cosh(e + d) for e in eta_grid for d in (-h_pad, 0.0, h_pad)]
    f_pow_max = max(abs(f) ** tp.n for f in f_vals)
    series_part = f_pow_max * max(abs(trunc.eval(z)) for z in z_probe)
    q_max = max(abs(q) for q in q_vals)
    temporal_part = max(abs(ode_residual(tp, t)) for t in t_grid) * q_max
    u_scale = max(1.0, float(np.max(np.abs(values))))
    sinh_max = math.sinh(eta_grid[-1] + h_pad)
    eps = 2.2e-16
    rounding_part = 64.0 * eps * (u_scale**tp.n) * max(1.0, sinh_max) / (1e-4) ** 2 + 8.0 * eps * u_scale / 1e-4
    budget = ResidualBudget(
        series_part=series_part,
        temporal_part=temporal_part,
        stencil_part=2.0 * stencil_est,
        rounding_part=rounding_part,
    )
    return GridSolution(
        eta_grid=eta_grid,
        t_grid=t_grid,
        values=values,
        residual_max=res_max,
        tolerance_budget=budget.total,
        budget=budget,
    )
