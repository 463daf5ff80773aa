"""Independent validation path: direct numerical integration.

Making the second derivative explicit, the eigenfunction equation is

    u'' = eigenvalue / (n * (z**2 - scale**2) * u**(n-2))
          - (n-1) * u'**2 / u
          - 2 * u' * z / (z**2 - scale**2),

a first-order system in (z, u, u1) once u1 = u'.  This module integrates
that system with an embedded Dormand-Prince 5(4) scheme written here in
full (PI step-size control, first-same-as-last stage reuse, cubic
Hermite dense output), so that the cross-check against the series
construction shares no code with it.

The right-hand side is singular where u = 0 or z = +-scale; integration
enforces floors |u| >= EPS0 and |z**2 - scale**2| >= EPS_Q and stops
with a guard termination reason instead of erroring, because a partial
trajectory is still useful for comparisons.
"""

from __future__ import annotations

import enum
import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .eigen import EigenParams, eigen_coefficients, radius_estimate
from .errors import (
    InvalidParamsError,
    RejectedInitialConditionError,
    SingularEvaluationError,
)
from .operator import EPS_Q
from .series import EPS0

# Dormand-Prince 5(4) tableau.  Row 7 of A is also the 5th-order weight
# vector (first-same-as-last); E is the difference between the 5th- and
# 4th-order weights, used for the embedded error estimate.
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

_SAFETY = 0.9
_ALPHA = 0.7 / 5.0  # PI controller: current-error exponent
_BETA = 0.4 / 5.0  # PI controller: previous-error exponent
_FAC_MIN = 0.2
_FAC_MAX = 5.0
_H_MIN = 1e-14

DEFAULT_TOL = (1e-12, 1e-10)


class Termination(enum.Enum):
    REACHED_END = "reached_end"
    GUARD_U_ZERO = "guard_u_zero"
    GUARD_SINGULAR_Z = "guard_singular_z"
    STEP_UNDERFLOW = "step_underflow"


class CauchyState(NamedTuple):
    """A point of the first-order system: position and (u, u')."""

    tau: float
    u: float
    u1: float


def rhs(state: CauchyState, p: EigenParams) -> tuple[float, float, float]:
    """(1, u1, u'') with u'' as in the explicit second-order form.

    Raises :class:`SingularEvaluationError` naming the violated guard if
    the state sits inside a singularity floor.  The u**(n-2) factor is an
    integer power, so n = 2 contributes exactly 1.0 with no 0**0-style
    evaluation.
    """
    tau, u, u1 = state
    q = tau * tau - p.scale * p.scale
    if abs(u) < EPS0:
        raise SingularEvaluationError(f"|u| = {abs(u):.3e} under guard {EPS0:.0e}", "u")
    if abs(q) < EPS_Q:
        raise SingularEvaluationError(
            f"|z**2 - scale**2| = {abs(q):.3e} under guard {EPS_Q:.0e}", "q"
        )
    accel = (
        p.eigenvalue / (p.n * q * u ** (p.n - 2))
        - u1 * u1 * (p.n - 1) / u
        - 2.0 * u1 * tau / q
    )
    return (1.0, u1, accel)


@dataclass(frozen=True)
class Trajectory:
    """Accepted-step data of one integration plus dense evaluation.

    ``samples`` are (z, u, u1) triples, strictly monotone in z: the
    caller-requested points when ``sample_at`` was given, otherwise the
    accepted steps.  ``knots`` always holds the accepted steps as
    (z, u, u1, u1') rows and powers :meth:`eval`.
    """

    samples: tuple[tuple[float, float, float], ...]
    tolerances: tuple[float, float]
    termination: Termination
    knots: tuple[tuple[float, float, float, float], ...]

    @property
    def z_first(self) -> float:
        return self.knots[0][0]

    @property
    def z_last(self) -> float:
        return self.knots[-1][0]

    def covers(self, z: float) -> bool:
        lo, hi = sorted((self.z_first, self.z_last))
        return lo <= z <= hi

    def eval(self, z: float) -> tuple[float, float]:
        """(u, u1) at z by cubic Hermite interpolation between knots.

        u uses (u, u1) endpoint data, u1 uses (u1, u1') endpoint data;
        both interpolants are 4th-order accurate in the step size, ample
        for 1e-8-level comparisons at oracle tolerances.
        """
        if not self.covers(z):
            raise InvalidParamsError(
                f"z = {z} outside the integrated range "
                f"[{self.z_first}, {self.z_last}]"
            )
        zs = [k[0] for k in self.knots]
        reversed_grid = zs[0] > zs[-1]
        if reversed_grid:
            zs = zs[::-1]
        j = bisect_left(zs, z)
        j = min(max(j, 1), len(zs) - 1)
        if reversed_grid:
            j = len(zs) - 1 - j
            za, ua, u1a, da = self.knots[j]
            zb, ub, u1b, db = self.knots[j + 1]
        else:
            za, ua, u1a, da = self.knots[j - 1]
            zb, ub, u1b, db = self.knots[j]
        h = zb - za
        if h == 0.0:
            return ua, u1a
        s = (z - za) / h
        h00 = (1.0 + 2.0 * s) * (1.0 - s) ** 2
        h10 = s * (1.0 - s) ** 2
        h01 = s * s * (3.0 - 2.0 * s)
        h11 = s * s * (s - 1.0)
        u = h00 * ua + h10 * h * u1a + h01 * ub + h11 * h * u1b
        u1 = h00 * u1a + h10 * h * da + h01 * u1b + h11 * h * db
        return u, u1


def _error_norm(err, y_old, y_new, abs_tol, rel_tol) -> float:
    acc = 0.0
    for e, a, b in zip(err, y_old, y_new):
        sc = abs_tol + rel_tol * max(abs(a), abs(b))
        acc += (e / sc) ** 2
    return math.sqrt(acc / len(err))


def integrate(
    p: EigenParams,
    init: tuple[float, float, float],
    z_end: float,
    tol: tuple[float, float] = DEFAULT_TOL,
    sample_at: Iterable[float] | None = None,
) -> Trajectory:
    """Integrate the first-order system from init = (z0, u0, u1_0) to z_end.

    Stops early (without raising) when a continuation would cross a
    singularity floor or when the adaptive step underflows 1e-14; the
    termination reason records which.  An initial condition already
    inside a floor is rejected outright.
    """
    z0, u0, u1_0 = (float(v) for v in init)
    abs_tol, rel_tol = tol
    if z0 == z_end:
        raise InvalidParamsError("z_end must differ from the initial point")
    try:
        f = rhs(CauchyState(z0, u0, u1_0), p)
    except SingularEvaluationError as exc:
        raise RejectedInitialConditionError(
            f"initial condition violates the '{exc.guard}' guard"
        ) from exc

    direction = 1.0 if z_end > z0 else -1.0
    h = direction * 1e-4 * max(1.0, abs(z0))
    z, y = z0, (u0, u1_0)
    dy = (f[1], f[2])
    knots = [(z, y[0], y[1], f[2])]
    err_prev = 1.0
    termination = Termination.REACHED_END
    guard_hit: str | None = None

    while True:
        if direction * (z - z_end) >= 0.0:
            break
        if abs(h) > abs(z_end - z):
            h = z_end - z
        if abs(h) < _H_MIN:
            termination = {
                "u": Termination.GUARD_U_ZERO,
                "q": Termination.GUARD_SINGULAR_Z,
                None: Termination.STEP_UNDERFLOW,
            }[guard_hit]
            break

        # Seven stages; k[0] reuses the derivative at the step start.
        k = [(dy[0], dy[1])]
        failed_guard = None
        for s in range(1, 7):
            zi = z + _C[s] * h
            yi0 = y[0] + h * sum(_A[s][j] * k[j][0] for j in range(s))
            yi1 = y[1] + h * sum(_A[s][j] * k[j][1] for j in range(s))
            try:
                fi = rhs(CauchyState(zi, yi0, yi1), p)
            except SingularEvaluationError as exc:
                failed_guard = exc.guard
                break
            k.append((fi[1], fi[2]))
        if failed_guard is not None:
            guard_hit = failed_guard
            h *= 0.5
            continue

        y_new = (
            y[0] + h * sum(_A[6][j] * k[j][0] for j in range(6)),
            y[1] + h * sum(_A[6][j] * k[j][1] for j in range(6)),
        )
        err_vec = (
            h * sum(_E[j] * k[j][0] for j in range(7)),
            h * sum(_E[j] * k[j][1] for j in range(7)),
        )
        err = _error_norm(err_vec, y, y_new, abs_tol, rel_tol)

        if err <= 1.0:
            z_new = z + h
            dy_new = (k[6][0], k[6][1])  # first-same-as-last
            z, y, dy = z_new, y_new, dy_new
            knots.append((z, y[0], y[1], dy[1]))
            guard_hit = None
            factor = _SAFETY * (err or 1e-10) ** (-_ALPHA) * err_prev**_BETA
            err_prev = max(err, 1e-10)
            h *= min(_FAC_MAX, max(_FAC_MIN, factor))
        else:
            factor = _SAFETY * err ** (-_ALPHA)
            h *= min(1.0, max(_FAC_MIN, factor))

    traj = Trajectory(
        samples=tuple((zk, uk, u1k) for zk, uk, u1k, _ in knots),
        tolerances=(abs_tol, rel_tol),
        termination=termination,
        knots=tuple(knots),
    )
    if sample_at is not None:
        pts = [zp for zp in sample_at if traj.covers(zp)]
        samples = tuple((zp, *traj.eval(zp)) for zp in pts)
        traj = Trajectory(
            samples=samples,
            tolerances=(abs_tol, rel_tol),
            termination=termination,
            knots=traj.knots,
        )
    return traj


#: Fraction of the distance to the nearest equation singularity that the
#: comparison interval may occupy.  The truncated series generically has
#: its convergence boundary on a singular point z = +-scale, and the
#: consecutive-ratio radius estimate can overshoot when both points
#: contribute (magnitude zigzag), so the interval keeps a firm margin
#: from them; the integration also degrades in that neighbourhood.
GUARD_FRACTION = 0.6


@dataclass(frozen=True)
class OracleReport:
    """Outcome of one series-versus-integration comparison."""

    max_dev_u: float
    max_dev_u1: float
    half_width: float
    radius: float
    points_requested: int
    points_compared: int
    terminations: tuple[str, str]


def compare_series_oracle(p: EigenParams, order: int, n_samples: int) -> OracleReport:
    """Compare the series solution against fresh integrations, both ways.

    The comparison runs over ``n_samples`` evenly spaced points in
    [center - hw, center + hw] where hw = min(0.5 * radius_estimate,
    GUARD_FRACTION * distance to the nearest singular point).  Both
    trajectories start from (center, u0, u1), i.e. the same data that
    seeds the series; local uniqueness makes any gap a defect of one of
    the two constructions.  Points past an early guard termination are
    skipped and accounted in the report.

    Integration runs tighter than the solver defaults so that the dense
    output between accepted steps stays well below the 1e-8 level the
    comparison is expected to resolve.
    """
    if n_samples < 3:
        raise InvalidParamsError("need at least 3 sample points")
    series = eigen_coefficients(p, order)
    deriv = series.derivative()
    radius = radius_estimate(series)
    d_sing = min(abs(p.center - p.scale), abs(p.center + p.scale))
    half_width = min(0.5 * radius, GUARD_FRACTION * d_sing)
    if half_width <= 0.0:
        raise InvalidParamsError("empty comparison interval")

    step = 2.0 * half_width / (n_samples - 1)
    points = [p.center - half_width + i * step for i in range(n_samples)]
    left = [z for z in points if z < p.center]
    right = [z for z in points if z > p.center]

    init = (p.center, p.u0, p.u1)
    tight = (1e-13, 1e-12)
    traj_r = integrate(p, init, p.center + half_width, tol=tight, sample_at=right)
    traj_l = integrate(p, init, p.center - half_width, tol=tight, sample_at=left[::-1])

    max_u = abs(series.eval(p.center) - p.u0)
    max_u1 = abs(deriv.eval(p.center) - p.u1)
    compared = 1
    for z, u, u1 in traj_r.samples + traj_l.samples:
        max_u = max(max_u, abs(series.eval(z) - u))
        max_u1 = max(max_u1, abs(deriv.eval(z) - u1))
        compared += 1
    return OracleReport(
        max_dev_u=max_u,
        max_dev_u1=max_u1,
        half_width=half_width,
        radius=radius,
        points_requested=n_samples,
        points_compared=compared,
        terminations=(traj_l.termination.value, traj_r.termination.value),
    )
