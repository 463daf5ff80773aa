"""The substitution z = scale*cosh(eta) and the operator it induces.

On the positive eta axis the radial operator

    (1/sinh eta) d/deta [ sinh eta * d(u**n)/deta ]

turns, for composite functions u(z(eta)) with z = scale*cosh(eta), into
the polynomial-coefficient form

    L[u] = d/dz [ (z**2 - scale**2) * d(u**n)/dz ],

which is what this module applies to truncated series and polynomials.
It also maps z-domain results back to eta and offers a finite-difference
residual of the original eta-form for end-to-end cross-checks.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import InsufficientOrderError, InvalidParamsError, OutOfRadiusWarning, StepTooLargeError
from .series import EPS0, Scalar, TruncatedSeries

#: Guard below which |z**2 - scale**2| counts as sitting on the equation's
#: singular set z = +-scale.
EPS_Q = 1e-6


@dataclass(frozen=True)
class OperatorParams:
    """Exponent n >= 2 and the positive substitution scale (z(0) = scale)."""

    n: int
    scale: float

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 2:
            raise InvalidParamsError("exponent n must be an integer >= 2")
        if not math.isfinite(self.scale) or self.scale <= 0.0:
            raise InvalidParamsError("scale must be finite and > 0")
        object.__setattr__(self, "scale", float(self.scale))


def z_of_eta(p: OperatorParams, eta: float) -> float:
    """scale * cosh(eta); strictly increasing on eta >= 0, equals scale at 0."""
    if not math.isfinite(eta) or eta < 0.0:
        raise InvalidParamsError("eta must be finite and >= 0")
    return p.scale * math.cosh(eta)


def eta_of_z(p: OperatorParams, z: float) -> float:
    """Inverse of :func:`z_of_eta`: arccosh(z / scale), defined for z >= scale."""
    if not math.isfinite(z) or z < p.scale:
        raise InvalidParamsError(f"z must be >= scale ({p.scale}); got {z}")
    return math.acosh(z / p.scale)


def _power(u: TruncatedSeries, n: int, cap: int) -> TruncatedSeries:
    # Direct recurrence where the constant term allows it; otherwise fall
    # back to repeated Cauchy products, which need no division and agree
    # with the recurrence on every shared coefficient.
    if abs(u.coeffs[0]) >= EPS0:
        return u.pow(n, cap=cap)
    out = u
    for _ in range(n - 1):
        out = out.mul(u, cap=cap)
    return out.truncate(cap)


def apply_operator(
    u: TruncatedSeries, p: OperatorParams, exact: bool = False
) -> TruncatedSeries:
    """Apply L[u] = d/dz[(z**2 - scale**2) d(u**n)/dz] about u's center.

    The quadratic is re-expanded about the center a, with w = z - a:

        z**2 - scale**2 = (a**2 - scale**2) + 2*a*w + w**2.

    With ``exact=True`` the input is treated as an exact polynomial: the
    power is carried to full degree by repeated convolution (structurally
    free of trailing junk), and the result is the exact polynomial L[u]
    of degree ``n * deg(u)``.  In the default truncated mode the input
    must have order >= 2 and the result is returned through order
    ``u.order - 2``, the span its coefficients actually determine.

    At center 0 the output coefficients equal the closed form
    ``(i+1) * (i*b[i] - scale**2 * (i+2) * b[i+2])`` where b are the
    coefficients of u**n.
    """
    a = u.center
    q = TruncatedSeries(a, (a * a - p.scale * p.scale, 2.0 * a, 1.0))
    if exact:
        un = u
        for _ in range(p.n - 1):
            un = un.mul(u)
        return q.mul(un.derivative()).derivative()
    if u.order < 2:
        raise InsufficientOrderError(
            f"operator application needs order >= 2, got {u.order}"
        )
    un = _power(u, p.n, cap=u.order)
    res = q.mul(un.derivative()).derivative()
    return res.truncate(u.order - 2)


def eval_in_eta(
    u: TruncatedSeries,
    p: OperatorParams,
    eta: float,
    trusted_radius: float | None = None,
) -> Scalar:
    """Evaluate the z-domain series at z(eta) = scale*cosh(eta).

    When ``trusted_radius`` is given and |z(eta) - center| exceeds it, the
    value is still returned but an :class:`OutOfRadiusWarning` is issued
    so callers (e.g. the CLI) can surface untrusted rows.
    """
    z = z_of_eta(p, eta)
    if trusted_radius is not None and abs(z - u.center) > trusted_radius:
        warnings.warn(
            f"z(eta={eta:g}) = {z:.6g} lies {abs(z - u.center):.6g} from the "
            f"expansion center, outside the trusted radius {trusted_radius:.6g}",
            OutOfRadiusWarning,
            stacklevel=2,
        )
    return u.eval(z)


def default_fd_step(eta: float) -> float:
    """Central-difference step keeping O(h^2) error near 1e-10 on smooth data."""
    return 1e-5 * max(1.0, abs(eta))


def hyperbolic_residual(g, p: OperatorParams, eigenvalue: float, eta: float,
                        h: float | None = None) -> float:
    """Finite-difference residual of the original eta-form operator.

    Returns a central-difference approximation (error O(h^2)) of

        (1/sinh eta) d/deta [ sinh eta * d(g**n)/deta ] - eigenvalue * g(eta)

    for a plain callable ``g``.  ``g`` must be evaluable on
    [eta - 2h, eta + 2h]; eta = 0 is excluded because of the sinh in the
    denominator.
    """
    if h is None:
        h = default_fd_step(eta)
    if not (0.0 < h < eta):
        raise StepTooLargeError(f"need 0 < h < eta, got h={h}, eta={eta}")

    def flux(e: float) -> float:
        # sinh(e) * d(g**n)/deta at e, central difference
        return math.sinh(e) * (g(e + h) ** p.n - g(e - h) ** p.n) / (2.0 * h)

    lap = (flux(eta + h) - flux(eta - h)) / (2.0 * h) / math.sinh(eta)
    return lap - eigenvalue * g(eta)
