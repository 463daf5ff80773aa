"""No polynomial is an eigenfunction: the degree and leading-coefficient laws.

For a degree-m polynomial P (m >= 1) and exponent n >= 2,

    deg L[P] = n*m        and        lead(L[P]) = n*m*(n*m + 1) * lead(P)**n,

so the coefficient of degree n*m in L[P] - eigenvalue*P equals the same
nonzero number (n*m > m), and no polynomial can satisfy the eigenvalue
equation.  This module makes those laws executable on exact polynomials:
all arithmetic runs full-length with no truncation caps, because the
assertions are about exact degrees and a truncated computation would
pass vacuously.

Sweeps stay within degree 5 and n <= 3 so the (n*m)!-flavoured
coefficient growth remains far inside double-precision exactness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParamsError
from .operator import OperatorParams, apply_operator
from .series import Scalar, TruncatedSeries


@dataclass(frozen=True)
class Poly:
    """Exact polynomial c[0] + c[1] z + ... + c[m] z**m with c[m] != 0.

    Shares its coefficient layout with a center-0 series but adds the
    exactness contract: the trailing coefficient is the true leading
    coefficient, so ``degree`` is meaningful.
    """

    coeffs: tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if len(coeffs) < 2:
            raise InvalidParamsError("polynomial degree must be >= 1")
        if coeffs[-1] == 0.0:
            raise InvalidParamsError("leading coefficient must be nonzero")
        if any(not math.isfinite(c) for c in coeffs):
            raise InvalidParamsError("coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def as_series(self) -> TruncatedSeries:
        return TruncatedSeries(0.0, self.coeffs)


def leading_coeff(p: Poly) -> float:
    return p.coeffs[-1]


def _true_degree(coeffs: tuple[Scalar, ...]) -> int:
    # Exact polynomial pipelines cannot leave trailing junk, but strip
    # exact zeros defensively before reporting a degree.
    d = len(coeffs) - 1
    while d > 0 and coeffs[d] == 0.0:
        d -= 1
    return d


def _operator_poly(p: Poly, params: OperatorParams) -> TruncatedSeries:
    return apply_operator(p.as_series(), params, exact=True)


def operator_degree_law(p: Poly, params: OperatorParams) -> tuple[int, int]:
    """(computed degree of L[P], predicted n*m); the law says they are equal."""
    image = _operator_poly(p, params)
    return _true_degree(image.coeffs), params.n * p.degree


def leading_coeff_law(p: Poly, params: OperatorParams) -> tuple[float, float]:
    """(leading coefficient of L[P], n*m*(n*m+1)*lead(P)**n).

    The right-hand side follows from lead(Q*Q') = lead(Q)*lead(Q') applied
    through the power, the derivative, the quadratic factor and the outer
    derivative; the law says the two sides agree to rounding.
    """
    image = _operator_poly(p, params)
    nm = params.n * p.degree
    return image.coeffs[nm], nm * (nm + 1) * leading_coeff(p) ** params.n


def nonexistence_witness(p: Poly, params: OperatorParams, eigenvalue: float) -> float:
    """Coefficient of degree n*m in L[P] - eigenvalue*P.

    Since n*m exceeds m, the eigenvalue term cannot reach that degree and
    the coefficient equals lead(L[P]) = n*m*(n*m+1)*lead(P)**n != 0: a
    polynomial candidate always leaves this nonzero obstruction behind.
    """
    if eigenvalue == 0.0:
        raise InvalidParamsError("witness is defined for a nonzero eigenvalue")
    image = _operator_poly(p, params)
    nm = params.n * p.degree
    witness = image.coeffs[nm]
    if nm <= p.degree:
        # Unreachable for n >= 2, kept as a tripwire.
        witness -= eigenvalue * p.coeffs[nm]
    return witness
