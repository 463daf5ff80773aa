"""Truncated power series about a fixed expansion point.

A :class:`TruncatedSeries` holds finitely many Taylor coefficients
``c[0] .. c[N]`` of a function about ``center``; ``c[i]`` multiplies
``(z - center)**i``.  Nothing is implied about orders above ``N``: the
arithmetic here never fabricates coefficients that the inputs do not
determine, so order bookkeeping stays honest through long pipelines.

Coefficients are IEEE doubles, or complex pairs of doubles when any
input coefficient is complex; every operation is generic over the two.
All values are immutable and all operations are pure functions, so the
module is safe for unrestricted concurrent use.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import (
    CenterMismatchError,
    InsufficientOrderError,
    NearZeroConstantTermError,
)

#: Guard below which a constant term is treated as zero wherever a
#: recurrence needs to divide by it.
EPS0 = 1e-8

Scalar = complex | float


def _is_finite(x: Scalar) -> bool:
    if isinstance(x, complex):
        return cmath.isfinite(x)
    return math.isfinite(x)


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients ``c[0] .. c[N]`` of an expansion about ``center``."""

    center: float
    coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise ValueError("a series needs at least one coefficient")
        if isinstance(self.center, complex) or not math.isfinite(float(self.center)):
            raise ValueError("center must be a finite real number")
        if any(not _is_finite(c) for c in coeffs):
            raise ValueError("coefficients must all be finite")
        cast = complex if any(isinstance(c, complex) for c in coeffs) else float
        object.__setattr__(self, "center", float(self.center))
        object.__setattr__(self, "coeffs", tuple(cast(c) for c in coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_complex(self) -> bool:
        return bool(self.coeffs) and isinstance(self.coeffs[0], complex)

    def _check_center(self, other: "TruncatedSeries") -> None:
        if self.center != other.center:
            raise CenterMismatchError(
                f"series centers differ: {self.center} vs {other.center}"
            )

    # -- arithmetic ---------------------------------------------------

    def add(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Coefficientwise sum, truncated to the shorter reliable length."""
        self._check_center(other)
        return TruncatedSeries(
            self.center, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def sub(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_center(other)
        return TruncatedSeries(
            self.center, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def scale(self, alpha: Scalar) -> "TruncatedSeries":
        if not _is_finite(alpha):
            raise ValueError("scale factor must be finite")
        return TruncatedSeries(self.center, tuple(alpha * c for c in self.coeffs))

    def mul(self, other: "TruncatedSeries", cap: int | None = None) -> "TruncatedSeries":
        """Cauchy product through order ``min(self.order + other.order, cap)``.

        Convolution sums run over ascending k with plain accumulation;
        orders stay small enough at desk scale that compensated summation
        is not needed (revisit if orders grow past a few hundred).
        """
        self._check_center(other)
        top = self.order + other.order
        if cap is not None:
            top = min(top, cap)
        a, b = self.coeffs, other.coeffs
        out = []
        for i in range(top + 1):
            acc = 0.0
            k_lo = max(0, i - other.order)
            k_hi = min(i, self.order)
            for k in range(k_lo, k_hi + 1):
                acc += a[k] * b[i - k]
            out.append(acc)
        return TruncatedSeries(self.center, tuple(out))

    def pow(self, n: int, cap: int | None = None) -> "TruncatedSeries":
        """Integer power through order ``cap`` via the direct recurrence.

        Writing ``self**n = sum b[i] w**i`` with ``a = self.coeffs``, the
        coefficients satisfy ``b[0] = a[0]**n`` and, for i >= 1,

            b[i] = (1 / (i * a[0])) * sum_{k=1..i} (k*(n+1) - i) * a[k] * b[i-k],

        which costs O(cap^2) instead of the O(n * cap^2) of repeated
        products.  Requires ``|a[0]| >= EPS0`` since every step divides
        by the constant term.  ``cap`` defaults to ``self.order``, the
        span on which the power is fully determined by the input.
        """
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        if cap is None:
            cap = self.order
        if n == 0:
            # Documented convention: s**0 == 1.
            one = 1.0 + 0.0j if self.is_complex else 1.0
            return TruncatedSeries(self.center, (one,))
        if n == 1:
            return TruncatedSeries(self.center, self.coeffs[: cap + 1])
        a = self.coeffs
        a0 = a[0]
        if abs(a0) < EPS0:
            raise NearZeroConstantTermError(
                f"|constant term| = {abs(a0):.3e} is below the {EPS0:.0e} guard"
            )
        b: list[Scalar] = [a0**n]
        for i in range(1, cap + 1):
            acc = 0.0
            for k in range(1, min(i, self.order) + 1):
                ak = a[k]
                if ak != 0.0:
                    acc += (k * (n + 1) - i) * ak * b[i - k]
            b.append(acc / (i * a0))
        return TruncatedSeries(self.center, tuple(b))

    def derivative(self) -> "TruncatedSeries":
        """Term-by-term derivative; one order shorter, same center.

        The derivative of an order-0 series is the zero series [0]
        (documented, not an error).
        """
        if self.order == 0:
            zero = 0.0 + 0.0j if self.is_complex else 0.0
            return TruncatedSeries(self.center, (zero,))
        return TruncatedSeries(
            self.center, tuple(i * c for i, c in enumerate(self.coeffs) if i > 0)
        )

    def eval(self, z: Scalar) -> Scalar:
        """Horner evaluation of ``sum c[i] * (z - center)**i``.

        The evaluation order (highest coefficient first) is fixed, so
        results are bitwise reproducible for identical inputs.
        """
        if not _is_finite(z):
            raise ValueError("evaluation point must be finite")
        w = z - self.center
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * w + c
        return acc

    def truncate(self, order: int) -> "TruncatedSeries":
        """Drop coefficients above ``order``."""
        if order < 0:
            raise InsufficientOrderError("cannot truncate below order 0")
        if order >= self.order:
            return self
        return TruncatedSeries(self.center, self.coeffs[: order + 1])

    # -- operator sugar -----------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self.add(other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self.sub(other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.mul(other)
        return self.scale(other)

    __rmul__ = __mul__

    def __neg__(self) -> "TruncatedSeries":
        return self.scale(-1.0)
