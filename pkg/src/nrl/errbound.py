"""Floating-point values carrying a rigorous absolute-error radius.

Every quantity that ends up in an inequality verdict is an ``ErrBound``:
a binary64 ``value`` and a ``radius`` such that the exact mathematical
quantity lies in ``[value - radius, value + radius]``.

Assumptions behind the radii:

* IEEE-754 binary64 with round-to-nearest, unit roundoff ``U = 2**-53``.
* ``math.log``/``math.log1p``/``math.exp`` are accurate to ``LIBM_ULPS`` ulp.
* The radius itself is computed in floating point and then inflated by
  ``_up`` so that its own rounding cannot shrink it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from fractions import Fraction

U = 2.0**-53
LIBM_ULPS = 2
# numpy's vectorised transcendental loops are looser than libm
NUMPY_ULPS = 4


def _up(x: float) -> float:
    """Round a non-negative radius upwards by a few ulps."""
    if x == 0.0 or math.isinf(x):
        return x
    return math.nextafter(x * (1.0 + 4 * U), math.inf)


def ulp_bound(x: float, ulps: int = 1) -> float:
    """Upper bound on ``ulps`` units in the last place of ``x``."""
    return ulps * (2.0 * U * abs(x) + 5e-324)


class Sign(Enum):
    POSITIVE = 1
    NEGATIVE = -1
    UNKNOWN = 0


@dataclass(frozen=True)
class ErrBound:
    value: float
    radius: float = 0.0

    def __post_init__(self):
        if not self.radius >= 0.0:
            raise ValueError(f"radius must be non-negative, got {self.radius!r}")

    # constructors -------------------------------------------------------

    @classmethod
    def exact(cls, x: int | Fraction | float) -> "ErrBound":
        """Round an exact rational to binary64, recording the rounding."""
        v = float(x)
        if isinstance(x, float) or Fraction(v) == Fraction(x):
            return cls(v, 0.0)
        return cls(v, _up(abs(float(Fraction(x) - Fraction(v)))))

    @classmethod
    def from_decimal(cls, d: Decimal, radius: Decimal = Decimal(0)) -> "ErrBound":
        v = float(d)
        err = abs(Fraction(v) - Fraction(d)) + Fraction(radius)
        return cls(v, _up(float(err)))

    # interval views ------------------------------------------------------

    @property
    def lo(self) -> float:
        """Lower end, rounded outwards."""
        lo = self.value - self.radius
        return math.nextafter(lo, -math.inf) if self.radius else lo

    @property
    def hi(self) -> float:
        hi = self.value + self.radius
        return math.nextafter(hi, math.inf) if self.radius else hi

    def sign(self) -> Sign:
        # a rounded difference keeps the sign of the exact one
        if self.value - self.radius > 0:
            return Sign.POSITIVE
        if self.value + self.radius < 0:
            return Sign.NEGATIVE
        return Sign.UNKNOWN

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "ErrBound") -> bool:
        return abs(self.value - other.value) <= _up(self.radius + other.radius)

    # arithmetic -----------------------------------------------------------

    def __neg__(self) -> "ErrBound":
        return ErrBound(-self.value, self.radius)

    def __add__(self, other) -> "ErrBound":
        other = _coerce(other)
        v = self.value + other.value
        return ErrBound(v, _up(self.radius + other.radius + ulp_bound(v)))

    __radd__ = __add__

    def __sub__(self, other) -> "ErrBound":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "ErrBound":
        return _coerce(other) - self

    def __mul__(self, other) -> "ErrBound":
        other = _coerce(other)
        v = self.value * other.value
        r = (abs(self.value) * other.radius + abs(other.value) * self.radius
             + self.radius * other.radius + ulp_bound(v))
        return ErrBound(v, _up(r))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ErrBound":
        other = _coerce(other)
        denom_lo = abs(other.value) - other.radius
        if denom_lo <= 0:
            raise ZeroDivisionError("divisor interval contains zero")
        v = self.value / other.value
        r = (self.radius + abs(v) * other.radius) / denom_lo + ulp_bound(v)
        return ErrBound(v, _up(r))

    def __str__(self) -> str:
        return f"{self.value!r} ± {self.radius:.3g}"


def _coerce(x) -> ErrBound:
    if isinstance(x, ErrBound):
        return x
    return ErrBound.exact(x)


def log(x: ErrBound) -> ErrBound:
    """Natural log; the argument interval must be strictly positive."""
    if x.lo <= 0:
        raise ValueError(f"log of interval not bounded away from zero: {x}")
    v = math.log(x.value)
    # mean value theorem over [lo, hi]
    r = x.radius / x.lo + ulp_bound(v, LIBM_ULPS)
    return ErrBound(v, _up(r))


def log1p(x: ErrBound) -> ErrBound:
    if x.lo <= -1:
        raise ValueError(f"log1p of interval reaching -1: {x}")
    v = math.log1p(x.value)
    r = x.radius / (1.0 + x.lo) + ulp_bound(v, LIBM_ULPS)
    return ErrBound(v, _up(r))


def exp(x: ErrBound) -> ErrBound:
    v = math.exp(x.value)
    if not x.radius:
        return ErrBound(v, _up(ulp_bound(v, LIBM_ULPS)))
    # exp is convex: the upper side is the wider one
    top = math.exp(x.hi)
    r = (top - v) + ulp_bound(top, LIBM_ULPS) + ulp_bound(v, LIBM_ULPS)
    return ErrBound(v, _up(r + 2 * U * abs(r)))


def log_int(n: int) -> ErrBound:
    """log of a positive integer of any size."""
    if n < 1:
        raise ValueError("log_int needs n >= 1")
    v = math.log(n)
    r = ulp_bound(v, LIBM_ULPS)
    if n >= 2**53:
        # float(n) or the big-int path may round the argument first
        r += 2 * U
    return ErrBound(v, _up(r))


class CompensatedSum:
    """Streaming Kahan summation of non-negative terms with an error radius.

    ``per_term_rel`` is the relative error (in units of ``U``) already
    present in each term before it is added. The returned radius is

        (n + per_term_rel) * U * sum|x_i|   (+ carried term radii)

    which dominates the compensated-summation bound for any ``n >= 1``.
    """

    __slots__ = ("total", "comp", "abs_total", "n", "per_term_rel")

    def __init__(self, per_term_rel: float = 0.0):
        self.total = 0.0
        self.comp = 0.0
        self.abs_total = 0.0
        self.n = 0
        self.per_term_rel = float(per_term_rel)

    def add(self, x: float) -> None:
        y = x - self.comp
        t = self.total + y
        self.comp = (t - self.total) - y
        self.total = t
        self.abs_total += abs(x)
        self.n += 1

    def merge(self, other: "CompensatedSum") -> None:
        """Fold another accumulator in; apply in ascending segment order."""
        self.add(other.total - other.comp)
        # add() counted one term; count the other side's terms instead
        self.n += other.n - 1
        self.abs_total += other.abs_total - abs(other.total - other.comp)

    def bound(self) -> ErrBound:
        if self.n == 0:
            return ErrBound(0.0, 0.0)
        k = max(self.n, 2) + self.per_term_rel
        mag = self.abs_total * (1.0 + 2 * self.n * U)
        return ErrBound(self.total, _up(k * U * mag))

    def state(self) -> dict:
        return {"total": repr(self.total), "comp": repr(self.comp),
                "abs_total": repr(self.abs_total), "n": self.n,
                "per_term_rel": repr(self.per_term_rel)}

    @classmethod
    def from_state(cls, st: dict) -> "CompensatedSum":
        acc = cls(float(st["per_term_rel"]))
        acc.total = float(st["total"])
        acc.comp = float(st["comp"])
        acc.abs_total = float(st["abs_total"])
        acc.n = int(st["n"])
        return acc
