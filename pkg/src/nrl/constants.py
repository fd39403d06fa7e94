"""Pinned mathematical constants and an empirical Mertens-constant fit."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum

import numpy as np

from .errbound import ErrBound
from .primes import first_primes


class Source(Enum):
    LITERATURE_PINNED = "literature-pinned"
    COMPUTED = "computed"


@dataclass(frozen=True)
class NamedConstant:
    name: str
    value: Decimal
    radius: Decimal
    source: Source

    def bound(self) -> ErrBound:
        """The constant as a binary64 ErrBound (conversion error included)."""
        return ErrBound.from_decimal(self.value, self.radius)

    def __str__(self) -> str:
        return f"{self.name} = {self.value} ± {self.radius:.0E} ({self.source.value})"


# 50 significant digits; the trailing digit is truncated, not rounded,
# hence the 1e-50 radius.
_PINNED = {
    "gamma": "0.57721566490153286060651209008240243104215933593992",
    "exp_gamma": "1.7810724179901979852365041031071795491696452143034",
    "mertens": "0.26149721284764278375542683860869585905156664826120",
}
_PIN_RADIUS = Decimal("1e-49")


class UnknownConstantError(KeyError):
    pass


def get_constant(name: str) -> NamedConstant:
    try:
        digits = _PINNED[name]
    except KeyError:
        raise UnknownConstantError(
            f"unknown constant {name!r}; expected one of {sorted(_PINNED)}") from None
    return NamedConstant(name, Decimal(digits), _PIN_RADIUS, Source.LITERATURE_PINNED)


GAMMA = get_constant("gamma").bound()
EXP_GAMMA = get_constant("exp_gamma").bound()
MERTENS = get_constant("mertens").bound()


# -- Mertens estimate -----------------------------------------------------

class InsufficientSamplesError(ValueError):
    pass


def geometric_grid(lo: int, hi: int, per_decade: int = 8) -> list[int]:
    """Integers from lo to hi (both included) spaced geometrically."""
    if lo < 1 or hi < lo:
        raise ValueError(f"bad grid bounds {lo}..{hi}")
    if hi == lo:
        return [lo]
    steps = max(1, round(math.log10(hi / lo) * per_decade))
    pts = {round(lo * (hi / lo) ** (i / steps)) for i in range(steps + 1)}
    return sorted(pts | {lo, hi})


def reciprocal_prime_sums(ms) -> tuple[np.ndarray, np.ndarray]:
    """(p_m, sum_{i<=m} 1/p_i) for each m in ms (ascending)."""
    ms = np.asarray(ms, dtype=np.int64)
    ps = first_primes(int(ms.max()))
    partial = np.cumsum(1.0 / ps)
    return ps[ms - 1], partial[ms - 1]


def fit_intercept(x: np.ndarray, y: np.ndarray, degree: int = 1) -> ErrBound:
    """Least-squares intercept of y ~ a + b x (+ c x^2); radius from residuals.

    The radius is a heuristic: max(|residual|) plus the intercept's standard
    error. It is not a rigorous bound.
    """
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    if len(y) < 4:
        raise InsufficientSamplesError(f"need >= 4 samples, got {len(y)}")
    if np.ptp(y) == 0:
        return ErrBound(float(y[0]), 0.0)
    A = np.vander(x, degree + 1, increasing=True)
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    dof = max(len(y) - A.shape[1], 1)
    s2 = float(resid @ resid) / dof
    cov = s2 * np.linalg.pinv(A.T @ A)
    radius = float(np.max(np.abs(resid))) + math.sqrt(max(cov[0, 0], 0.0))
    return ErrBound(float(coef[0]), radius)


def mertens_grid(m_max: int, per_decade: int = 8) -> list[int]:
    return geometric_grid(max(10, m_max // 100), m_max, per_decade)


def estimate_mertens(m_max: int, *, per_decade: int = 8,
                     quadratic: bool = False) -> ErrBound:
    """Fit sum 1/p_i - log log p_m ~ a + b/log p_m over the top two decades."""
    if m_max < 10:
        raise ValueError("estimate_mertens needs m_max >= 10")
    grid = mertens_grid(m_max, per_decade)
    if len(grid) < 4:
        raise InsufficientSamplesError(f"grid {grid} has fewer than 4 points")
    p, s = reciprocal_prime_sums(grid)
    logp = np.log(p.astype(float))
    return fit_intercept(1.0 / logp, s - np.log(logp), 2 if quadratic else 1)
