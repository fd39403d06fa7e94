"""Prime generation: segmented sieve, nth prime, Chebyshev theta, primorials.

The sieve stores odd numbers only, one byte per candidate, in segments of
``segment_size`` integers. Base primes up to sqrt(hi) come from a plain
sieve and are cached.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errbound import LIBM_ULPS, CompensatedSum, ErrBound

DEFAULT_CEILING = 2**40
DEFAULT_SEGMENT = 2**20


class PrimeRangeError(ValueError):
    """Requested range is invalid or above the configured ceiling."""


@dataclass
class PrimeTable:
    lo: int
    hi: int
    primes: np.ndarray
    count_before_lo: int | None = None

    def __len__(self) -> int:
        return len(self.primes)

    def tolist(self) -> list[int]:
        return [int(p) for p in self.primes]


def simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p::2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


_base_cache = np.zeros(0, dtype=np.int64)
_base_limit = 1


def _base_primes(limit: int) -> np.ndarray:
    global _base_cache, _base_limit
    if limit > _base_limit:
        _base_limit = max(limit, 2 * _base_limit, 1 << 16)
        _base_cache = simple_sieve(_base_limit)
    return _base_cache[: np.searchsorted(_base_cache, limit, side="right")]


def _check_range(lo: int, hi: int, ceiling: int) -> None:
    if not (0 <= lo < hi):
        raise PrimeRangeError(f"invalid range [{lo}, {hi})")
    if hi > ceiling:
        raise PrimeRangeError(f"hi={hi} exceeds ceiling {ceiling}")


def _sieve_block(lo: int, hi: int) -> np.ndarray:
    """Primes in [lo, hi) via an odd-only mask; no bounds checks."""
    out = []
    if lo <= 2 < hi:
        out.append(np.array([2], dtype=np.int64))
    start = max(lo, 3) | 1
    if start >= hi:
        return out[0] if out else np.zeros(0, dtype=np.int64)
    n_odd = (hi - start + 1) // 2
    mask = np.ones(n_odd, dtype=bool)
    for p in _base_primes(math.isqrt(hi - 1))[1:]:
        p = int(p)
        first = max(p * p, ((start + p - 1) // p) * p)
        if first % 2 == 0:
            first += p
        if first >= hi:
            continue
        mask[(first - start) // 2::p] = False
    out.append(start + 2 * np.flatnonzero(mask).astype(np.int64))
    return np.concatenate(out) if len(out) > 1 else out[0]


def sieve_segment(lo: int, hi: int, *, ceiling: int = DEFAULT_CEILING,
                  segment_size: int = DEFAULT_SEGMENT,
                  count_before_lo: int | None = None) -> PrimeTable:
    """Exactly the primes in [lo, hi), sieved in bounded-memory segments."""
    _check_range(lo, hi, ceiling)
    parts = [_sieve_block(a, min(a + segment_size, hi))
             for a in range(lo, hi, segment_size)]
    return PrimeTable(lo, hi, np.concatenate(parts), count_before_lo)


def iter_segments(lo: int, hi: int, *, ceiling: int = DEFAULT_CEILING,
                  segment_size: int = DEFAULT_SEGMENT, workers: int = 1,
                  count_before_lo: int | None = 0):
    """Yield consecutive PrimeTables covering [lo, hi), in ascending order.

    With ``workers > 1`` segments are sieved concurrently; the yield order
    (and so any downstream accumulation) stays ascending.
    """
    _check_range(lo, hi, ceiling)
    bounds = [(a, min(a + segment_size, hi)) for a in range(lo, hi, segment_size)]
    count = count_before_lo
    if workers > 1 and len(bounds) > 1:
        _base_primes(math.isqrt(hi - 1))
        with ProcessPoolExecutor(workers) as ex:
            blocks = ex.map(_sieve_block, *zip(*bounds))
            for (a, b), ps in zip(bounds, blocks):
                yield PrimeTable(a, b, ps, count)
                if count is not None:
                    count += len(ps)
        return
    for a, b in bounds:
        ps = _sieve_block(a, b)
        yield PrimeTable(a, b, ps, count)
        if count is not None:
            count += len(ps)


class PrimeCache:
    """Growing array of the first primes, extended by segmented sieving."""

    def __init__(self, ceiling: int = DEFAULT_CEILING,
                 segment_size: int = DEFAULT_SEGMENT):
        self.ceiling = ceiling
        self.segment_size = segment_size
        self.limit = 2  # primes < limit are all present
        self.primes = np.zeros(0, dtype=np.int64)

    def extend_to(self, limit: int) -> None:
        if limit <= self.limit:
            return
        target = max(limit, int(self.limit * 1.5))
        if target > self.ceiling:
            if limit > self.ceiling:
                raise PrimeRangeError(f"limit {limit} exceeds ceiling {self.ceiling}")
            target = self.ceiling
        table = sieve_segment(self.limit, target, ceiling=self.ceiling,
                              segment_size=self.segment_size)
        self.primes = np.concatenate([self.primes, table.primes])
        self.limit = target

    def first(self, n: int) -> np.ndarray:
        """The first n primes."""
        while len(self.primes) < n:
            self.extend_to(max(2 * self.limit, _nth_prime_upper(n) + 1))
        return self.primes[:n]

    def upto(self, x: int) -> np.ndarray:
        """All primes <= x."""
        self.extend_to(x + 1)
        return self.primes[: np.searchsorted(self.primes, x, side="right")]


def _nth_prime_upper(n: int) -> int:
    """Upper bound for p_n (Rosser: p_n < n(log n + log log n) for n >= 6)."""
    if n < 6:
        return 13
    ln = math.log(n)
    return int(n * (ln + math.log(ln))) + 3


_default_cache: PrimeCache | None = None


def default_cache() -> PrimeCache:
    global _default_cache
    if _default_cache is None:
        _default_cache = PrimeCache()
    return _default_cache


def first_primes(n: int) -> np.ndarray:
    return default_cache().first(n)


def nth_prime(n: int, *, ceiling: int = DEFAULT_CEILING) -> int:
    if n < 1:
        raise PrimeRangeError("nth_prime needs n >= 1")
    p = int(default_cache().first(n)[n - 1])
    if p > ceiling:
        raise PrimeRangeError(f"p_{n} = {p} lies above ceiling {ceiling}")
    return p


@dataclass
class ThetaAccumulator:
    """Running sum of log p over primes in ascending order."""

    x: int = 1
    terms: int = 0
    _acc: CompensatedSum = field(
        default_factory=lambda: CompensatedSum(per_term_rel=2 * LIBM_ULPS))

    @property
    def theta(self) -> ErrBound:
        return self._acc.bound()

    def push(self, p: int) -> None:
        self._acc.add(math.log(p))
        self.terms += 1
        self.x = p

    def extend(self, primes, x: int | None = None) -> None:
        for p in primes:
            self.push(int(p))
        if x is not None:
            self.x = max(self.x, x)

    def merge(self, other: "ThetaAccumulator") -> None:
        """Append a later, disjoint accumulator (ascending order only)."""
        if other.terms and self.x >= other.x:
            raise ValueError("merge must be applied in ascending order")
        self._acc.merge(other._acc)
        self.terms += other.terms
        self.x = max(self.x, other.x)

    def state(self) -> dict:
        return {"x": self.x, "terms": self.terms, "acc": self._acc.state()}

    @classmethod
    def from_state(cls, st: dict) -> "ThetaAccumulator":
        return cls(int(st["x"]), int(st["terms"]), CompensatedSum.from_state(st["acc"]))


def theta(x: int) -> ErrBound:
    """Chebyshev theta(x) = sum of log p over primes p <= x."""
    if x < 2:
        raise PrimeRangeError("theta needs x >= 2")
    acc = ThetaAccumulator()
    acc.extend(default_cache().upto(x), x)
    return acc.theta


@dataclass(frozen=True)
class LogPrimorial:
    k: int
    log_value: ErrBound


def log_primorial(k: int) -> LogPrimorial:
    """log of the product of the first k primes, i.e. theta(p_k)."""
    if k < 1:
        raise PrimeRangeError("log_primorial needs k >= 1")
    return LogPrimorial(k, theta(nth_prime(k)))


def exact_primorial(k: int) -> int:
    """Exact big-integer primorial; kept as an oracle for modest k."""
    return math.prod(int(p) for p in first_primes(k))


def exact_log_primorial(k: int) -> float:
    return math.log(exact_primorial(k))
