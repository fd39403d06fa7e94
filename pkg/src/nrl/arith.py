"""Exact multiplicative functions: factorization, sigma, phi, omega."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from . import errbound as eb
from .errbound import CompensatedSum, ErrBound
from .primes import default_cache, simple_sieve

FACTOR_CEILING = 2**63
RANGE_CEILING = 10**9
TRIAL_LIMIT = 2**20
INT64_MAX = 2**63 - 1
SIGMA_BLOCK = 2**20


class ArithmeticRangeError(ValueError):
    pass


class SigmaOverflowError(OverflowError):
    """sigma(n) does not fit the 64-bit width; use log_sigma_ratio."""


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        ps = [p for p, _ in self.factors]
        if any(a >= b for a, b in zip(ps, ps[1:])):
            raise ValueError("primes must be strictly increasing")
        if any(e < 1 for _, e in self.factors):
            raise ValueError("exponents must be >= 1")
        if math.prod(p**e for p, e in self.factors) != self.n:
            raise ValueError(f"factors do not multiply to {self.n}")

    @classmethod
    def from_pairs(cls, pairs) -> "Factorization":
        pairs = tuple((int(p), int(e)) for p, e in pairs)
        return cls(math.prod(p**e for p, e in pairs), pairs)

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    @property
    def exponents(self) -> list[int]:
        return [e for _, e in self.factors]


# -- primality / factorization -------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24, which covers 2**63."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """A nontrivial factor of composite odd n; seeds fixed for reproducibility."""
    for c in range(1, 200):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise RuntimeError(f"rho failed on {n}")  # pragma: no cover


_trial_primes: np.ndarray | None = None


def _small_primes() -> list[int]:
    global _trial_primes
    if _trial_primes is None:
        _trial_primes = simple_sieve(TRIAL_LIMIT)
    return _trial_primes


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _brent_rho(n)
    _split(d, out)
    _split(n // d, out)


def factorize(n: int, *, ceiling: int = FACTOR_CEILING) -> Factorization:
    if n < 1:
        raise ArithmeticRangeError("factorize needs n >= 1")
    if n > ceiling:
        raise ArithmeticRangeError(f"n={n} exceeds factor ceiling {ceiling}")
    found: dict[int, int] = {}
    m = n
    for p in _small_primes():
        p = int(p)
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        if m < TRIAL_LIMIT**2:
            found[m] = found.get(m, 0) + 1
        else:
            _split(m, found)
    return Factorization(n, tuple(sorted(found.items())))


# -- multiplicative functions ----------------------------------------------

def sigma_of(f: Factorization) -> int:
    return math.prod((p ** (e + 1) - 1) // (p - 1) for p, e in f.factors)


@dataclass(frozen=True)
class SigmaRatio:
    n: int
    sigma: int
    ratio: ErrBound

    @property
    def exact(self) -> Fraction:
        return Fraction(self.sigma, self.n)


def sigma_ratio(n: int | Factorization) -> SigmaRatio:
    """sigma(n)/n with exact sigma; raises if sigma leaves the int64 range."""
    f = n if isinstance(n, Factorization) else factorize(n)
    s = sigma_of(f)
    if s > INT64_MAX:
        raise SigmaOverflowError(f"sigma({f.n}) exceeds 64-bit width")
    return SigmaRatio(f.n, s, ErrBound.exact(Fraction(s, f.n)))


def log_sigma_ratio(f: Factorization) -> ErrBound:
    """log(sigma(n)/n) summed over prime powers; no width limit."""
    acc = CompensatedSum(per_term_rel=1 + 2 * eb.LIBM_ULPS)
    for p, e in f.factors:
        # log1p of the exact excess keeps the error relative to the result
        excess = Fraction(p ** (e + 1) - 1, p**e * (p - 1)) - 1
        acc.add(math.log1p(float(excess)))
    return acc.bound()


def euler_phi(f: Factorization) -> int:
    return math.prod(p ** (e - 1) * (p - 1) for p, e in f.factors)


def omega(f: Factorization) -> int:
    return len(f.factors)


def is_hardy_ramanujan(f: Factorization) -> bool:
    """Strict form: the primes are 2, 3, 5, ... in order, exponents non-increasing."""
    if not f.factors:
        return True
    first = default_cache().first(len(f.factors))
    if any(p != int(q) for p, q in zip(f.primes, first)):
        return False
    return is_weak_hardy_ramanujan(f)


def is_weak_hardy_ramanujan(f: Factorization) -> bool:
    """Weak form: exponents non-increasing over whatever primes appear."""
    es = f.exponents
    return all(a >= b for a, b in zip(es, es[1:]))


# -- block sieve for sigma -------------------------------------------------

def sigma_block(lo: int, hi: int) -> np.ndarray:
    """Exact sigma(n) for n in [lo, hi) as int64, by sieving prime powers.

    For each prime p <= sqrt(hi) and each j, multiples of p**j have their
    running product updated from sigma(p**(j-1)) to sigma(p**j); the
    cofactor left after removing all small primes is 1 or a single prime.
    """
    if not 1 <= lo < hi:
        raise ArithmeticRangeError(f"invalid range [{lo}, {hi})")
    if hi - 1 > INT64_MAX // 8:
        raise ArithmeticRangeError("block too high for int64 sigma")
    n = np.arange(lo, hi, dtype=np.int64)
    rem = n.copy()
    sig = np.ones(hi - lo, dtype=np.int64)
    for p in default_cache().upto(math.isqrt(hi - 1)):
        p = int(p)
        pj, prev, cur = p, 1, 1 + p
        while pj < hi:
            sl = slice((-lo) % pj, None, pj)
            sig[sl] = sig[sl] // prev * cur
            rem[sl] //= p
            pj *= p
            prev, cur = cur, cur * p + 1
    big = rem > 1
    sig[big] *= rem[big] + 1
    return sig


def sigma_ratio_range(lo: int, hi: int, *, ceiling: int = RANGE_CEILING,
                      block: int = SIGMA_BLOCK) -> Iterator[SigmaRatio]:
    if not 1 <= lo < hi:
        raise ArithmeticRangeError(f"invalid range [{lo}, {hi})")
    if hi > ceiling:
        raise ArithmeticRangeError(f"hi={hi} exceeds range ceiling {ceiling}")
    for a in range(lo, hi, block):
        b = min(a + block, hi)
        for n, s in zip(range(a, b), sigma_block(a, b).tolist()):
            yield SigmaRatio(n, s, ErrBound.exact(Fraction(s, n)))
