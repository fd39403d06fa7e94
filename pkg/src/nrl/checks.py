"""Nicolas, Robin and CLM inequality checks with three-valued verdicts.

Sign convention: ``margin`` is oriented so that a positive margin means the
inequality HOLDS.  For Nicolas (LHS > RHS) the margin is ``lhs - rhs``; for
Robin, CLM and the reversed-Nicolas claim (LHS < RHS) it is ``rhs - lhs``.
Orientation lives in ``ORIENTATION`` and nowhere else.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from . import errbound as eb
from .arith import (
    RANGE_CEILING, Factorization, factorize, is_hardy_ramanujan,
    is_weak_hardy_ramanujan, log_sigma_ratio, omega, sigma_block, sigma_of,
)
from .constants import GAMMA, get_constant
from .errbound import CompensatedSum, ErrBound, Sign
from .primes import (
    DEFAULT_CEILING, DEFAULT_SEGMENT, PrimeRangeError, ThetaAccumulator,
    first_primes, sieve_segment,
)

INF = math.inf


class Precision(str, Enum):
    FAST64 = "fast64"
    GUARDED = "guarded"
    HIGH = "high"


class Status(str, Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    INDETERMINATE = "INDETERMINATE"
    UNDEFINED_RHS = "UNDEFINED_RHS"


# +1: HOLDS iff LHS > RHS;  -1: HOLDS iff LHS < RHS
ORIENTATION = {
    "nicolas": +1,
    "reverse_nicolas": -1,
    "robin": -1,
    "clm": -1,
    "clm_alt": -1,
}

# the two readings of "log log N_k^2" in the CLM upper bound
CLM_READINGS = {"clm": "log log (N_k^2)", "clm_alt": "(log log N_k)^2"}


class ScanRangeError(ValueError):
    pass


@dataclass(frozen=True)
class CheckVerdict:
    kind: str
    subject: int
    lhs_log: ErrBound
    rhs_log: ErrBound
    margin: ErrBound
    status: Status

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS


def status_of(margin: ErrBound) -> Status:
    return {Sign.POSITIVE: Status.HOLDS, Sign.NEGATIVE: Status.FAILS,
            Sign.UNKNOWN: Status.INDETERMINATE}[margin.sign()]


def make_verdict(kind: str, subject: int, lhs: ErrBound, rhs: ErrBound,
                 precision: Precision = Precision.GUARDED) -> CheckVerdict:
    """Orient the margin for ``kind`` and classify it."""
    if precision is Precision.FAST64:
        lhs, rhs = ErrBound(lhs.value), ErrBound(rhs.value)
    margin = lhs - rhs if ORIENTATION[kind] > 0 else rhs - lhs
    return CheckVerdict(kind, subject, lhs, rhs, margin, status_of(margin))


def _nonpositive_rhs(kind: str, subject: int, lhs: ErrBound,
                     status: Status | None = None) -> CheckVerdict:
    """RHS <= 0 so its log is -inf; the sign of the comparison is still known."""
    rhs = ErrBound(-INF)
    if ORIENTATION[kind] > 0:
        margin = ErrBound(INF)
    else:
        margin = ErrBound(-INF)
    if status is None:
        status = status_of(margin)
    return CheckVerdict(kind, subject, lhs, rhs, margin, status)


# -- primorial-side verdicts (Nicolas, CLM) ------------------------------

def _gamma_plus_loglog(theta: ErrBound) -> ErrBound | None:
    """gamma + log(log theta), or None when log theta <= 0."""
    lt = eb.log(theta)
    if lt.lo <= 0:
        if lt.hi < 0:
            return None
        raise ArithmeticError("log theta straddles zero")  # pragma: no cover
    return GAMMA + eb.log(lt)


def nicolas_verdict(k: int, lhs: ErrBound, theta: ErrBound,
                    precision: Precision = Precision.GUARDED) -> CheckVerdict:
    rhs = _gamma_plus_loglog(theta)
    if rhs is None:
        # log log N_1 < 0: the RHS is negative and the LHS is positive
        return _nonpositive_rhs("nicolas", k, lhs)
    v = make_verdict("nicolas", k, lhs, rhs, precision)
    if precision is Precision.HIGH and v.status is Status.INDETERMINATE:
        return _nicolas_iv(k)
    return v


def reverse_nicolas_verdict(k: int, lhs: ErrBound, theta: ErrBound) -> CheckVerdict:
    """The claimed prod p/phi(p) < e^gamma log log N_k (opposite of Nicolas)."""
    rhs = _gamma_plus_loglog(theta)
    if rhs is None:
        return _nonpositive_rhs("reverse_nicolas", k, lhs)
    return make_verdict("reverse_nicolas", k, lhs, rhs)


def clm_verdict(k: int, lhs: ErrBound, theta: ErrBound, reading: str = "clm",
                precision: Precision = Precision.GUARDED) -> CheckVerdict:
    """CLM upper product; ``reading`` picks the meaning of log log N_k^2."""
    if reading == "clm":
        # log(log N^2) = log(2 theta), always > 0 since 2 theta(2) > 1
        rhs = GAMMA + eb.log(eb.log(2 * theta))
    elif reading == "clm_alt":
        lt = eb.log(theta)
        rhs = GAMMA + 2 * eb.log(ErrBound(abs(lt.value), lt.radius))
    else:
        raise ValueError(f"unknown CLM reading {reading!r}")
    return make_verdict(reading, k, lhs, rhs, precision)


def _primorial_sums(k: int) -> tuple[ErrBound, ErrBound, ErrBound]:
    """(sum log(1 + 1/(p-1)), sum log(1 + 1/p), theta) over the first k primes."""
    nic = CompensatedSum(per_term_rel=1 + 2 * eb.LIBM_ULPS)
    clm = CompensatedSum(per_term_rel=1 + 2 * eb.LIBM_ULPS)
    th = ThetaAccumulator()
    for p in first_primes(k).tolist():
        nic.add(math.log1p(1.0 / (p - 1)))
        clm.add(math.log1p(1.0 / p))
        th.push(p)
    return nic.bound(), clm.bound(), th.theta


def nicolas_check(k: int, precision: Precision = Precision.GUARDED) -> CheckVerdict:
    if k < 1:
        raise ScanRangeError("nicolas_check needs k >= 1")
    nic, _, th = _primorial_sums(k)
    return nicolas_verdict(k, nic, th, precision)


def clm_upper_check(k: int, reading: str = "clm",
                    precision: Precision = Precision.GUARDED) -> CheckVerdict:
    if k < 1:
        raise ScanRangeError("clm_upper_check needs k >= 1")
    _, clm, th = _primorial_sums(k)
    return clm_verdict(k, clm, th, reading, precision)


def _iv_gamma(iv):
    g = get_constant("gamma")
    return iv.mpf([str(g.value - g.radius), str(g.value + g.radius)])


def _nicolas_iv(k: int) -> CheckVerdict:
    """Re-evaluate one Nicolas verdict with 128-bit interval arithmetic."""
    from mpmath import iv
    with iv.workprec(128):
        lhs = iv.mpf(0)
        th = iv.mpf(0)
        for p in first_primes(k).tolist():
            lhs += iv.log(iv.mpf(p) / (p - 1))
            th += iv.log(p)
        rhs = _iv_gamma(iv) + iv.log(iv.log(th))
        margin = lhs - rhs
        as_eb = [_iv_to_eb(x) for x in (lhs, rhs, margin)]
    return CheckVerdict("nicolas", k, *as_eb, status_of(as_eb[2]))


def _iv_to_eb(x) -> ErrBound:
    mid = float(x.mid)
    rad = max(abs(float(x.b) - mid), abs(mid - float(x.a)))
    return ErrBound(mid, eb._up(rad + eb.ulp_bound(mid)))


# -- Robin -----------------------------------------------------------------

def robin_verdict(n: int, log_ratio: ErrBound, log_n: ErrBound,
                  precision: Precision = Precision.GUARDED) -> CheckVerdict:
    if log_n.hi <= 0 or eb.log(log_n).hi <= 0:
        # n <= e: e^gamma log log n <= 0 has no logarithm
        return _nonpositive_rhs("robin", n, log_ratio, Status.UNDEFINED_RHS)
    rhs = GAMMA + eb.log(eb.log(log_n))
    v = make_verdict("robin", n, log_ratio, rhs, precision)
    if precision is Precision.HIGH and v.status is Status.INDETERMINATE:
        return _robin_iv(n)
    return v


def _log_n(f: Factorization) -> ErrBound:
    if f.n < 2**53:
        return eb.log_int(f.n)
    acc = CompensatedSum(per_term_rel=2 * eb.LIBM_ULPS + 1)
    for p, e in f.factors:
        acc.add(e * math.log(p))
    return acc.bound()


def _log_ratio(f: Factorization) -> ErrBound:
    if f.n <= 2**63:
        return eb.log(ErrBound.exact(Fraction(sigma_of(f), f.n)))
    return log_sigma_ratio(f)


def robin_check(n: int | Factorization,
                precision: Precision = Precision.GUARDED) -> CheckVerdict:
    """sigma(n)/n < e^gamma log log n, evaluated in log space."""
    f = n if isinstance(n, Factorization) else factorize(n)
    if f.n < 1:
        raise ScanRangeError("robin_check needs n >= 1")
    if f.n == 1:
        return _nonpositive_rhs("robin", 1, ErrBound(0.0), Status.UNDEFINED_RHS)
    return robin_verdict(f.n, _log_ratio(f), _log_n(f), precision)


def _robin_iv(n: int) -> CheckVerdict:
    from mpmath import iv
    f = factorize(n)
    with iv.workprec(128):
        lhs = iv.log(iv.mpf(sigma_of(f)) / n)
        rhs = _iv_gamma(iv) + iv.log(iv.log(iv.log(n)))
        margin = rhs - lhs
        as_eb = [_iv_to_eb(x) for x in (lhs, rhs, margin)]
    return CheckVerdict("robin", n, *as_eb, status_of(as_eb[2]))


@dataclass
class RobinBlock:
    """Vectorised verdict columns for a contiguous block of n."""

    n: np.ndarray
    sigma: np.ndarray
    lhs: np.ndarray
    lhs_r: np.ndarray
    rhs: np.ndarray
    rhs_r: np.ndarray
    margin: np.ndarray
    margin_r: np.ndarray
    status: np.ndarray  # int8 codes into STATUS_CODES

    def verdict(self, i: int) -> CheckVerdict:
        return CheckVerdict("robin", int(self.n[i]),
                            ErrBound(float(self.lhs[i]), float(self.lhs_r[i])),
                            ErrBound(float(self.rhs[i]), float(self.rhs_r[i])),
                            ErrBound(float(self.margin[i]), float(self.margin_r[i])),
                            STATUS_CODES[self.status[i]])

    def count(self, status: Status) -> int:
        return int(np.count_nonzero(self.status == CODE_OF[status]))

    def __len__(self) -> int:
        return len(self.n)


_SLACK = 1.0 + 1e-9
# numpy compares str-valued enums as strings, so block statuses are codes
STATUS_CODES = tuple(Status)
CODE_OF = {st: i for i, st in enumerate(STATUS_CODES)}


def robin_block(lo: int, hi: int, precision: Precision = Precision.GUARDED) -> RobinBlock:
    """Robin verdicts for every n in [lo, hi) from the block sigma sieve.

    Radii assume numpy's log is within ``NUMPY_ULPS`` ulp; the scalar
    ``robin_check`` is the cross-check.
    """
    U, K = eb.U, 2.0 * eb.NUMPY_ULPS * eb.U
    sig = sigma_block(lo, hi)
    n = np.arange(lo, hi, dtype=np.int64)
    nf = n.astype(np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        lhs = np.log(sig / nf)
        lhs_r = (1.0 + 4 * U) * U + K * np.abs(lhs)
        ln = np.log(nf)
        ln_r = K * ln
        lln = np.log(ln)
        lln_r = ln_r / (ln - ln_r) + K * np.abs(lln)
        llln = np.log(lln)
        llln_r = lln_r / (lln - lln_r) + K * np.abs(llln)
        rhs = GAMMA.value + llln
        rhs_r = GAMMA.radius + llln_r + U * np.abs(rhs)
        margin = rhs - lhs
        margin_r = (lhs_r + rhs_r + U * np.abs(margin)) * _SLACK
    undefined = n <= 2
    C = CODE_OF
    status = np.full(len(n), C[Status.INDETERMINATE], dtype=np.int8)
    status[margin - margin_r > 0] = C[Status.HOLDS]
    status[margin + margin_r < 0] = C[Status.FAILS]
    if precision is Precision.FAST64:
        lhs_r[:] = rhs_r[:] = margin_r[:] = 0.0
        status[:] = C[Status.INDETERMINATE]
        status[margin > 0] = C[Status.HOLDS]
        status[margin < 0] = C[Status.FAILS]
    status[undefined] = C[Status.UNDEFINED_RHS]
    rhs[undefined] = -INF
    margin[undefined] = -INF
    rhs_r[undefined] = margin_r[undefined] = 0.0
    block = RobinBlock(n, sig, lhs, lhs_r, rhs, rhs_r, margin, margin_r, status)
    if precision is Precision.HIGH:
        for i in np.flatnonzero(status == C[Status.INDETERMINATE]):
            v = _robin_iv(int(n[i]))
            block.status[i] = C[v.status]
    return block


# -- scans -------------------------------------------------------------------

@dataclass
class ScanSummary:
    kind: str
    range: tuple[int, int]
    total: int = 0
    holds: int = 0
    fails: int = 0
    indeterminate: int = 0
    undefined: int = 0
    failures: list[CheckVerdict] = field(default_factory=list)
    wall_time: float | None = None
    extras: dict = field(default_factory=dict)

    def record(self, v: CheckVerdict) -> None:
        self.total += 1
        if v.status is Status.HOLDS:
            self.holds += 1
        elif v.status is Status.FAILS:
            self.fails += 1
            self.failures.append(v)
        elif v.status is Status.INDETERMINATE:
            self.indeterminate += 1
        else:
            self.undefined += 1

    @property
    def consistent(self) -> bool:
        return (self.holds + self.fails + self.indeterminate + self.undefined == self.total
                and len(self.failures) == self.fails)


def parse_stride(stride: str) -> tuple[str, float]:
    """'all' or 'geometric:<ratio>' (ratio > 1)."""
    if stride == "all":
        return "all", 1.0
    kind, _, ratio = stride.partition(":")
    if kind == "geometric":
        r = float(ratio or 2.0)
        if r > 1.0:
            return "geometric", r
    raise ValueError(f"bad stride policy {stride!r}")


def stride_points(lo: int, hi: int, ratio: float) -> list[int]:
    """Geometric sample of [lo, hi], always including both ends."""
    pts, x = {lo, hi}, float(lo)
    while x < hi:
        pts.add(math.ceil(x))
        x *= ratio
    return sorted(p for p in pts if lo <= p <= hi)


class PrimorialScan:
    """Incremental scan over k for the primorial-indexed inequalities.

    The LHS sums and theta are carried across k, so each k costs O(1).
    ``kind`` is 'nicolas', 'clm' or 'clm_alt'.
    """

    chunk_span = DEFAULT_SEGMENT

    def __init__(self, kind: str, k_lo: int, k_hi: int, stride: str = "all",
                 precision: Precision = Precision.GUARDED,
                 ceiling: int = DEFAULT_CEILING, state: dict | None = None,
                 chunk_span: int | None = None):
        if kind not in ("nicolas", "clm", "clm_alt"):
            raise ValueError(f"unknown primorial scan kind {kind!r}")
        if not 1 <= k_lo <= k_hi:
            raise ScanRangeError(f"need 1 <= k_lo <= k_hi, got {k_lo}, {k_hi}")
        self.kind, self.k_lo, self.k_hi = kind, k_lo, k_hi
        self.stride = stride
        self._stride_kind, ratio = parse_stride(stride)
        self._emit = (None if self._stride_kind == "all"
                      else stride_points(k_lo, k_hi, ratio))
        self.precision = Precision(precision)
        self.ceiling = ceiling
        if chunk_span is not None:
            self.chunk_span = chunk_span
        self._traj = set(stride_points(k_lo, k_hi, 2.0))
        self.summary = ScanSummary(kind, (k_lo, k_hi))
        self.summary.extras = {"trajectory": {}}
        if state is None:
            per = 1 + 2 * eb.LIBM_ULPS
            self.k = 0
            self.last_prime = 1
            self.lhs = CompensatedSum(per_term_rel=per)
            self.theta = ThetaAccumulator()
        else:
            self._load(state)

    @property
    def params(self) -> dict:
        return {"kind": self.kind, "k_lo": self.k_lo, "k_hi": self.k_hi,
                "stride": self.stride, "precision": self.precision.value,
                "ceiling": self.ceiling}

    @property
    def cursor(self) -> int:
        return self.k + 1

    @property
    def done(self) -> bool:
        return self.k >= self.k_hi

    def _wanted(self, k: int) -> bool:
        if k < self.k_lo:
            return False
        if self._emit is None:
            return True
        i = np.searchsorted(self._emit, k)
        return i < len(self._emit) and self._emit[i] == k

    def _verdict(self, k: int) -> CheckVerdict:
        lhs, th = self.lhs.bound(), self.theta.theta
        if self.kind == "nicolas":
            return nicolas_verdict(k, lhs, th, self.precision)
        return clm_verdict(k, lhs, th, self.kind, self.precision)

    def step(self) -> list[CheckVerdict]:
        """Advance through the next sieve chunk of primes."""
        if self.done:
            return []
        lo = self.last_prime + 1
        hi = min(lo + self.chunk_span, self.ceiling)
        if lo >= hi:
            raise PrimeRangeError("prime ceiling reached before k_hi")
        primes = sieve_segment(lo, hi, ceiling=self.ceiling).primes.tolist()
        shift = 0 if self.kind == "nicolas" else 1
        out = []
        for p in primes:
            self.lhs.add(math.log1p(1.0 / (p - 1 + shift)))
            self.theta.push(p)
            self.k += 1
            self.last_prime = p
            if self._wanted(self.k):
                v = self._verdict(self.k)
                self.summary.record(v)
                if self.k in self._traj:
                    self.summary.extras["trajectory"][str(self.k)] = repr(v.margin.value)
                out.append(v)
            if self.done:
                break
        if not self.done:
            self.last_prime = hi - 1
        return out

    def state(self) -> dict:
        return {"k": self.k, "last_prime": self.last_prime,
                "lhs": self.lhs.state(), "theta": self.theta.state(),
                "summary": summary_state(self.summary)}

    def _load(self, st: dict) -> None:
        self.k = int(st["k"])
        self.last_prime = int(st["last_prime"])
        self.lhs = CompensatedSum.from_state(st["lhs"])
        self.theta = ThetaAccumulator.from_state(st["theta"])
        self.summary = summary_from_state(st["summary"])

    def close(self) -> None:
        pass


class RobinScan:
    """Robin verdicts over [lo, hi) in blocks aligned to multiples of ``block``.

    Block boundaries depend only on n, so a resumed scan recomputes exactly
    the blocks a cold run would.
    """

    kind = "robin"

    def __init__(self, lo: int, hi: int, precision: Precision = Precision.GUARDED,
                 block: int = 2**16, workers: int = 1,
                 ceiling: int = RANGE_CEILING, state: dict | None = None):
        if not 1 <= lo < hi:
            raise ScanRangeError(f"empty or invalid range [{lo}, {hi})")
        if hi > ceiling:
            raise ScanRangeError(f"hi={hi} exceeds range ceiling {ceiling}")
        self.lo, self.hi = lo, hi
        self.precision = Precision(precision)
        self.block = block
        self.workers = workers
        self.ceiling = ceiling
        self.summary = ScanSummary("robin", (lo, hi))
        self.summary.extras = _empty_crosstab()
        self.n = lo
        self._pool: ProcessPoolExecutor | None = None
        if state is not None:
            self.n = int(state["n"])
            self.summary = summary_from_state(state["summary"])

    @property
    def params(self) -> dict:
        return {"kind": "robin", "lo": self.lo, "hi": self.hi,
                "precision": self.precision.value, "block": self.block,
                "ceiling": self.ceiling}

    @property
    def cursor(self) -> int:
        return self.n

    @property
    def done(self) -> bool:
        return self.n >= self.hi

    def _bounds(self, count: int) -> list[tuple[int, int]]:
        out, a = [], self.n
        while a < self.hi and len(out) < count:
            b = min((a // self.block + 1) * self.block, self.hi)
            out.append((a, b))
            a = b
        return out

    def step_blocks(self) -> list[RobinBlock]:
        bounds = self._bounds(max(self.workers, 1))
        if self.workers > 1 and len(bounds) > 1:
            if self._pool is None:
                self._pool = ProcessPoolExecutor(self.workers)
            blocks = list(self._pool.map(robin_block, *zip(*bounds),
                                         [self.precision] * len(bounds)))
        else:
            blocks = [robin_block(a, b, self.precision) for a, b in bounds]
        for blk in blocks:
            self._record_block(blk)
        self.n = bounds[-1][1] if bounds else self.n
        return blocks

    def step(self) -> list[CheckVerdict]:
        out = []
        for blk in self.step_blocks():
            out.extend(blk.verdict(i) for i in range(len(blk)))
        return out

    def _record_block(self, blk: RobinBlock) -> None:
        s = self.summary
        s.total += len(blk)
        s.holds += blk.count(Status.HOLDS)
        s.indeterminate += blk.count(Status.INDETERMINATE)
        s.undefined += blk.count(Status.UNDEFINED_RHS)
        for i in np.flatnonzero(blk.status == CODE_OF[Status.FAILS]):
            v = blk.verdict(int(i))
            s.fails += 1
            s.failures.append(v)
            _crosstab_add(s.extras, factorize(v.subject))

    def state(self) -> dict:
        return {"n": self.n, "summary": summary_state(self.summary)}

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None


def _empty_crosstab() -> dict:
    return {"by_omega": {}, "hr_strict": {"true": 0, "false": 0},
            "hr_weak": {"true": 0, "false": 0}}


def _crosstab_add(tab: dict, f: Factorization) -> None:
    w = str(omega(f))
    tab["by_omega"][w] = tab["by_omega"].get(w, 0) + 1
    tab["hr_strict"][str(is_hardy_ramanujan(f)).lower()] += 1
    tab["hr_weak"][str(is_weak_hardy_ramanujan(f)).lower()] += 1


def run_scan(scan, on_verdict: Callable[[CheckVerdict], None] | None = None) -> ScanSummary:
    t0 = time.perf_counter()
    try:
        while not scan.done:
            for v in scan.step():
                if on_verdict is not None:
                    on_verdict(v)
    finally:
        scan.close()
    scan.summary.wall_time = time.perf_counter() - t0
    return scan.summary


def nicolas_scan(k_lo: int, k_hi: int, stride: str = "all",
                 precision: Precision = Precision.GUARDED,
                 on_verdict=None) -> ScanSummary:
    return run_scan(PrimorialScan("nicolas", k_lo, k_hi, stride, precision), on_verdict)


def clm_scan(k_lo: int, k_hi: int, reading: str = "clm", stride: str = "all",
             precision: Precision = Precision.GUARDED, on_verdict=None) -> ScanSummary:
    return run_scan(PrimorialScan(reading, k_lo, k_hi, stride, precision), on_verdict)


def robin_scan(lo: int, hi: int, precision: Precision = Precision.GUARDED,
               workers: int = 1, on_verdict=None) -> ScanSummary:
    return run_scan(RobinScan(lo, hi, precision, workers=workers), on_verdict)


# -- (de)serialisation of verdicts and summaries ---------------------------

def verdict_state(v: CheckVerdict) -> dict:
    return {"kind": v.kind, "subject": v.subject,
            "lhs": [repr(v.lhs_log.value), repr(v.lhs_log.radius)],
            "rhs": [repr(v.rhs_log.value), repr(v.rhs_log.radius)],
            "margin": [repr(v.margin.value), repr(v.margin.radius)],
            "status": v.status.value}


def verdict_from_state(d: dict) -> CheckVerdict:
    def e(pair):
        return ErrBound(float(pair[0]), float(pair[1]))
    return CheckVerdict(d["kind"], int(d["subject"]), e(d["lhs"]), e(d["rhs"]),
                        e(d["margin"]), Status(d["status"]))


def summary_state(s: ScanSummary) -> dict:
    return {"kind": s.kind, "range": list(s.range), "total": s.total,
            "holds": s.holds, "fails": s.fails, "indeterminate": s.indeterminate,
            "undefined": s.undefined,
            "failures": [verdict_state(v) for v in s.failures],
            "extras": s.extras}


def summary_from_state(d: dict) -> ScanSummary:
    return ScanSummary(d["kind"], tuple(d["range"]), d["total"], d["holds"],
                       d["fails"], d["indeterminate"], d["undefined"],
                       [verdict_from_state(v) for v in d["failures"]],
                       None, d.get("extras", {}))


# -- Hardy-Ramanujan candidates --------------------------------------------

def hr_candidates(max_m: int, max_log_n: float) -> Iterator[Factorization]:
    """Strict Hardy-Ramanujan numbers 2^e1 3^e2 ... (e1 >= e2 >= ...),
    at most ``max_m`` primes, log n <= max_log_n, lexicographic in exponents.

    The boundary is inclusive up to a relative 1e-12 to absorb rounding in
    the caller's ``max_log_n``.
    """
    if max_m < 1:
        raise ValueError("max_m must be >= 1")
    limit = max_log_n * (1 + 1e-12) + 1e-12
    ps = first_primes(max_m).tolist()
    logs = [math.log(p) for p in ps]

    def rec(i: int, cap: int, cur: float, exps: list[int]):
        for e in range(1, cap + 1):
            nxt = cur + e * logs[i]
            if nxt > limit:
                break
            pairs = exps + [e]
            yield Factorization.from_pairs(zip(ps, pairs))
            if i + 1 < max_m:
                yield from rec(i + 1, e, nxt, pairs)

    first_cap = max(1, int(limit / logs[0]) + 1)
    yield from rec(0, first_cap, 0.0, [])


def hr_scan(max_m: int, max_log_n: float,
            precision: Precision = Precision.GUARDED) -> ScanSummary:
    """Robin verdicts on every strict Hardy-Ramanujan candidate."""
    t0 = time.perf_counter()
    summary = ScanSummary("robin", (1, 0))
    summary.extras = _empty_crosstab()
    for f in hr_candidates(max_m, max_log_n):
        v = robin_check(f, precision)
        summary.record(v)
        if v.status is Status.FAILS:
            _crosstab_add(summary.extras, f)
    summary.wall_time = time.perf_counter() - t0
    return summary


# -- trend helper ------------------------------------------------------------

def isotonic_decreasing(y) -> np.ndarray:
    """Least-squares non-increasing fit (pool adjacent violators)."""
    blocks: list[list[float]] = []  # [mean, weight]
    for v in map(float, y):
        blocks.append([v, 1.0])
        while len(blocks) > 1 and blocks[-2][0] < blocks[-1][0]:
            m2, w2 = blocks.pop()
            m1, w1 = blocks.pop()
            blocks.append([(m1 * w1 + m2 * w2) / (w1 + w2), w1 + w2])
    out = []
    for m, w in blocks:
        out.extend([m] * int(w))
    return np.array(out)


def monotone_violation(y) -> float:
    """Largest relative deviation of y from its non-increasing fit."""
    y = np.asarray(y, float)
    fit = isotonic_decreasing(y)
    scale = np.maximum(np.abs(y), 1e-300)
    return float(np.max(np.abs(y - fit) / scale)) if len(y) else 0.0
