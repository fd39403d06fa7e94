"""Exact expansions in u = 1/log m with coefficients polynomial in w = log log m.

Three layers:

* ``WPolynomial`` -- exact rational polynomial in w.
* ``AsymSeries``  -- sum of C_j(w) u^j; ``order`` records that powers
  j >= order are unknown (O(u^order)).  Negative j is allowed, so
  log m itself is the series ``u^-1``.
* ``MTermSeries`` -- terms C(w) / (m^a log^j m), kept for a < a_max and
  j < j_max (default: modulo 1/m^2 and modulo 1/(m log^4 m)).

The calculus rests on one derivative rule.  With dw/dm = u/m and
du/dm = -u^2/m,

    d/dm [C(w) u^j] = (C' - j C) u^(j+1) / m,

and g(m+1) - g(m) = g'(m) + O(1/m^2).  ``forward_difference`` applies it
term by term.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import mpmath

A_MAX = 2
J_MAX = 4


class UnsupportedOrderError(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class WPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c) -> "WPolynomial":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WPolynomial):
            other = WPolynomial.const(other)
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> "WPolynomial":
        other = _wp(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return WPolynomial(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "WPolynomial":
        return WPolynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "WPolynomial":
        return self + (-_wp(other))

    def __rsub__(self, other) -> "WPolynomial":
        return _wp(other) - self

    def __mul__(self, other) -> "WPolynomial":
        if not isinstance(other, WPolynomial):
            c = _frac(other)
            return WPolynomial(c * a for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return WPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return WPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "WPolynomial":
        out = WPolynomial([1])
        for _ in range(n):
            out = out * self
        return out

    def derivative(self) -> "WPolynomial":
        return WPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, w):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * w + (mpmath.mpf(c.numerator) / c.denominator
                             if isinstance(w, mpmath.mpf) else c)
        return acc

    def __repr__(self) -> str:
        return f"WPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            num = str(mag) if (mag != 1 or i == 0) else ""
            body = f"{num}*{mono}" if num and mono else (num or mono)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def _wp(x) -> WPolynomial:
    return x if isinstance(x, WPolynomial) else WPolynomial.const(x)


W = WPolynomial([0, 1])
ONE = WPolynomial([1])
ZERO = WPolynomial()
# Cipolla's expansion p_m = m (log m + P0 + P1/log m + ...)
P0 = W - 1
P1 = W - 2


def wpoly_derivative(p: WPolynomial) -> WPolynomial:
    return p.derivative()


def solve_kf_ode(k: int, p: WPolynomial) -> WPolynomial:
    """The unique polynomial F with k F - F' = p, by back-substitution.

    Matching w^i: k f_i - (i + 1) f_(i+1) = p_i, solved from the top degree
    down.
    """
    if k < 1:
        raise ValueError("solve_kf_ode needs k >= 1")
    n = p.degree
    f = [Fraction(0)] * (n + 2)
    for i in range(n, -1, -1):
        f[i] = (p.coeff(i) + (i + 1) * f[i + 1]) / k
    return WPolynomial(f)


# -- series in u = 1/log m ---------------------------------------------------

class AsymSeries:
    """sum_j C_j(w) u^j, exact through u^(order - 1)."""

    __slots__ = ("terms", "order")

    def __init__(self, terms: Mapping[int, WPolynomial] | None = None, order: int = J_MAX):
        self.order = order
        self.terms: dict[int, WPolynomial] = {
            j: _wp(c) for j, c in sorted((terms or {}).items())
            if j < order and not _wp(c).is_zero()}

    @classmethod
    def monomial(cls, j: int, c=ONE, order: int = J_MAX) -> "AsymSeries":
        return cls({j: _wp(c)}, order)

    @property
    def valuation(self) -> int:
        return min(self.terms) if self.terms else self.order

    def coeff(self, j: int) -> WPolynomial:
        if j >= self.order:
            raise UnsupportedOrderError(f"u^{j} is beyond the known order {self.order}")
        return self.terms.get(j, ZERO)

    def truncate(self, order: int) -> "AsymSeries":
        return AsymSeries(self.terms, min(order, self.order))

    def with_order(self, order: int) -> "AsymSeries":
        """Re-declare the known order (used to replay a truncation as printed)."""
        return AsymSeries(self.terms, order)

    def __eq__(self, other) -> bool:
        return (isinstance(other, AsymSeries) and self.order == other.order
                and self.terms == other.terms)

    def __add__(self, other) -> "AsymSeries":
        other = _as(other)
        order = min(self.order, other.order)
        out = dict(self.terms)
        for j, c in other.terms.items():
            out[j] = out.get(j, ZERO) + c
        return AsymSeries(out, order)

    __radd__ = __add__

    def __neg__(self) -> "AsymSeries":
        return AsymSeries({j: -c for j, c in self.terms.items()}, self.order)

    def __sub__(self, other) -> "AsymSeries":
        return self + (-_as(other))

    def __rsub__(self, other) -> "AsymSeries":
        return _as(other) - self

    def mul(self, other, order: int | None = None) -> "AsymSeries":
        """Product; ``order`` caps the result (defaults to what is known)."""
        if not isinstance(other, AsymSeries):
            c = _wp(other)
            return AsymSeries({j: a * c for j, a in self.terms.items()}, self.order)
        known = min(self.order + other.valuation, other.order + self.valuation)
        order = known if order is None else order
        out: dict[int, WPolynomial] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                if i + j < order:
                    out[i + j] = out.get(i + j, ZERO) + a * b
        return AsymSeries(out, order)

    def __mul__(self, other) -> "AsymSeries":
        return self.mul(other)

    __rmul__ = __mul__

    def reciprocal(self) -> "AsymSeries":
        """1/s for s = c (1 + eps) with c a nonzero constant and eps = O(u)."""
        lead = self.terms.get(0, ZERO)
        if self.valuation != 0 or lead.degree != 0:
            raise ValueError("reciprocal needs a constant, nonzero u^0 term")
        c = lead.coeff(0)
        eps = (self * (1 / c)) - 1
        if self.order > 10**6:
            raise ValueError("reciprocal needs a finite known order")
        out = AsymSeries({0: ONE}, self.order)
        term = AsymSeries({0: ONE}, self.order)
        while term.terms:
            term = term.mul(-eps, self.order)
            out = out + term
        return out * (1 / c)

    def log1p(self) -> "AsymSeries":
        """log(1 + s) for s = O(u)."""
        if self.valuation < 1:
            raise ValueError("log1p needs a series with no u^0 term")
        if self.order > 10**6:
            raise ValueError("log1p needs a finite known order")
        out = AsymSeries({}, self.order)
        power = AsymSeries({0: ONE}, self.order)
        k = 0
        while power.terms:
            k += 1
            power = power.mul(self, self.order)
            out = out + power * Fraction((-1) ** (k + 1), k)
        return out

    def shift_u(self, d: int) -> "AsymSeries":
        """Multiply by u^d."""
        return AsymSeries({j + d: c for j, c in self.terms.items()}, self.order + d)

    def evaluate(self, m):
        m = mpmath.mpf(m)
        L = mpmath.log(m)
        w = mpmath.log(L)
        return mpmath.fsum(c(w) * L ** (-j) for j, c in self.terms.items())

    def __repr__(self) -> str:
        return f"AsymSeries({ {j: str(c) for j, c in self.terms.items()} }, order={self.order})"

    def __str__(self) -> str:
        parts = [f"({c})*u^{j}" for j, c in self.terms.items()]
        return (" + ".join(parts) or "0") + f" + O(u^{self.order})"


def _as(x) -> AsymSeries:
    if isinstance(x, AsymSeries):
        return x
    return AsymSeries({0: _wp(x)}, order=10**9)


U_SERIES = AsymSeries.monomial(1, order=10**9)
W_SERIES = AsymSeries.monomial(0, W, order=10**9)
LOG_M = AsymSeries.monomial(-1, order=10**9)


# -- terms in 1/m ---------------------------------------------------------------

class MTermSeries:
    """sum C_(a,j)(w) / (m^a log^j m) modulo 1/m^a_max and 1/(m log^j_max m)."""

    __slots__ = ("terms", "a_max", "j_max")

    def __init__(self, terms: Mapping[tuple[int, int], WPolynomial] | None = None,
                 a_max: int = A_MAX, j_max: int = J_MAX):
        self.a_max, self.j_max = a_max, j_max
        self.terms: dict[tuple[int, int], WPolynomial] = {
            k: _wp(c) for k, c in sorted((terms or {}).items())
            if k[0] < a_max and k[1] < j_max and not _wp(c).is_zero()}

    @classmethod
    def from_layer(cls, a: int, s: AsymSeries, a_max: int = A_MAX,
                   j_max: int = J_MAX) -> "MTermSeries":
        return cls({(a, j): c for j, c in s.terms.items()}, a_max, min(j_max, s.order))

    def layer(self, a: int) -> AsymSeries:
        return AsymSeries({j: c for (b, j), c in self.terms.items() if b == a}, self.j_max)

    def coeff(self, a: int, j: int) -> WPolynomial:
        return self.terms.get((a, j), ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, MTermSeries) and self.terms == other.terms

    def __add__(self, other: "MTermSeries") -> "MTermSeries":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return MTermSeries(out, min(self.a_max, other.a_max), min(self.j_max, other.j_max))

    def __neg__(self) -> "MTermSeries":
        return MTermSeries({k: -c for k, c in self.terms.items()}, self.a_max, self.j_max)

    def __sub__(self, other: "MTermSeries") -> "MTermSeries":
        return self + (-other)

    def __mul__(self, c) -> "MTermSeries":
        return MTermSeries({k: v * c for k, v in self.terms.items()}, self.a_max, self.j_max)

    __rmul__ = __mul__

    def evaluate(self, m):
        m = mpmath.mpf(m)
        L = mpmath.log(m)
        w = mpmath.log(L)
        return mpmath.fsum(c(w) / (m**a * L**j) for (a, j), c in self.terms.items())

    def __repr__(self) -> str:
        inner = {f"{a},{j}": str(c) for (a, j), c in self.terms.items()}
        return f"MTermSeries({inner}, a_max={self.a_max}, j_max={self.j_max})"

    def __str__(self) -> str:
        def mono(a, j):
            m = "" if a == 0 else ("m" if a == 1 else f"m^{a}")
            lg = "" if j == 0 else ("log m" if j == 1 else f"log^{j} m")
            den = " ".join(x for x in (m, lg) if x)
            return f"/({den})" if den else ""
        parts = [f"({c}){mono(a, j)}" for (a, j), c in self.terms.items()]
        return " + ".join(parts) or "0"


def forward_difference(g: AsymSeries, a_max: int = A_MAX, j_max: int = J_MAX) -> MTermSeries:
    """g(m+1) - g(m) for an m-free series g, modulo 1/m^2."""
    out: dict[int, WPolynomial] = {}
    for j, c in g.terms.items():
        d = c.derivative() - c * j
        out[j + 1] = out.get(j + 1, ZERO) + d
    return MTermSeries.from_layer(1, AsymSeries(out, g.order + 1), a_max, j_max)


# -- the lemma constructions ----------------------------------------------------

def log_shift(j_max: int = J_MAX) -> MTermSeries:
    """log(m+1) - log m = 1/m (mod 1/m^2)."""
    return forward_difference(LOG_M, j_max=j_max)


def loglog_shift(j_max: int = J_MAX) -> MTermSeries:
    """log log(m+1) - log log m = 1/(m log m)."""
    return forward_difference(W_SERIES, j_max=j_max)


def shift_difference(C: WPolynomial, k: int, j_max: int | None = None) -> MTermSeries:
    """C_m/log^k m - C_(m+1)/log^k (m+1) = (kC - C')/(m log^(k+1) m) + O(1/m^2)."""
    if k < 1:
        raise ValueError("shift_difference needs k >= 1")
    jm = k + 2 if j_max is None else j_max
    return -forward_difference(AsymSeries.monomial(k, C, order=10**9), j_max=jm)


def pm_expansion(j_max: int = 1) -> AsymSeries:
    """f(m) with p_m = m f(m): log m + P0 + P1/log m, exact to the given power."""
    if j_max < 0:
        raise ValueError("j_max must be >= 0")
    if j_max > 1:
        raise UnsupportedOrderError("only P0 and P1 are available; j_max <= 1")
    terms = {-1: ONE, 0: P0, 1: P1}
    return AsymSeries({j: c for j, c in terms.items() if j <= j_max}, j_max + 1)


def f_over_log() -> AsymSeries:
    """f(m)/log m = 1 + P0 u + P1 u^2 + O(u^3)."""
    return pm_expansion(1).shift_u(1)


def log_f_minus_w() -> AsymSeries:
    """log f(m) - log log m = log(1 + P0 u + P1 u^2)."""
    return (f_over_log() - 1).log1p()


def reciprocal_pm(j_max: int = J_MAX) -> MTermSeries:
    """1/p_m = (1/(m log m)) (1 - P0 u + (P0^2 - P1) u^2) + O(1/(m log^4 m))."""
    return MTermSeries.from_layer(1, f_over_log().reciprocal().shift_u(1), j_max=j_max)


def reciprocal_pm_shift(j_max: int = J_MAX) -> MTermSeries:
    """1/p_(m+1) - 1/p_m: its leading order is 1/(m^2 log^2 m), so zero here."""
    lay = reciprocal_pm(j_max).layer(1)
    # the difference of an O(1/m) quantity is O(1/m^2): nothing survives
    return MTermSeries({(2, j + 1): c for j, c in lay.terms.items()}, j_max=j_max)


def log_pm_series() -> AsymSeries:
    """log p_m - log m = w + log(1 + P0 u + P1 u^2)."""
    return W_SERIES + log_f_minus_w()


def log_pm_shift(variant: str = "consistent", j_max: int = J_MAX) -> MTermSeries:
    """log p_(m+1) - log p_m.

    'consistent' applies the shift calculus to log p_m; 'displayed' is the
    printed form (1/m)(1 + u) - (P0' - P0) u^2 / m, known only through u^2.
    """
    if variant == "consistent":
        return forward_difference(LOG_M + log_pm_series(), j_max=j_max)
    if variant == "displayed":
        lay = AsymSeries({0: ONE, 1: ONE, 2: -(P0.derivative() - P0)}, 3)
        return MTermSeries.from_layer(1, lay, j_max=j_max)
    raise ValueError(f"unknown variant {variant!r}")


def inv_log_pm(variant: str = "consistent") -> AsymSeries:
    """1/log p_m; 'displayed' is u (1 - w u) + O(u^3)."""
    if variant == "consistent":
        # log p_m = u^-1 (1 + w u + u log(1 + P0 u + P1 u^2))
        inner = (W_SERIES + log_f_minus_w()).shift_u(1)
        return (inner + 1).reciprocal().shift_u(1)
    if variant == "displayed":
        return AsymSeries({1: ONE, 2: -W}, 3)
    raise ValueError(f"unknown variant {variant!r}")


def loglog_pm_shift(variant: str = "consistent", j_max: int = J_MAX) -> MTermSeries:
    """log log p_(m+1) - log log p_m.

    Variants: 'consistent' (shift calculus on log log p_m), 'statement'
    (as stated, +(P0'-P0)/(m log^3 m)), 'proof' (the proof's last line,
    -(P0'-P0)/(m log^3 m)), 'product' (displayed Lemma-28 form times
    displayed 1/log p_m, expanded to u^3 as the proof does).
    """
    if variant == "consistent":
        loglog = W_SERIES + ((W_SERIES + log_f_minus_w()).shift_u(1)).log1p()
        return forward_difference(loglog, j_max=j_max)
    d = P0.derivative() - P0
    if variant in ("statement", "proof"):
        s = 1 if variant == "statement" else -1
        lay = AsymSeries({1: ONE, 2: ONE - W, 3: d * s - W}, 4)
        return MTermSeries.from_layer(1, lay, j_max=j_max)
    if variant == "product":
        lps = log_pm_shift("displayed").layer(1)
        return MTermSeries.from_layer(1, lps.mul(inv_log_pm("displayed"), order=j_max),
                                      j_max=j_max)
    raise ValueError(f"unknown variant {variant!r}")


def series_product(shift: MTermSeries, factor: AsymSeries, j_max: int = J_MAX,
                   order: int | None = None) -> MTermSeries:
    """(a=1 layer of ``shift``) * ``factor``, as an MTermSeries."""
    prod = shift.layer(1).with_order(shift.j_max).mul(factor, order)
    return MTermSeries.from_layer(1, prod, j_max=j_max)


# -- smooth model for numeric checks -------------------------------------------

def smooth_pm(m):
    """m (log m + P0 + P1/log m) evaluated in mpmath."""
    m = mpmath.mpf(m)
    L = mpmath.log(m)
    w = mpmath.log(L)
    return m * (L + P0(w) + P1(w) / L)


@dataclass(frozen=True)
class ShiftIdentity:
    """A symbolic difference identity and its exact numeric left side."""

    name: str
    symbolic: MTermSeries
    exact: object  # callable m -> mpf
    discarded: object  # callable m -> mpf, size of the first dropped order
