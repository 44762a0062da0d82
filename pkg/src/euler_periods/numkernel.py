"""Exact rationals, error-carrying reals, and the two summation engines.

Everything numerical in this package funnels through this module:

* :func:`bernoulli` produces exact Bernoulli numbers (``B1 = -1/2``
  convention) from the defining recurrence.
* :class:`BigReal` is an arbitrary-precision real paired with an explicit
  absolute error bound and the precision that was requested for it.
* :func:`em_sum` evaluates slowly convergent monotone series by partial sum
  plus integral tail plus Bernoulli correction terms.
* :func:`accel_alt_sum` evaluates alternating series by Chebyshev-weighted
  acceleration, needing O(digits) terms instead of exponentially many.

Error bounds are certified heuristically: the declared bound is the first
omitted correction term (plus a rounding cushion), not an interval
enclosure.  Each engine is exercised against independent references in the
test suite.  Internally all work is done in ``mpmath`` at the requested
precision plus :data:`GUARD_DIGITS` decimal guard digits; identical inputs
produce bit-identical outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

import mpmath
from mpmath import mpf

from .errors import DomainError, PrecisionNotMet

Rational = Fraction

#: Decimal digits carried internally beyond the requested precision.
GUARD_DIGITS = 10

#: Inclusive bounds for the ``prec`` argument accepted throughout.
MIN_PREC = 1
MAX_PREC = 100

ScalarLike = Union[int, Fraction, str, mpf, float]


def working_dps(prec: int) -> int:
    """Internal decimal precision used for a request of ``prec`` digits."""
    return prec + GUARD_DIGITS


def check_prec(prec: int) -> int:
    if not isinstance(prec, int) or not (MIN_PREC <= prec <= MAX_PREC):
        raise DomainError(f"prec must be an integer in [{MIN_PREC}, {MAX_PREC}], got {prec!r}")
    return prec


def as_mpf(x: ScalarLike) -> mpf:
    """Convert to mpf under the ambient precision.  Strings are decimal."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


# ---------------------------------------------------------------------------
# Bernoulli numbers and friends
# ---------------------------------------------------------------------------

_BERNOULLI_CACHE: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number ``B_n`` with the convention ``B_1 = -1/2``.

    Computed by the recurrence ``sum(C(n+1, k) * B_k for k <= n) == 0``,
    which forces ``B_1 = -1/2``; results are cached.
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"bernoulli index must be a non-negative integer, got {n!r}")
    cache = _BERNOULLI_CACHE
    while len(cache) <= n:
        m = len(cache)
        acc = Fraction(0)
        for k, bk in enumerate(cache):
            if bk:
                acc += math.comb(m + 1, k) * bk
        cache.append(-acc / (m + 1))
    return cache[n]


def euler_at_zero(i: int) -> Fraction:
    """Euler polynomial value ``E_i(0)``, the Boole summation weights.

    ``E_i(0) = -2 (2^(i+1) - 1) B_(i+1) / (i+1)`` holds for every i >= 0
    under the ``B_1 = -1/2`` convention (it gives ``E_0(0) = 1``).
    """
    if not isinstance(i, int) or i < 0:
        raise DomainError(f"index must be a non-negative integer, got {i!r}")
    return Fraction(-2) * (2 ** (i + 1) - 1) * bernoulli(i + 1) / (i + 1)


def _mpf_fraction(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


# ---------------------------------------------------------------------------
# BigReal
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BigReal:
    """An arbitrary-precision real with an absolute error bound.

    ``value`` approximates some target ``x`` with ``|value - x| <= err``;
    ``prec`` records the decimal precision that was requested when the
    number was produced.  Successful library operations guarantee
    ``err <= 10**-prec``.  Arithmetic propagates bounds first-order and
    adds a rounding cushion; it never tightens them.
    """

    value: mpf
    err: mpf
    prec: int

    def __post_init__(self) -> None:
        if self.err < 0:
            raise DomainError("error bound must be non-negative")

    # -- constructors -------------------------------------------------

    @classmethod
    def exact(cls, x: ScalarLike, prec: int) -> "BigReal":
        """Wrap a value known exactly up to representation rounding."""
        check_prec(prec)
        with mpmath.workdps(working_dps(prec)):
            v = as_mpf(x)
            cushion = _round_cushion(v, working_dps(prec))
            if isinstance(x, int) or (isinstance(x, Fraction) and v == x):
                cushion = mpf(0)
            return cls(v, cushion, prec)

    @classmethod
    def from_decimal(cls, text: str, prec: int) -> "BigReal":
        """Parse a decimal string; the bound covers conversion rounding."""
        check_prec(prec)
        with mpmath.workdps(working_dps(prec)):
            v = mpf(text.strip())
            return cls(v, _round_cushion(v, working_dps(prec)), prec)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other: ScalarLike | "BigReal") -> "BigReal":
        if isinstance(other, BigReal):
            return other
        return BigReal.exact(other, self.prec)

    def __add__(self, other: ScalarLike | "BigReal") -> "BigReal":
        o = self._coerce(other)
        p = min(self.prec, o.prec)
        wd = working_dps(p)
        with mpmath.workdps(wd):
            v = self.value + o.value
            e = self.err + o.err + _round_cushion(v, wd)
            return BigReal(v, e, p)

    __radd__ = __add__

    def __neg__(self) -> "BigReal":
        # mpmath rounds even unary negation to the ambient precision, so
        # this must run at the value's own working precision to stay exact.
        with mpmath.workdps(working_dps(self.prec)):
            return BigReal(-self.value, self.err, self.prec)

    def __sub__(self, other: ScalarLike | "BigReal") -> "BigReal":
        o = self._coerce(other)
        p = min(self.prec, o.prec)
        wd = working_dps(p)
        with mpmath.workdps(wd):
            v = self.value - o.value
            e = self.err + o.err + _round_cushion(v, wd)
            return BigReal(v, e, p)

    def __rsub__(self, other: ScalarLike) -> "BigReal":
        return self._coerce(other) - self

    def __mul__(self, other: ScalarLike | "BigReal") -> "BigReal":
        o = self._coerce(other)
        p = min(self.prec, o.prec)
        wd = working_dps(p)
        with mpmath.workdps(wd):
            v = self.value * o.value
            e = (abs(self.value) * o.err + abs(o.value) * self.err
                 + self.err * o.err + _round_cushion(v, wd))
            return BigReal(v, e, p)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike | "BigReal") -> "BigReal":
        o = self._coerce(other)
        if o.value == 0:
            raise DomainError("division by zero")
        p = min(self.prec, o.prec)
        wd = working_dps(p)
        with mpmath.workdps(wd):
            v = self.value / o.value
            denom = abs(o.value)
            e = (self.err / denom + abs(v) * o.err / denom
                 + _round_cushion(v, wd))
            return BigReal(v, e, p)

    def __rtruediv__(self, other: ScalarLike) -> "BigReal":
        return self._coerce(other) / self

    def __pow__(self, k: int) -> "BigReal":
        if not isinstance(k, int) or k < 0:
            raise DomainError("BigReal powers must be non-negative integers")
        out = BigReal.exact(1, self.prec)
        for _ in range(k):
            out = out * self
        return out

    def __abs__(self) -> "BigReal":
        with mpmath.workdps(working_dps(self.prec)):
            return BigReal(abs(self.value), self.err, self.prec)

    # -- queries ------------------------------------------------------

    def certified(self) -> bool:
        """True when the bound meets the requested precision."""
        with mpmath.workdps(working_dps(self.prec)):
            return bool(self.err <= mpf(10) ** (-self.prec))

    def demand(self, what: str = "result") -> "BigReal":
        if not self.certified():
            raise PrecisionNotMet(
                f"{what}: certified bound {mpmath.nstr(self.err, 3)} exceeds 1e-{self.prec}")
        return self

    def __repr__(self) -> str:  # debugging aid, not part of the text format
        return (f"BigReal({mpmath.nstr(self.value, self.prec + 2)}, "
                f"err<={mpmath.nstr(self.err, 3)}, prec={self.prec})")


def _round_cushion(v: mpf, wd: int) -> mpf:
    return (1 + abs(v)) * mpf(10) ** (-(wd - 2))


# ---------------------------------------------------------------------------
# Series specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesSpec:
    """Description of a series ``sum(term(k) for k >= 1)``.

    ``term`` must be pure: the same ``k`` evaluated at the same ambient
    precision must give the same value.  ``alternating`` marks series whose
    terms strictly alternate in sign with decreasing magnitude.
    ``power_decay`` is the tail descriptor consumed by :func:`em_sum`: it
    asserts ``term(k) == k**(-power_decay)`` for every ``k`` past the split
    point, which is what makes the integral and derivative corrections
    computable.
    """

    term: Callable[[int], mpf]
    alternating: bool = False
    power_decay: ScalarLike | None = None


# ---------------------------------------------------------------------------
# Alternating-series acceleration
# ---------------------------------------------------------------------------


def _cvz(mags: Sequence[mpf], n: int) -> mpf:
    # Chebyshev-weighted estimate of sum((-1)^k * mags[k]); the weights
    # converge like (3 + sqrt(8))^-n for totally monotone magnitudes.
    d = (3 + 2 * mpmath.sqrt(2)) ** n
    d = (d + 1 / d) / 2
    b = mpf(-1)
    c = -d
    s = mpf(0)
    for k in range(n):
        c = b - c
        s += c * mags[k]
        b = b * ((k + n) * (k - n)) / (mpf(2 * k + 1) / 2 * (k + 1))
    return s / d


def accel_alt_sum(spec: SeriesSpec, prec: int) -> BigReal:
    """Evaluate an alternating series to ``prec`` certified digits.

    The estimate is computed twice with different term counts; the declared
    bound is a multiple of the discrepancy plus rounding.  Series whose
    terms become identically zero are summed directly (a finite sum is its
    own best acceleration).

    Raises :class:`PrecisionNotMet` when the bound cannot be certified.
    """
    check_prec(prec)
    if not spec.alternating:
        raise DomainError("accel_alt_sum requires an alternating SeriesSpec")
    wd = working_dps(prec)
    with mpmath.workdps(wd):
        n = int(1.35 * wd) + 6
        n2 = n + 8
        terms = [spec.term(k) for k in range(1, n2 + 1)]

        # Finite series short-circuit: two consecutive zero terms are read
        # as "the tail is identically zero".
        for j in range(len(terms) - 1):
            if terms[j] == 0 and terms[j + 1] == 0:
                v = mpmath.fsum(terms[:j])
                out = BigReal(v, _round_cushion(v, wd) * max(1, j), prec)
                return out.demand("accel_alt_sum")

        sign = 1 if terms[0] >= 0 else -1
        for j in range(min(10, n) - 1):
            if terms[j] * terms[j + 1] > 0:
                raise DomainError("series terms do not alternate in sign")
        mags = [abs(t) for t in terms]
        s1 = sign * _cvz(mags, n)
        s2 = sign * _cvz(mags, n2)
        err = 4 * abs(s1 - s2) + _round_cushion(s2, wd) * n2
        return BigReal(s2, err, prec).demand("accel_alt_sum")


# ---------------------------------------------------------------------------
# Euler-Maclaurin summation
# ---------------------------------------------------------------------------


def _pochhammer(s: mpf, m: int) -> mpf:
    out = mpf(1)
    for i in range(m):
        out *= s + i
    return out


def em_sum(spec: SeriesSpec, n_split: int, bernoulli_terms: int, prec: int) -> BigReal:
    """Partial sum to ``n_split``, plus integral tail, plus Bernoulli terms.

    For ``f(k) = k**-s`` (``s`` from ``spec.power_decay``) this computes::

        sum(f(k), k=1..n) + I(n) - f(n)/2
            + sum(B_2j/(2j)! * poch(s, 2j-1) * n**(1-s-2j), j=1..J)

    where ``I(n)`` is ``n**(1-s)/(s-1)`` for ``s > 1`` and ``-log(n)`` for
    ``s == 1`` (the regularized companion, whose limit is the constant the
    ``s == 1`` series defines).  The declared bound is the magnitude of the
    first omitted Bernoulli term plus rounding.

    Raises :class:`PrecisionNotMet` when that bound exceeds ``10**-prec``.
    """
    check_prec(prec)
    if spec.power_decay is None:
        raise DomainError("em_sum requires a SeriesSpec with a power_decay descriptor")
    if spec.alternating:
        raise DomainError("em_sum handles monotone series; use accel_alt_sum")
    if not isinstance(n_split, int) or n_split < 1:
        raise DomainError(f"n_split must be a positive integer, got {n_split!r}")
    if not isinstance(bernoulli_terms, int) or bernoulli_terms < 0:
        raise DomainError(f"bernoulli_terms must be >= 0, got {bernoulli_terms!r}")

    wd = working_dps(prec)
    with mpmath.workdps(wd):
        s = as_mpf(spec.power_decay)
        if s < 1:
            raise DomainError("power_decay < 1 does not define a convergent tail")
        n = mpf(n_split)
        partial = mpmath.fsum(spec.term(k) for k in range(1, n_split + 1))
        if s == 1:
            integral = -mpmath.log(n)
        else:
            integral = n ** (1 - s) / (s - 1)
        value = partial + integral - n ** (-s) / 2
        for j in range(1, bernoulli_terms + 1):
            b = _mpf_fraction(bernoulli(2 * j) / math.factorial(2 * j))
            value += b * _pochhammer(s, 2 * j - 1) * n ** (1 - s - 2 * j)
        jn = bernoulli_terms + 1
        bn = _mpf_fraction(bernoulli(2 * jn) / math.factorial(2 * jn))
        first_omitted = abs(bn * _pochhammer(s, 2 * jn - 1) * n ** (1 - s - 2 * jn))
        err = first_omitted + _round_cushion(value, wd) * (n_split + bernoulli_terms)
        return BigReal(value, err, prec).demand("em_sum")


def em_parameters(prec: int) -> tuple[int, int]:
    """A (n_split, bernoulli_terms) pair adequate for ``prec`` digits.

    The split point grows linearly with the digit count and the number of
    correction terms follows from ``n_split**-2J ~ 10**-digits``; both stay
    small enough that cost is dominated by the ``n_split`` term evaluations.
    """
    check_prec(prec)
    wd = working_dps(prec)
    n_split = max(12, wd)
    terms = int(wd * math.log(10) / (2 * math.log(n_split))) + 2
    return n_split, terms
