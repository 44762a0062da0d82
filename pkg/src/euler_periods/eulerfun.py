"""Zeta, eta-type alternating series, polylogarithms, Euler's constant.

All evaluators return :class:`~euler_periods.numkernel.BigReal` values whose
declared bound meets the requested precision, and every closed-form or
identity claim exposed here is checkable through
:func:`identity_residual`, which recomputes both sides by routes that do
not share code with the primary evaluators.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from typing import Mapping

import mpmath
from mpmath import mpf

from .errors import DomainError, PrecisionNotMet, TooLarge
from .numkernel import (
    BigReal,
    ScalarLike,
    SeriesSpec,
    accel_alt_sum,
    as_mpf,
    bernoulli,
    check_prec,
    em_parameters,
    em_sum,
    working_dps,
)

#: Largest prime bound accepted by the Euler-product residual check.
MAX_PRIME_BOUND = 10_000_000


def zeta(s: ScalarLike, prec: int) -> BigReal:
    """Riemann zeta on the real ray ``s > 1``.

    Evaluated by Euler-Maclaurin summation (partial sum, integral tail,
    Bernoulli corrections).  Raises :class:`DomainError` for ``s <= 1``;
    the ``s = 1`` series is harmonic and has no value to report.
    """
    check_prec(prec)
    wd = working_dps(prec)
    with mpmath.workdps(wd):
        sv = as_mpf(s)
        if not sv > 1:
            raise DomainError(
                f"zeta requires s > 1, got s = {mpmath.nstr(sv, 8)}; "
                "the series diverges there (at s = 1 it is the harmonic series)")
        spec = SeriesSpec(term=lambda k: mpf(k) ** (-sv), power_decay=sv)
        n_split, terms = em_parameters(prec)
        for attempt in range(4):
            try:
                return em_sum(spec, n_split * (2 ** attempt), terms, prec)
            except PrecisionNotMet:
                if attempt == 3:
                    raise
        raise AssertionError("unreachable")


def zeta_even_closed(n: int) -> Fraction:
    """Exact rational ``r`` with ``zeta(2n) == r * pi**(2n)``.

    ``r = (-1)**(n+1) * B_2n * 2**(2n-1) / (2n)!``; for n = 1..3 this gives
    1/6, 1/90, 1/945.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"zeta_even_closed requires an integer n >= 1, got {n!r}")
    return (Fraction((-1) ** (n + 1)) * bernoulli(2 * n) * 2 ** (2 * n - 1)
            / math.factorial(2 * n))


def phi(s: ScalarLike, prec: int) -> BigReal:
    """The alternating series ``sum((-1)**(k-1) * k**-s)`` for ``s > 0``.

    Related to zeta by ``phi(s) = (1 - 2**(1-s)) * zeta(s)`` for ``s > 1``
    and continues it below: ``phi(1) = log 2``.  Evaluated by accelerated
    alternating summation.
    """
    check_prec(prec)
    wd = working_dps(prec)
    with mpmath.workdps(wd):
        sv = as_mpf(s)
        if not sv > 0:
            raise DomainError(f"phi requires s > 0, got s = {mpmath.nstr(sv, 8)}")
        spec = SeriesSpec(term=lambda k: mpf(-1) ** (k - 1) * mpf(k) ** (-sv),
                          alternating=True)
        return accel_alt_sum(spec, prec)


# ---------------------------------------------------------------------------
# Polylogarithms
# ---------------------------------------------------------------------------


def _li_direct(n: int, z: mpf, wd: int) -> tuple[mpf, mpf]:
    """Direct power series for Li_n(z), |z| < 1.  Returns (value, bound)."""
    az = abs(z)
    if az == 0:
        return mpf(0), mpf(0)
    target = mpf(10) ** (-(wd - 2))
    value = mpf(0)
    p = mpf(1)
    k = 0
    while True:
        k += 1
        p *= z
        value += p / mpf(k) ** n
        tail = abs(p) * az / ((1 - az) * mpf(k + 1) ** n)
        if tail < target:
            return value, tail + (1 + abs(value)) * target * k
        if k > 200 * wd:
            raise PrecisionNotMet("polylog series did not reach the target tail bound")


def polylog(n: int, z: ScalarLike, prec: int) -> BigReal:
    """Real polylogarithm ``Li_n(z)`` for integer ``n >= 1``, ``z in [-1, 1]``.

    Routes: the defining series for ``|z| <= 1/2``; accelerated alternating
    summation for ``z in [-1, -1/2)``; ``-log(1 - z)`` for ``n = 1``; the
    endpoint values ``Li_n(1) = zeta(n)`` and ``Li_n(-1) = -phi(n)``; and
    for ``n = 2`` on ``(1/2, 1)`` the reflection through ``Li_2(1 - z)``.
    Other arguments in ``(1/2, 1)`` with ``n >= 3`` are not supported and
    raise :class:`DomainError`, as do ``|z| > 1`` and ``(n, z) = (1, 1)``.
    """
    check_prec(prec)
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"polylog order must be an integer >= 1, got {n!r}")
    wd = working_dps(prec)
    with mpmath.workdps(wd):
        zv = as_mpf(z)
        if abs(zv) > 1:
            raise DomainError(f"polylog requires |z| <= 1, got z = {mpmath.nstr(zv, 8)}")
        if zv == 1:
            if n == 1:
                raise DomainError("Li_1(1) is the harmonic series; no value to report")
            return zeta(n, prec)
        if n == 1:
            v = -mpmath.log(1 - zv)
            return BigReal(v, (1 + abs(v)) * mpf(10) ** (-(wd - 2)), prec).demand("polylog")
        if zv == -1:
            return -phi(n, prec)
        if abs(zv) <= mpf(1) / 2:
            v, bound = _li_direct(n, zv, wd)
            return BigReal(v, bound, prec).demand("polylog")
        if zv < 0:
            spec = SeriesSpec(term=lambda k: zv ** k / mpf(k) ** n, alternating=True)
            return accel_alt_sum(spec, prec)
        if n == 2:
            # Li_2(z) + Li_2(1-z) + log(z) log(1-z) = zeta(2), with 1-z in (0, 1/2).
            inner = prec + 4
            wd2 = working_dps(inner)
            with mpmath.workdps(wd2):
                w = 1 - as_mpf(z)
                li_w, bound_w = _li_direct(2, w, wd2)
                v = mpmath.pi ** 2 / 6 - mpmath.log(1 - w) * mpmath.log(w) - li_w
                bound = bound_w + (1 + abs(v)) * mpf(10) ** (-(wd2 - 3))
            return BigReal(v, bound, prec).demand("polylog")
        raise DomainError(
            f"Li_{n} is only evaluated on [-1, 1/2] and the endpoint 1; got z = {mpmath.nstr(zv, 8)}")


# ---------------------------------------------------------------------------
# Euler's constant
# ---------------------------------------------------------------------------


def gamma_const(prec: int, method: str = "EM") -> BigReal:
    """Euler's constant by either of two independent routes.

    ``"EM"`` runs Euler-Maclaurin on the harmonic series against ``log n``;
    ``"ZETA_SERIES"`` sums ``sum((-1)**n * zeta(n)/n, n >= 2)`` by
    alternating acceleration.  The two must agree within their combined
    bounds, which the test suite enforces.
    """
    check_prec(prec)
    if method == "EM":
        spec = SeriesSpec(term=lambda k: mpf(1) / k, power_decay=1)
        n_split, terms = em_parameters(prec)
        return em_sum(spec, n_split, terms, prec)
    if method == "ZETA_SERIES":
        inner = min(prec + 6, 100)

        def term(k: int) -> mpf:
            return mpf(-1) ** (k - 1) * zeta(k + 1, inner).value / (k + 1)

        spec = SeriesSpec(term=term, alternating=True)
        return accel_alt_sum(spec, prec)
    raise DomainError(f"unknown gamma_const method {method!r}; use 'EM' or 'ZETA_SERIES'")


# ---------------------------------------------------------------------------
# Identity residuals
# ---------------------------------------------------------------------------


class IdentityKind(str, Enum):
    DILOG_REFLECTION = "DILOG_REFLECTION"
    COTANGENT = "COTANGENT"
    EULER_PRODUCT = "EULER_PRODUCT"
    PHI_FUNCEQ = "PHI_FUNCEQ"


def _primes_upto(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, int(limit ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p:limit + 1:p] = b"\x00" * len(range(p * p, limit + 1, p))
    return [i for i in range(2, limit + 1) if sieve[i]]


def _param(params: Mapping[str, object], key: str) -> object:
    if key not in params:
        raise DomainError(f"identity check is missing parameter {key!r}")
    return params[key]


def identity_residual(kind: IdentityKind | str, params: Mapping[str, object], prec: int) -> BigReal:
    """Magnitude of the defect of a classical identity, with its bound.

    For exact identities the residual is numerical noise and shrinks with
    ``prec``; for truncated ones (the cotangent expansion, the finite
    Euler product) it measures the truncation and shrinks as the
    truncation parameter grows.

    Parameters per kind:

    * ``DILOG_REFLECTION``: ``x`` in (0, 1).  Checks
      ``Li2(x) + Li2(1-x) + log x log(1-x) = pi**2/6`` with both
      dilogarithms from the defining series.
    * ``COTANGENT``: ``x`` in (0, pi), ``terms`` >= 1.  Checks
      ``x cot x = 1 - 2 sum(zeta(2n) (x/pi)**2n)`` with the even zetas
      taken from their exact rational closed forms.
    * ``EULER_PRODUCT``: ``s`` > 1, ``prime_bound`` >= 2.  Checks
      ``prod(1 - p**-s) * zeta(s) = 1`` over primes up to the bound.
    * ``PHI_FUNCEQ``: ``s`` in (0, 1).  Checks the reflection formula
      ``phi(1-s)/phi(s) = -Gamma(s) (2**s - 1) cos(pi s / 2) /
      ((2**(s-1) - 1) pi**s)`` as a ratio-minus-one residual.
    """
    check_prec(prec)
    kind = IdentityKind(kind)
    wd = working_dps(prec)

    if kind is IdentityKind.DILOG_REFLECTION:
        with mpmath.workdps(wd):
            x = as_mpf(_param(params, "x"))
            if not (0 < x < 1):
                raise DomainError(f"dilog reflection requires x in (0, 1), got {mpmath.nstr(x, 8)}")
            li_x, b1 = _li_direct(2, x, wd)
            li_1mx, b2 = _li_direct(2, 1 - x, wd)
            resid = abs(li_x + li_1mx + mpmath.log(x) * mpmath.log(1 - x) - mpmath.pi ** 2 / 6)
            err = b1 + b2 + (1 + resid) * mpf(10) ** (-(wd - 3))
            return BigReal(resid, err, prec)

    if kind is IdentityKind.COTANGENT:
        terms = _param(params, "terms")
        if not isinstance(terms, int) or terms < 1:
            raise DomainError(f"cotangent check needs an integer terms >= 1, got {terms!r}")
        with mpmath.workdps(wd):
            x = as_mpf(_param(params, "x"))
            if not (0 < x < mpmath.pi):
                raise DomainError("cotangent check requires x in (0, pi)")
            # 2 * sum(zeta(2n) (x/pi)^2n) == 2 * sum(r_n x^2n) with r_n exact.
            acc = mpf(0)
            for m in range(1, terms + 1):
                r = zeta_even_closed(m)
                acc += mpf(r.numerator) / r.denominator * x ** (2 * m)
            resid = abs(x * mpmath.cot(x) - 1 + 2 * acc)
            err = (1 + resid + 2 * acc) * mpf(10) ** (-(wd - 3)) * terms
            return BigReal(resid, err, prec)

    if kind is IdentityKind.EULER_PRODUCT:
        bound = _param(params, "prime_bound")
        if not isinstance(bound, int) or bound < 2:
            raise DomainError(f"prime_bound must be an integer >= 2, got {bound!r}")
        if bound > MAX_PRIME_BOUND:
            raise TooLarge(f"prime_bound {bound} exceeds the cap {MAX_PRIME_BOUND}")
        z = None
        with mpmath.workdps(wd):
            s = as_mpf(_param(params, "s"))
            if not s > 1:
                raise DomainError("Euler product requires s > 1")
            z = zeta(s, prec)
            prod = mpf(1)
            primes = _primes_upto(bound)
            for p in primes:
                prod *= 1 - mpf(p) ** (-s)
            resid = abs(prod * z.value - 1)
            err = prod * z.err + (1 + resid) * mpf(10) ** (-(wd - 3)) * max(1, len(primes) // 100)
            return BigReal(resid, err, prec)

    if kind is IdentityKind.PHI_FUNCEQ:
        with mpmath.workdps(wd):
            s = as_mpf(_param(params, "s"))
            if not (0 < s < 1):
                raise DomainError(f"functional equation checked on s in (0, 1), got {mpmath.nstr(s, 8)}")
            lhs_num = phi(1 - s, prec + 2)
            lhs_den = phi(s, prec + 2)
            rhs = (-mpmath.gamma(s) * (2 ** s - 1) * mpmath.cos(mpmath.pi * s / 2)
                   / ((2 ** (s - 1) - 1) * mpmath.pi ** s))
            ratio = lhs_num.value / (lhs_den.value * rhs)
            resid = abs(ratio - 1)
            rel = (lhs_num.err / abs(lhs_num.value) + lhs_den.err / abs(lhs_den.value))
            err = abs(ratio) * rel + (1 + resid) * mpf(10) ** (-(wd - 3))
            return BigReal(resid, err, prec)

    raise AssertionError("unreachable")
