"""Continued-fraction remainders ``r_n = (n*z + v) + n^2 / r_{n+1}``.

Values are certified with outward-rounded intervals (``mpmath.iv``).  The
tail is enclosed by ``c_N < r_N < c_N + N^2/c_{N+1}`` (all later remainders
are positive), and the backward map contracts that enclosure by roughly
``1/alpha^2`` per step, so a modest extra depth gives many digits.  Forward
iteration of the shift map expands errors by ``alpha^2`` per step; its
precision is budgeted before starting.
"""
from __future__ import annotations

import math
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction

import mpmath
from mpmath import iv

from .errors import DivergenceError, ParameterError, PrecisionError
from .quadratic import QuadraticNumber, golden_ratio, sqrt

__all__ = [
    "CFracSpec",
    "HighPrecisionValue",
    "metallic_mean",
    "asymptotic_intercept",
    "remainder_r1",
    "remainders",
    "shift_iterate",
    "BDSReport",
    "check_bds_conjecture",
    "WythoffReport",
    "check_wythoff_s1",
    "WYTHOFF_S1_DIGITS",
]

WYTHOFF_S1_DIGITS = "1.910418439737904"
MAX_DEPTH = 1 << 20


def metallic_mean(j: int) -> QuadraticNumber:
    if j < 1:
        raise ParameterError("j must be >= 1")
    return (j + sqrt(j * j + 4)) / 2


def asymptotic_intercept(z: int, v) -> QuadraticNumber:
    """``beta = (v*alpha^2 - alpha)/(alpha^2 + 1)`` with ``alpha = metallic_mean(z)``."""
    a = metallic_mean(z)
    v = QuadraticNumber.coerce(v)
    return (v * a * a - a) / (a * a + 1)


@dataclass(frozen=True)
class CFracSpec:
    """Partial numerators ``n^2`` and denominators ``n*z + v``."""

    z: int
    v: QuadraticNumber = field(default_factory=lambda: QuadraticNumber(-1))

    def __post_init__(self):
        if not isinstance(self.z, int) or self.z < 1:
            raise ParameterError("z must be a positive integer")
        object.__setattr__(self, "v", QuadraticNumber.coerce(self.v))

    @classmethod
    def bds(cls, j: int) -> "CFracSpec":
        return cls(j, QuadraticNumber(-1))

    @classmethod
    def wythoff(cls) -> "CFracSpec":
        return cls(1, golden_ratio() - 1)

    @property
    def alpha(self) -> QuadraticNumber:
        return metallic_mean(self.z)

    @property
    def beta(self) -> QuadraticNumber:
        return asymptotic_intercept(self.z, self.v)

    def first_positive(self) -> int:
        """Smallest ``n0`` with ``c_n > 0`` for all ``n >= n0``."""
        n = 1
        while self.z * n + self.v <= 0:
            n += 1
        return n

    def contraction_digits(self) -> float:
        """Approximate digits gained per backward step (``log10 alpha^2``)."""
        return 2 * math.log10(float(self.alpha))


@dataclass(frozen=True)
class HighPrecisionValue:
    """A real number known to lie in ``[lower, upper]``."""

    interval: object  # mpmath.iv.mpf

    @property
    def lower(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self.interval._mpi_[0])

    @property
    def upper(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self.interval._mpi_[1])

    @property
    def prec(self) -> int:
        """Bits needed to hold both endpoints."""
        return max(self.interval._mpi_[0][3], self.interval._mpi_[1][3], 53)

    @property
    def mid(self) -> mpmath.mpf:
        with mpmath.workprec(self.prec + 8):
            return (self.lower + self.upper) / 2

    @property
    def radius(self) -> mpmath.mpf:
        with mpmath.workprec(self.prec + 8):
            return (self.upper - self.lower) / 2

    def __float__(self):
        return float(self.mid)

    def contains(self, x) -> bool:
        return self.lower <= x <= self.upper

    def floor(self) -> int | None:
        """Certified floor, or ``None`` when the interval straddles an integer."""
        lo, hi = int(mpmath.floor(self.lower)), int(mpmath.floor(self.upper))
        return lo if lo == hi else None

    def digits(self, count: int) -> str:
        """Decimal string truncated to ``count`` digits after the point, if certified."""
        bits = max(self.prec, _bits(count))
        with mpmath.workprec(bits + 64):
            scale = mpmath.mpf(10) ** count
            a = int(mpmath.floor(self.lower * scale))
            b = int(mpmath.floor(self.upper * scale))
        if a != b:
            raise PrecisionError(f"interval too wide for {count} digits")
        sign = "-" if a < 0 else ""
        s = str(abs(a)).rjust(count + 1, "0")
        return sign + s[:-count] + "." + s[-count:]

    def __str__(self):
        return f"[{mpmath.nstr(self.lower, 20)}, {mpmath.nstr(self.upper, 20)}]"


@contextmanager
def _ivprec(bits: int):
    """Temporarily set the interval context precision."""
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def _lo(x) -> mpmath.mpf:
    return mpmath.mp.make_mpf(x._mpi_[0])


def _hi(x) -> mpmath.mpf:
    return mpmath.mp.make_mpf(x._mpi_[1])


def _width(x) -> mpmath.mpf:
    with mpmath.workprec(iv.prec + 8):
        return _hi(x) - _lo(x)


def _bits(digits: float) -> int:
    return int(math.ceil(digits * 3.3219280948873626)) + 32


def _denominator(spec: CFracSpec, n: int):
    return spec.v.to_mpf(iv) + spec.z * n


def _backward(spec: CFracSpec, depth: int, stop: int):
    """Enclosures of ``r_stop, ..., r_depth`` from the tail bracket at ``depth``."""
    if depth < spec.first_positive():
        raise ParameterError("depth must lie in the positive tail")
    c_n = _denominator(spec, depth)
    c_next = _denominator(spec, depth + 1)
    r = iv.mpf([_lo(c_n), _hi(c_n + iv.mpf(depth) ** 2 / c_next)])
    out = [r]
    for n in range(depth - 1, stop - 1, -1):
        r = _denominator(spec, n) + iv.mpf(n) ** 2 / r
        out.append(r)
    out.reverse()
    return out


def remainder_r1(spec: CFracSpec, target_precision: int, start_depth: int = 16) -> HighPrecisionValue:
    """``r_1`` to within ``10**-target_precision``; depth doubles until two runs agree."""
    if target_precision < 1:
        raise ParameterError("target_precision must be >= 1")
    depth = max(start_depth, spec.first_positive())
    tol = mpmath.mpf(10) ** (-target_precision)
    with _ivprec(_bits(target_precision + 10)):
        prev = None
        while depth <= MAX_DEPTH:
            r1 = _backward(spec, depth, 1)[0]
            if prev is not None and _width(r1) <= tol:
                # enclosures of the same number from two depths must overlap
                lo, hi = max(_lo(prev), _lo(r1)), min(_hi(prev), _hi(r1))
                if lo > hi:
                    raise PrecisionError("successive depths disagree")
                return HighPrecisionValue(iv.mpf([lo, hi]))
            prev = r1
            depth *= 2
    raise PrecisionError(f"no {target_precision}-digit enclosure below depth {MAX_DEPTH}")


def remainders(spec: CFracSpec, count: int, digits: int = 30) -> list[HighPrecisionValue]:
    """Enclosures of ``r_1, ..., r_count``, each narrower than ``10**-digits``."""
    if count < 1:
        raise ParameterError("count must be >= 1")
    tol = mpmath.mpf(10) ** (-digits)
    extra = int(math.ceil((digits + math.log10(count + 10) + 4) / spec.contraction_digits())) + 8
    with _ivprec(_bits(digits + math.log10(count + 10) + 10)):
        while True:
            depth = max(count + extra, spec.first_positive())
            rs = _backward(spec, depth, 1)[:count]
            if all(_width(r) <= tol for r in rs):
                return [HighPrecisionValue(r) for r in rs]
            extra *= 2
            if depth > MAX_DEPTH:
                raise PrecisionError("could not reach the requested width")


def shift_iterate(spec: CFracSpec, r1: HighPrecisionValue | None, count: int, digits: int = 10) -> list[HighPrecisionValue]:
    """``r_{n+1} = n^2 / (r_n - c_n)`` from ``r_1``, certified to ``digits`` at the end.

    With ``r1=None`` the starting value is computed at the budgeted precision
    (``count * log10(alpha^2)`` extra digits).  A supplied ``r1`` must be
    narrow enough for that budget, otherwise :class:`PrecisionError`.
    Non-positive remainders raise :class:`DivergenceError` with the index.
    """
    if count < 1:
        raise ParameterError("count must be >= 1")
    budget = digits + count * spec.contraction_digits() + math.log10(count + 10) + 10
    if r1 is None:
        r1 = remainder_r1(spec, int(math.ceil(budget)))
    out = [r1]
    with _ivprec(_bits(budget)):
        r = iv.mpf([r1.lower, r1.upper])
        for n in range(1, count):
            d = r - _denominator(spec, n)
            if _hi(d) <= 0:
                raise DivergenceError(f"r_{n + 1} is not positive; r_1 is not the admissible start", n + 1)
            if _lo(d) <= 0:
                raise PrecisionError(f"r_{n} - c_{n} straddles 0; r_1 needs more digits")
            r = iv.mpf(n) ** 2 / d
            out.append(HighPrecisionValue(r))
    return out


def _perturbed_divergence(spec: CFracSpec, r1_value, limit: int, bits: int = 256) -> int | None:
    """Index of the first non-positive remainder from a point start, if any."""
    with mpmath.workprec(bits):
        r = mpmath.mpf(r1_value)
        v = spec.v.to_mpf(mpmath.mp)
        for n in range(1, limit):
            d = r - (spec.z * n + v)
            if d <= 0:
                return n + 1
            r = mpmath.mpf(n) ** 2 / d
    return None


# ---------------------------------------------------------------------------
# conjecture checks

@dataclass
class BDSReport:
    j: int
    horizon: int
    agreements: int
    mismatches: list[int]
    uncertain: list[int]
    min_positive_margin: float
    max_scaled_margin: float
    runtime: float
    retried: bool = False
    note: str = "none of these sequences appear in the OEIS"

    @property
    def passed(self) -> bool:
        return not self.mismatches and not self.uncertain and self.min_positive_margin > 0

    def to_dict(self) -> dict:
        return {
            "j": self.j,
            "horizon": self.horizon,
            "agreements": self.agreements,
            "mismatches": list(self.mismatches),
            "uncertain": list(self.uncertain),
            "min_positive_margin": self.min_positive_margin,
            "max_scaled_margin": self.max_scaled_margin,
            "runtime": round(self.runtime, 3),
            "retried": self.retried,
            "status": "PASS" if self.passed else "FAIL",
            "note": self.note,
        }


def _floor_compare(spec: CFracSpec, horizon: int, digits: int, offset=Fraction(0)):
    alpha, beta = spec.alpha, spec.beta
    rs = remainders(spec, horizon, digits)
    agree, mism, unc = 0, [], []
    margin, scaled = None, 0.0
    with _ivprec(_bits(digits + 10)):
        a_iv, b_iv = alpha.to_mpf(iv), beta.to_mpf(iv)
        off = iv.mpf(offset.numerator) / offset.denominator
        for n, r in enumerate(rs, start=1):
            got = HighPrecisionValue(r.interval + off).floor()
            want = (alpha * n + beta + QuadraticNumber.coerce(offset)).floor()
            if got is None:
                unc.append(n)
            elif got == want:
                agree += 1
            else:
                mism.append(n)
            gap = r.interval - (a_iv * n + b_iv)
            lo = float(_lo(gap))
            margin = lo if margin is None else min(margin, lo)
            scaled = max(scaled, float(_hi(gap)) * n)
    return agree, mism, unc, margin, scaled


def check_bds_conjecture(j: int, horizon: int = 1000, precision: int = 30) -> BDSReport:
    """``floor(r_n) == floor(alpha_j*n - (1+alpha_j)/(2*alpha_j - j))`` for ``n <= horizon``.

    ``min_positive_margin`` is the smallest certified lower bound of
    ``r_n - alpha*n - beta``; ``max_scaled_margin`` bounds ``n*(r_n - alpha*n - beta)``.
    """
    if j < 1:
        raise ParameterError("j must be >= 1")
    if horizon < 1:
        raise ParameterError("horizon must be >= 1")
    t0 = time.perf_counter()
    spec = CFracSpec.bds(j)
    a = spec.alpha
    if spec.beta != -(1 + a) / (2 * a - j):
        raise AssertionError("intercept formula mismatch")
    agree, mism, unc, margin, scaled = _floor_compare(spec, horizon, precision)
    retried = False
    if unc:
        retried = True
        agree, mism, unc, margin, scaled = _floor_compare(spec, horizon, 2 * precision)
    return BDSReport(j, horizon, agree, mism, unc, margin, scaled, time.perf_counter() - t0, retried)


@dataclass
class WythoffReport:
    s1: str
    s1_rounded: str
    matches_shown_digits: int
    agrees_14: bool
    fifteenth_digit: str
    horizon: int
    agreements: int
    mismatches: list[int]
    uncertain: list[int]
    runtime: float
    status: str = "CONJECTURE"

    @property
    def passed(self) -> bool:
        return self.agrees_14 and not self.mismatches and not self.uncertain

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["runtime"] = round(self.runtime, 3)
        d["passed"] = self.passed
        return d


def check_wythoff_s1(precision: int = 20, horizon: int = 1000) -> WythoffReport:
    """``s_1`` for ``z = 1, v = phi - 1`` and ``floor(s_n)`` against ``floor(n*phi)``."""
    t0 = time.perf_counter()
    spec = CFracSpec.wythoff()
    s1 = remainder_r1(spec, precision + 2).digits(precision)
    shown = WYTHOFF_S1_DIGITS
    k = 0
    for a, b in zip(s1, shown):
        if a != b:
            break
        k += a.isdigit()
    agree, mism, unc, _, _ = _floor_compare(spec, horizon, 30)
    rounded = str(Decimal(s1).quantize(Decimal(1).scaleb(-(len(shown) - 2)), rounding=ROUND_HALF_EVEN))
    return WythoffReport(
        s1=s1,
        s1_rounded=rounded,
        matches_shown_digits=k,
        agrees_14=k >= 14,
        fifteenth_digit=s1[16] if len(s1) > 16 else "",
        horizon=horizon,
        agreements=agree,
        mismatches=mism,
        uncertain=unc,
        runtime=time.perf_counter() - t0,
    )
