"""Directed-rounding interval arithmetic on top of MPFR (via gmpy2).

Every Interval holds two MPFR numbers: ``lo`` rounded toward -inf and
``hi`` rounded toward +inf.  The four basic operations are computed with
the matching MPFR rounding mode, which is exact-directed.  Elementary
functions use the correctly rounded MPFR kernels in the directed modes and
then widen by one more ulp on each side, so the documented slack per call
is at most two ulps (relative 2**(1-PREC)).

Working precision defaults to 128 bits and can be overridden through the
ZETALINE_PREC_BITS environment variable (read once at import; minimum 80).
"""

import decimal
import enum
import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2

__all__ = [
    "PREC", "Interval", "iv", "as_interval", "Status", "CertOutcome",
    "certify_leq", "certify_lt", "certify_exact_leq", "log_factorial",
    "imax", "imin", "hull", "fmt_lo", "fmt_hi", "PI", "LOG2", "EULER",
    "E", "TWO_PI", "SQRT_PI", "SQRT_2PI", "LOG_2PI", "DomainError",
    "PreconditionError", "require_positive", "bernoulli",
]

PREC = max(80, int(os.environ.get("ZETALINE_PREC_BITS", "128")))

_DN = gmpy2.context(precision=PREC, round=gmpy2.RoundDown)
_UP = gmpy2.context(precision=PREC, round=gmpy2.RoundUp)
_ZERO = gmpy2.mpfr(0)
_ZERO_Z = gmpy2.mpz(0)

_DEC_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def _mp(x, ctx):
    """Convert an exact Python number to mpfr rounded in ``ctx``'s direction."""
    if isinstance(x, int) or type(x) is type(_ZERO_Z):
        return ctx.add(_ZERO, gmpy2.mpz(x))
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError("non-finite float")
        return ctx.plus(gmpy2.mpfr(x, 53))
    if isinstance(x, Fraction):
        return _frac(x, ctx)
    raise TypeError(f"cannot convert {type(x).__name__} exactly")


def _frac(x, ctx):
    # exact division of two big integers with directed rounding
    return ctx.div(gmpy2.mpz(x.numerator), gmpy2.mpz(x.denominator))


class Interval:
    """Closed interval [lo, hi] enclosing an exact real.  Immutable."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        if isinstance(lo, gmpy2.mpfr) and isinstance(hi, gmpy2.mpfr):
            a, b = lo, hi
        else:
            a = lo if isinstance(lo, gmpy2.mpfr) else (
                _frac(lo, _DN) if isinstance(lo, Fraction) else _mp(lo, _DN))
            b = hi if isinstance(hi, gmpy2.mpfr) else (
                _frac(hi, _UP) if isinstance(hi, Fraction) else _mp(hi, _UP))
        if gmpy2.is_nan(a) or gmpy2.is_nan(b):
            raise ArithmeticError("NaN endpoint")
        if a > b:
            raise ValueError(f"empty interval [{a}, {b}]")
        object.__setattr__(self, "lo", a)
        object.__setattr__(self, "hi", b)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    def __reduce__(self):
        return (_rebuild, (fmt_lo(self.lo, 45), fmt_hi(self.hi, 45)))

    # --- inspection -------------------------------------------------------
    @property
    def mid(self):
        return float((self.lo + self.hi) / 2)

    @property
    def width(self):
        return _UP.sub(self.hi, self.lo)

    def rel_width(self):
        m = max(abs(self.lo), abs(self.hi))
        return float(self.width / m) if m else 0.0

    def contains(self, x):
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, Fraction):
            return _to_frac(self.lo) <= x <= _to_frac(self.hi)
        return self.lo <= x <= self.hi

    def is_positive(self):
        return self.lo > 0

    def __float__(self):
        return self.mid

    def __repr__(self):
        return f"Interval({fmt_lo(self.lo, 20)}, {fmt_hi(self.hi, 20)})"

    # --- arithmetic ---------------------------------------------------------
    def __neg__(self):
        # negation is exact at equal precision; the bare operator would use
        # gmpy2's global 53-bit context
        return Interval(_DN.minus(self.hi), _UP.minus(self.lo))

    def __pos__(self):
        return self

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(gmpy2.mpfr(0), max(_UP.minus(self.lo), self.hi))

    def __add__(self, other):
        o = as_interval(other)
        if o is NotImplemented:
            return o
        return Interval(_DN.add(self.lo, o.lo), _UP.add(self.hi, o.hi))

    __radd__ = __add__

    def __sub__(self, other):
        o = as_interval(other)
        if o is NotImplemented:
            return o
        return Interval(_DN.sub(self.lo, o.hi), _UP.sub(self.hi, o.lo))

    def __rsub__(self, other):
        o = as_interval(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = as_interval(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.lo, self.hi, o.lo, o.hi
        if a >= 0 and c >= 0:
            return Interval(_DN.mul(a, c), _UP.mul(b, d))
        los = (_DN.mul(a, c), _DN.mul(a, d), _DN.mul(b, c), _DN.mul(b, d))
        his = (_UP.mul(a, c), _UP.mul(a, d), _UP.mul(b, c), _UP.mul(b, d))
        return Interval(min(los), max(his))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = as_interval(other)
        if o is NotImplemented:
            return o
        c, d = o.lo, o.hi
        if c <= 0 <= d:
            raise ZeroDivisionError("divisor interval contains zero")
        a, b = self.lo, self.hi
        if a >= 0 and c > 0:
            return Interval(_DN.div(a, d), _UP.div(b, c))
        los = (_DN.div(a, c), _DN.div(a, d), _DN.div(b, c), _DN.div(b, d))
        his = (_UP.div(a, c), _UP.div(a, d), _UP.div(b, c), _UP.div(b, d))
        return Interval(min(los), max(his))

    def __rtruediv__(self, other):
        o = as_interval(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, n):
        if isinstance(n, int):
            return self._ipow(n)
        return self.pow(n)

    def _ipow(self, n):
        if n == 0:
            return Interval(1)
        if n < 0:
            return 1 / self._ipow(-n)
        a, b = self.lo, self.hi
        if a >= 0:
            return Interval(_DN.pow(a, n), _UP.pow(b, n))
        if n % 2 == 1:
            return Interval(_DN.pow(a, n), _UP.pow(b, n))
        if b <= 0:
            return Interval(_DN.pow(b, n), _UP.pow(a, n))
        return Interval(gmpy2.mpfr(0), max(_UP.pow(a, n), _UP.pow(b, n)))

    # --- elementary functions ------------------------------------------------
    def exp(self):
        lo = _DN.next_below(_DN.exp(self.lo))
        if lo < 0:
            lo = gmpy2.mpfr(0)
        return Interval(lo, _UP.next_above(_UP.exp(self.hi)))

    def log(self):
        if self.lo <= 0:
            raise ValueError("log of non-positive interval")
        return Interval(_DN.next_below(_DN.log(self.lo)),
                        _UP.next_above(_UP.log(self.hi)))

    def log1p(self):
        if self.lo <= -1:
            raise ValueError("log1p domain")
        return Interval(_DN.next_below(_DN.log1p(self.lo)),
                        _UP.next_above(_UP.log1p(self.hi)))

    def sqrt(self):
        if self.lo < 0:
            raise ValueError("sqrt of negative interval")
        lo = _DN.next_below(_DN.sqrt(self.lo)) if self.lo > 0 else gmpy2.mpfr(0)
        return Interval(lo, _UP.next_above(_UP.sqrt(self.hi)))

    def root(self, n):
        """n-th root for positive integer n."""
        if self.lo < 0:
            raise ValueError("root of negative interval")
        lo = _DN.next_below(_DN.rootn(self.lo, n)) if self.lo > 0 else gmpy2.mpfr(0)
        return Interval(lo, _UP.next_above(_UP.rootn(self.hi, n)))

    def pow(self, y):
        """x**y for x > 0 and an arbitrary (interval / rational) exponent."""
        if isinstance(y, int):
            return self._ipow(y)
        if isinstance(y, Fraction) and y.denominator == 1:
            return self._ipow(y.numerator)
        y = as_interval(y)
        if self.lo <= 0:
            raise ValueError("pow needs a positive base")
        # x**y is monotone in each argument separately, so corners suffice
        los = [_DN.pow(x, e) for x in (self.lo, self.hi) for e in (y.lo, y.hi)]
        his = [_UP.pow(x, e) for x in (self.lo, self.hi) for e in (y.lo, y.hi)]
        lo = _DN.next_below(min(los))
        if lo < 0:
            lo = gmpy2.mpfr(0)
        return Interval(lo, _UP.next_above(max(his)))

    def cot(self):
        """cot on a sub-interval of (0, pi), where it is decreasing."""
        if not (self.lo > 0 and self.hi < PI.lo):
            raise DomainError("cot is only provided on (0, pi)")
        return Interval(_DN.next_below(_DN.cot(self.hi)), _UP.next_above(_UP.cot(self.lo)))

    def lgamma(self):
        """log Gamma(x) for x > 0 via a shifted Stirling series."""
        if self.lo <= 0:
            raise ValueError("lgamma needs x > 0")
        if self.lo >= _LGAMMA_ARGMIN.hi:
            return Interval(_lgamma_point(self.lo).lo, _lgamma_point(self.hi).hi)
        if self.hi <= _LGAMMA_ARGMIN.lo:
            return Interval(_lgamma_point(self.hi).lo, _lgamma_point(self.lo).hi)
        top = max(_lgamma_point(self.lo).hi, _lgamma_point(self.hi).hi)
        return Interval(_LGAMMA_MIN.lo, top)


def _rebuild(lo, hi):
    return iv(lo, hi)


def as_interval(x):
    if isinstance(x, Interval):
        return x
    if isinstance(x, (int, float, Fraction)):
        return Interval(x)
    if isinstance(x, gmpy2.mpfr):
        return Interval(x, x)
    return NotImplemented


def iv(s, hi=None):
    """Enclosure of a decimal literal (or of [s, hi] when two are given)."""
    if hi is not None:
        return Interval(iv(s).lo, iv(hi).hi)
    if isinstance(s, Interval):
        return s
    if not isinstance(s, str):
        out = as_interval(s)
        if out is NotImplemented:
            raise TypeError(f"cannot build an interval from {type(s).__name__}")
        return out
    t = s.strip()
    if not _DEC_RE.match(t):
        raise ValueError(f"malformed decimal literal: {s!r}")
    q = Fraction(decimal.Decimal(t))
    return Interval(_frac(q, _DN), _frac(q, _UP))


def hull(*xs):
    return Interval(min(x.lo for x in xs), max(x.hi for x in xs))


def imax(*xs):
    xs = [as_interval(x) for x in xs]
    return Interval(max(x.lo for x in xs), max(x.hi for x in xs))


def imin(*xs):
    xs = [as_interval(x) for x in xs]
    return Interval(min(x.lo for x in xs), min(x.hi for x in xs))


# --- decimal output ----------------------------------------------------------

def _fmt(x, digits, rounding):
    if gmpy2.is_infinite(x):
        return "inf" if x > 0 else "-inf"
    if x == 0:
        return "0"
    n, d = (int(v) for v in x.as_integer_ratio())
    ctx = decimal.Context(prec=digits, rounding=rounding, Emax=10**9, Emin=-10**9)
    q = ctx.divide(decimal.Decimal(n), decimal.Decimal(d))
    if -7 < q.adjusted() < 21:
        return format(q, "f")
    return format(q, "E")


def fmt_lo(x, digits=20):
    """Decimal string <= x (rounded toward -inf)."""
    return _fmt(x, digits, decimal.ROUND_FLOOR)


def fmt_hi(x, digits=20):
    """Decimal string >= x (rounded toward +inf)."""
    return _fmt(x, digits, decimal.ROUND_CEILING)


# --- certification -----------------------------------------------------------

class Status(str, enum.Enum):
    PROVEN = "Proven"
    REFUTED = "Refuted"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class CertOutcome:
    status: Status
    margin: float
    note: str = ""

    @property
    def proven(self):
        return self.status is Status.PROVEN


def certify_leq(lhs, rhs):
    """Certify lhs <= rhs; Proven only with strict separation of enclosures."""
    a, b = as_interval(lhs), as_interval(rhs)
    if a.hi < b.lo:
        return CertOutcome(Status.PROVEN, float(_DN.sub(b.lo, a.hi)))
    if a.lo > b.hi:
        return CertOutcome(Status.REFUTED, float(_UP.sub(b.hi, a.lo)))
    return CertOutcome(Status.UNDECIDED, float(_DN.sub(b.lo, a.hi)))


# For a strict claim the separation rule is identical.
certify_lt = certify_leq


def certify_exact_leq(a, b):
    """Exact rational comparison (no enclosure width involved)."""
    a, b = Fraction(a), Fraction(b)
    status = Status.PROVEN if a <= b else Status.REFUTED
    return CertOutcome(status, float(b - a), "exact rational")


# --- log-gamma ---------------------------------------------------------------

def bernoulli(n):
    """Bernoulli number B_n as an exact Fraction."""
    return _bernoulli(n)[n]


@lru_cache(maxsize=None)
def _bernoulli(n):
    """B_0..B_n as Fractions (B_1 = -1/2)."""
    b = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        b[m] = Fraction(1, 1) if m == 0 else -sum(
            math.comb(m + 1, j) * b[j] for j in range(m)) / (m + 1)
    return tuple(b)


_STIRLING_TERMS = 20
_STIRLING_SHIFT = 60


def _lgamma_point(x):
    """Enclosure of lgamma at a single mpfr point x > 0."""
    z = Interval(x)
    shift = Interval(0)
    prod = Interval(1)
    while z.lo < _STIRLING_SHIFT:
        prod = prod * z
        z = z + 1
        if prod.hi > 2 ** 500:
            shift = shift + prod.log()
            prod = Interval(1)
    if prod.lo != 1 or prod.hi != 1:
        shift = shift + prod.log()
    bern = _bernoulli(2 * _STIRLING_TERMS + 2)
    s = (z - Fraction(1, 2)) * z.log() - z + LOG_2PI / 2
    zinv2 = 1 / (z * z)
    zp = 1 / z
    for j in range(1, _STIRLING_TERMS + 1):
        s = s + bern[2 * j] / (2 * j * (2 * j - 1)) * zp
        zp = zp * zinv2
    # remainder bounded by the first omitted term for real z > 0
    rem = abs(bern[2 * _STIRLING_TERMS + 2]) / (
        (2 * _STIRLING_TERMS + 2) * (2 * _STIRLING_TERMS + 1)) * zp
    s = s + Interval(_DN.minus(rem.hi), rem.hi)
    return s - shift


def log_factorial(k):
    """Enclosure of log(k!) from the exact integer factorial."""
    if not isinstance(k, int) or k < 0:
        raise ValueError("log_factorial needs an integer k >= 0")
    if k <= 1:
        return Interval(0)
    f = math.factorial(k)
    return Interval(f).log()


# --- constants ---------------------------------------------------------------

def _const(f):
    return Interval(_DN.next_below(getattr(_DN, f)()), _UP.next_above(getattr(_UP, f)()))


PI = _const("const_pi")
LOG2 = _const("const_log2")
# Euler's constant as a 40-digit literal, widened by one unit in the last place
EULER = Interval(iv("0.5772156649015328606065120900824024310421").lo,
                 iv("0.5772156649015328606065120900824024310423").hi)
E = Interval(1).exp()
TWO_PI = 2 * PI
SQRT_PI = PI.sqrt()
SQRT_2PI = TWO_PI.sqrt()
LOG_2PI = TWO_PI.log()

# minimum of lgamma on (0, inf): x = 1.4616321449683623..., value -0.1214862905...
_LGAMMA_ARGMIN = iv("1.46163214496836", "1.46163214496837")
_LGAMMA_MIN = iv("-0.12148629053585", "-0.12148629053584")


def _to_frac(x):
    n, d = x.as_integer_ratio()
    return Fraction(int(n), int(d))


class DomainError(ValueError):
    """An operation was called outside its mathematical domain."""


class PreconditionError(ValueError):
    """A lemma or theorem hypothesis failed to certify."""


def require_positive(name, x):
    if not as_interval(x).lo > 0:
        raise DomainError(f"{name} must be > 0")
    return x
