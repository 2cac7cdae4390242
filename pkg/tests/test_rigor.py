from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from zetaline.rigor import (
    E, EULER, LOG2, PI, Interval, Status, bernoulli, certify_exact_leq,
    certify_leq, fmt_hi, fmt_lo, hull, iv, log_factorial,
)

from conftest import contains, mpf_of

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
positive = st.floats(min_value=1e-6, max_value=1e6, allow_nan=False)


def _iv(a, b):
    return Interval(min(a, b), max(a, b))


@settings(max_examples=300, deadline=None)
@given(finite, finite, finite, finite)
def test_arithmetic_contains_all_point_results(a, b, c, d):
    X, Y = _iv(a, b), _iv(c, d)
    x, y = mpmath.mpf(a), mpmath.mpf(c)
    assert contains(X + Y, x + y)
    assert contains(X - Y, x - y)
    assert contains(X * Y, x * y)
    if not (Y.lo <= 0 <= Y.hi):
        assert contains(X / Y, x / y)


@settings(max_examples=300, deadline=None)
@given(positive, positive)
def test_elementary_functions_enclose_mpmath(a, b):
    X = _iv(a, b)
    x = mpmath.mpf(a)
    assert contains(X.log(), mpmath.log(x))
    assert contains(X.sqrt(), mpmath.sqrt(x))
    assert contains(X.pow(Fraction(1, 3)), mpmath.cbrt(x))
    small = Interval(a / 1e5)
    assert contains(small.exp(), mpmath.exp(mpmath.mpf(a / 1e5)))


@settings(max_examples=200, deadline=None)
@given(positive, positive, st.floats(min_value=-3, max_value=3, allow_nan=False))
def test_inclusion_monotone(a, b, e):
    # a sub-interval maps into the image of the enclosing interval
    X = _iv(a, b)
    inner = Interval(X.lo)
    for f in (lambda z: z.log(), lambda z: z.sqrt(), lambda z: z.pow(iv(repr(e))), lambda z: z * z - z):
        out, sub = f(X), f(inner)
        assert out.lo <= sub.lo and sub.hi <= out.hi


def test_constants_enclose_oracle():
    assert contains(PI, mpmath.pi)
    assert contains(LOG2, mpmath.log(2))
    assert contains(E, mpmath.e)
    assert contains(EULER, mpmath.euler)
    assert EULER.rel_width() < 1e-30


def test_decimal_literal_encloses_exact_value():
    x = iv("0.1")
    assert mpf_of(x.lo) <= mpmath.mpf("0.1") <= mpf_of(x.hi)
    assert x.lo < x.hi


def test_lgamma_and_log_factorial():
    for v in ("0.5", "1.4616", "3", "77.25"):
        assert contains(iv(v).lgamma(), mpmath.loggamma(mpmath.mpf(v)))
    assert contains(log_factorial(200), mpmath.log(mpmath.factorial(200)))


def test_bernoulli_exact():
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_certification_rules():
    assert certify_leq(1, 2).status is Status.PROVEN
    assert certify_leq(3, 2).status is Status.REFUTED
    assert certify_leq(iv("0.1"), iv("0.1")).status is Status.UNDECIDED
    assert certify_exact_leq(Fraction(1, 8), Fraction(1, 8)).status is Status.PROVEN


def test_outward_formatting():
    x = PI
    assert mpmath.mpf(fmt_lo(x.lo, 17)) <= mpmath.pi <= mpmath.mpf(fmt_hi(x.hi, 17))
    assert hull(Interval(1), Interval(3)).hi == 3


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        Interval(2, 1)
    with pytest.raises(ValueError):
        Interval(-1).log()
