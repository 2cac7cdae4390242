import dataclasses
import math

import mpmath
from hypothesis import given, settings, strategies as st

from zetaline.prop import (
    PAPER_A1, PAPER_A2, PAPER_B, PropParamsA, PropParamsB, b1_of, b3_of, hump_sup, mu_condition,
    prop_certify, second_sum_c, _tau,
)
from zetaline.rigor import Interval, Status, iv
from zetaline.thm1 import theta_of


def test_hump_sup_oracle():
    for L, c in ((16, 2.3), (40, 0.1), (16, -1)):
        f = lambda y: (y / 6 - c) * mpmath.exp(-y / 12)
        ys = [L + i * 0.05 for i in range(4000)]
        ref = max(f(mpmath.mpf(y)) for y in ys)
        got = hump_sup(iv(str(L)), iv(str(c)))
        assert float(got.hi) >= float(ref) - 1e-15
        assert float(got.hi) - float(ref) < 1e-4


def test_part1_sound_exceeds_printed():
    sound, printed, inter, checks = b1_of(PAPER_A1)
    assert all(c.status is Status.PROVEN for _, c in checks)
    assert sound.lo > printed.hi
    assert abs(float(printed.mid) - 4.59773) < 1e-4


def test_part2_published():
    sound, _, _, _ = b1_of(PAPER_A2)
    assert sound.hi < iv("4.308").lo


def test_swapping_parts_degrades_part1():
    swapped = PropParamsA(PAPER_A1.log_t1, PAPER_A2.eta, PAPER_A2.q0)
    s_swap, _, _, _ = b1_of(swapped)
    assert s_swap.lo > iv("4.664").hi


def test_b1_nonincreasing_in_threshold():
    vals = [b1_of(dataclasses.replace(PAPER_A2, log_t1=iv(str(L))))[0] for L in (82, 85, 90, 100)]
    assert all(b.hi <= a.hi for a, b in zip(vals, vals[1:]))


def test_second_sum_sound_at_least_printed():
    s, p = second_sum_c(110, PAPER_B.eta4, PAPER_B.log_t2)
    assert s.lo >= p.hi


def test_mu_condition_paper_and_boundary():
    checks, z6, z5 = mu_condition(PAPER_B)
    assert all(c.status is Status.PROVEN for _, c in checks)
    # mu5 chosen so that Z5 = Z6 exactly: strict separation is impossible
    L = PAPER_B.log_t2
    mu5 = PAPER_B.mu6 * (L * (theta_of(6) - theta_of(5)) / 2).exp()
    eq = dataclasses.replace(PAPER_B, mu5=mu5)
    checks, _, _ = mu_condition(eq)
    assert dict(checks)["mu: Z6(t2) <= Z5(t2)"].status is Status.UNDECIDED


def test_part3_values():
    sound, printed, inter, checks = b3_of(PAPER_B)
    assert all(c.status is Status.PROVEN for _, c in checks)
    assert abs(float(inter["h_prime"].mid) - 1.12678846) < 1e-7
    assert sound.lo > printed.hi
    assert abs(float(inter["order3_tail"].mid) - 0.4315) < 1e-3


def test_part3_mu6_perturbation_small():
    base, _, _, _ = b3_of(PAPER_B)
    pert, _, _, _ = b3_of(dataclasses.replace(PAPER_B, mu6=PAPER_B.mu6 * iv("1.01")))
    assert pert is not None
    assert abs(float(pert.mid) - float(base.mid)) < 0.5


def test_missing_part3_partial():
    cert = prop_certify(PAPER_A1, PAPER_A2, None)
    assert cert.pieces[2] is None and cert.pieces[0] is not None
    assert cert.status() is not Status.PROVEN


def test_part3_slope_exact():
    cert = prop_certify()
    from fractions import Fraction
    assert cert.pieces[2].coeffs[0].lo == Interval(Fraction(8, 33)).lo


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 30), st.floats(12.5, 40))
def test_tail_sum_inequalities(q0, L):
    t = math.exp(L)
    P = math.ceil(t ** (1 / 3))
    n1 = math.floor(math.sqrt(t / (2 * math.pi)))
    Q = n1 // P
    if Q < q0:
        return
    Qc = min(Q, q0 + 20000)
    s1 = math.fsum(1 / (q * math.sqrt(q + 1)) for q in range(q0, Qc + 1))
    assert s1 < 2 / math.sqrt(q0 - 0.5)
    s2 = math.fsum(1 / q for q in range(q0, Q + 1)) if Q - q0 < 10 ** 6 else None
    if s2 is not None:
        tau1 = float(_tau(iv(repr(L))).hi)
        assert s2 <= L / 6 + math.log(tau1) - math.log(q0 - 0.5)
