import dataclasses
from fractions import Fraction

import mpmath
import pytest

from zetaline.rigor import DomainError, E, Interval, PreconditionError, Status, iv
from zetaline.thm2 import (
    PAPER_PARAMS, REMARK_PARAMS, Thm2Params, cprime, q1, q2, splice_small_t, thm2_certify, zeta_log_AB,
)
from zetaline.zeta_eval import zeta_real

P = PAPER_PARAMS


def test_B_closed_form():
    _, B, checks = zeta_log_AB(E * E / 8, iv(500), Fraction(1, 8))
    ref = mpmath.mpf(2) / 3 + mpmath.mpf("71.2") * mpmath.e / 8 ** 1.5
    assert abs(float(B.mid) - float(ref)) < 1e-14
    assert all(c.status is Status.PROVEN for _, c in checks)


def test_B_small_C():
    A, B, _ = zeta_log_AB(iv("1e-12"), iv(500))
    assert abs(float(B.mid) - 2 / 3) < 1e-9
    assert A.lo == iv("76.2").lo


def test_C_assumption_refuted_above_bound():
    _, _, checks = zeta_log_AB(E * E / 7, iv(500), Fraction(1, 7))
    assert dict(checks)["C assumption"].status is Status.REFUTED


def test_cprime_limits():
    assert abs(float(cprime(1, Interval(10 ** 6).exp()).mid) - 1) < 1e-4
    vals = [cprime(iv("0.0065"), iv(t)) for t in (100, 1000, 10 ** 5)]
    assert all(b.hi < a.lo for a, b in zip(vals, vals[1:]))
    with pytest.raises(DomainError):
        cprime(0, iv(100))


def test_paper_set():
    c = thm2_certify(P)
    assert c.status() is Status.PROVEN
    assert c.Q1.hi < 154 and c.Q2.hi < iv("430.5").lo
    assert c.r_at_t0.hi <= iv("0.502").lo
    assert c.alpha.hi <= iv("0.038").lo
    assert abs(float(c.beta.mid) - 0.278) < 5e-4
    assert c.strip_width == Fraction(9, 250)


def test_q2_reconstruction_and_monotone_in_R1():
    c = thm2_certify(P)
    again = q2(P, c.R1)
    assert again.lo == c.Q2.lo and again.hi == c.Q2.hi
    assert q2(P, 200).lo > q2(P, 154).hi


def test_q2_requires_d1_le_2d():
    with pytest.raises(PreconditionError):
        q2(dataclasses.replace(P, d1=iv("0.05")), 154)


def test_eps_above_one_refuted():
    _, cons = q1(dataclasses.replace(P, eps=iv("1.5")))
    assert dict(cons)["0 < eps <= 1"].status is Status.REFUTED


def test_alpha_condition_boundary():
    # alpha crosses 1/2 as d grows towards the solution of (d + c1) = (d + C1 LL0)/2
    out, _ = q1(P)
    LL0 = iv(500).log().log()
    d_star = out["C1"] * LL0 - 2 * out["c1"]
    for bump, status in (("0.999", Status.PROVEN), ("1.001", Status.REFUTED)):
        d = Interval((d_star * iv(bump)).mid)
        _, cons = q1(dataclasses.replace(P, d=d))
        assert dict(cons)["alpha cond"].status is status


def test_c0_increases_in_t():
    vals = [q1(dataclasses.replace(P, t0=iv(t)))[0]["C1"] for t in (50, 500, 5000, 10 ** 6)]
    assert all(b.lo > a.hi for a, b in zip(vals, vals[1:]))
    assert vals[-1].hi < P.C.lo


def test_x_decreases_to_inverse_zeta2():
    vals = [q1(dataclasses.replace(P, t0=iv(t)))[0]["X_max"] for t in (50, 500, 5000, 10 ** 8)]
    assert all(b.hi < a.lo for a, b in zip(vals, vals[1:]))
    assert vals[-1].lo > 6 / float(mpmath.pi) ** 2


def test_q1_from_lemma_factors():
    out, _ = q1(P)
    L0 = iv(500).log()
    LL0 = L0.log()
    C1, c1, d = out["C1"], out["c1"], P.d
    A, B = iv("76.2"), out["B"]
    # lemma-level pieces: 1/(1 - 2 alpha)^2 and 8 beta log A1 style factors
    one_m_2a = 1 - 2 * (d + c1) / (d + C1 * LL0)
    lam1 = 8 * d / (C1 * c1) * ((C1 * LL0 + d) / (C1 * LL0 + d)) ** 2 / (one_m_2a * one_m_2a)
    K = (out["A_max"] * out["X_max"] / d).log()
    Q1 = lam1 * (B + 1 - LL0.log() / LL0 + K / LL0) + (1 / d + 2 / c1)
    assert abs(float(Q1.mid) - float(out["Q1"].mid)) < 1e-9


def test_remark_set_under_both_rules():
    sound, _ = q1(REMARK_PARAMS)
    printed, _ = q1(REMARK_PARAMS, c0_rule="max")
    assert printed["Q1"].hi < iv("178.4").lo
    assert sound["Q1"].lo > printed["Q1"].hi
    assert abs(float(q2(REMARK_PARAMS, printed["Q1"].hi).mid) - 513.6) < 0.1


def test_from_mapping():
    p = Thm2Params.from_mapping({"t0": 500, "eps": "0.52", "C": "e^2/8", "d": "0.018", "d1": "0.0065"})
    assert p.C_over_e2 == Fraction(1, 8)


def test_splice_small_range():
    r = splice_small_t(3, 50, step=0.05)
    assert r["violations"] == 0 and r["grade"] == "empirical"
    assert r["comparison"].status is Status.PROVEN


def test_zeta_real_at_sigma_prime():
    out, _ = q1(P)
    s = out["sigma_prime"]
    z = zeta_real(s)
    assert abs(float(z.mid) - float(mpmath.zeta(mpmath.mpf(s.mid)))) < 1e-9
