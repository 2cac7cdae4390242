import dataclasses
from fractions import Fraction

import mpmath
import pytest

from zetaline.pieces import catalogue
from zetaline.rigor import DomainError, Interval, PreconditionError, Status, iv
from zetaline.thm1 import (
    PAPER_PARAMS, Thm1Params, a0_sup, a2_inf, big_a, certify, fixed_points, gap_ratio, h_of,
    kappa, published_arithmetic, r0_of, rho_of, rho_rational, stated_table_pieces, sup_tilde_a2,
    theorem1_table, theta_of, _tilde_a2,
)

from conftest import contains

P = PAPER_PARAMS


def test_theta_rho_exact():
    assert theta_of(3) == 1
    assert theta_of(6) == Fraction(16, 33)
    assert theta_of(5) == Fraction(8, 13)
    assert rho_rational(3) == Fraction(2, 3) / 20


def test_rho_real_agrees_with_integer():
    for k in (3, 6, 9):
        assert abs(float(rho_of(Interval(k)).mid) - float(rho_rational(k))) < 1e-30


def test_kappa_oracle():
    L = mpmath.mpf(3069)
    v = mpmath.mpf("0.8643140421215492") * mpmath.log(L)
    ref = mpmath.exp((L - mpmath.log(2 * mpmath.pi)) / (v - 1 + 2 ** (2 - v)))
    assert contains(kappa(P.h2, P.log_t0), ref) or abs(float(kappa(P.h2, P.log_t0).mid / 1) / float(ref) - 1) < 1e-15


def test_r0_and_h():
    assert r0_of(P.h2, P.log_t0) == 6
    assert h_of(P.h1, P.h2, P.log_t0).lo > 1
    with pytest.raises(PreconditionError):
        r0_of(iv("0.7", "0.8"), Interval(3069))


def test_fixed_points_below_published():
    fp = fixed_points(P.eta3)
    assert fp["x_star"].hi <= iv("2.7600447683620426").lo
    assert fp["y_star"].hi < iv("1.0023472426905147").lo
    assert fp["x_star_sup"].lo > fp["x_star"].hi


def test_tilde_a2_is_minus_log_rho_derivative():
    # oracle: tilde-a2(v) = -d/dv log rho(v) * (something positive); compare to mpmath diff
    def rho(v):
        y = mpmath.mpf(2) ** v
        return (y - 4) / (y - 2) / ((v - 1) * y + 4)

    for v in ("6.9", "8", "12.5"):
        ref = -mpmath.diff(lambda x: mpmath.log(rho(x)), mpmath.mpf(v))
        got = _tilde_a2(iv(v))
        assert abs(float(got.mid) - float(ref)) < 1e-12


def test_sup_tilde_a2_dominates_samples():
    s = sup_tilde_a2(iv("6.9397"))
    for v in (6.94, 7.5, 9, 15, 40):
        assert float(_tilde_a2(Interval(v)).hi) <= float(s.hi)


def test_a2_checks_and_published_value():
    res = a2_inf(P.h1, P.h2, P.log_t0, b1_theta=5)
    assert all(c.status is Status.PROVEN for _, c in res.checks)
    assert abs(float(res.A2.mid) / 0.04098649913361486 - 1) < 1e-12


def test_a0_is_a6_and_tail_below():
    h = h_of(P.h1, P.h2, P.log_t0)
    res = a0_sup(P.eta3, h, k_cap=40)
    assert all(c.status is Status.PROVEN for _, c in res.checks)
    assert res.A0.hi == big_a(P.eta3, h, 6).hi
    assert res.tail_bound.hi < res.A0.lo


def test_published_arithmetic_table():
    pub = published_arithmetic()
    assert abs(float(pub["A_table"][6].mid) / 0.0207492006388441 - 1) < 1e-12
    assert abs(float(pub["A6"].mid) / 1.7206778023076486 - 1) < 1e-12


def test_certify_faithful_chain():
    c = certify(dataclasses.replace(P, k_cap=64))
    assert c.valid
    assert c.trace.r0 == 6
    assert c.A6.hi == (c.A4 + c.A5).hi
    # the faithful chain keeps D_k and does not reach the published 1.721
    assert c.claims[0][1].status is Status.REFUTED


def test_certify_rejects_small_t0():
    c = certify(Thm1Params(P.eta3, P.h1, P.h2, Interval(10).log()))
    assert not c.valid and c.status() is Status.REFUTED
    assert c.preconditions[0][0] == "t0 range"


def test_from_mapping_exp_form():
    p = Thm1Params.from_mapping({"eta3": "0.84", "h1": "1.007", "h2": "0.86", "t0": "exp(3069)"})
    assert p.log_t0.lo == iv("3069").lo


def test_gap_ratio_catalogue():
    cat = catalogue()
    pieces = [cat["log t"], cat["1/2 log t + 1.93"], cat["1/5 log t + 44.02"]]
    g = gap_ratio((iv("16.01").exp(), iv("705.64").exp()), pieces)
    assert float(g.max_ratio.lo) >= 2.539
    assert abs(g.argmax_log_t - 140.3) < 0.5


def test_table_stated_and_lower_coefficient():
    rows, verdict = theorem1_table(iv("1.70"), pieces=stated_table_pieces())
    assert verdict is Status.REFUTED
    assert any(r.witness_log_t is not None for r in rows)


def test_table_loglog_piece():
    rows, _ = theorem1_table(iv("1.721"), pieces=stated_table_pieces())
    assert rows[-1].outcome.status is Status.PROVEN
