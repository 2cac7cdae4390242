import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zetaline.rigor import DomainError, Interval, PI, PreconditionError, iv
from zetaline.thm1 import PAPER_PARAMS, h_of
from zetaline.vdc import (
    a3_b3, ak_bk, ak_bk_sequence, ck_dk, corput3_alpha_beta, delta_k, exponents,
    vdc_dirichlet_bound,
)
from zetaline.zeta_eval import PhaseSpec, exp_sum_brute

from conftest import contains

ETA3 = PAPER_PARAMS.eta3
H = h_of(PAPER_PARAMS.h1, PAPER_PARAMS.h2, PAPER_PARAMS.log_t0)


def test_exponents_exact():
    assert exponents(3) == (4, Fraction(1, 2), Fraction(1, 2))
    assert exponents(5) == (16, Fraction(1, 6), Fraction(1, 8))


def test_alpha_beta_large_w_limit():
    c = corput3_alpha_beta(iv("1e30"), 1, 1)
    sp = mpmath.sqrt(mpmath.pi)
    assert abs(float(c.alpha.mid) - float(1 + 32 / (15 * sp))) < 1e-8
    assert abs(float(c.beta.mid) - float(64 / (3 * sp))) < 1e-8


def test_alpha_beta_unit_window():
    c = corput3_alpha_beta(1, 1, 1)
    sp = mpmath.sqrt(mpmath.pi)
    assert contains(c.alpha, 1 + 32 / (15 * sp) * mpmath.sqrt(2) + 4)
    assert c.alpha.lo >= 1


def test_alpha_beta_domain():
    with pytest.raises(DomainError):
        corput3_alpha_beta(0, 1, 1)
    with pytest.raises(DomainError):
        corput3_alpha_beta(1, iv("0.5"), 1)


def test_a3_b3_against_oracle():
    e, w = mpmath.mpf("0.8410538348318537"), mpmath.mpf(2)
    sp = mpmath.sqrt(mpmath.pi)
    lam0 = (1 / e + 32 * mpmath.sqrt(e) * w / (15 * sp)) ** -3
    l13 = mpmath.cbrt(lam0)
    d3 = mpmath.sqrt(mpmath.mpf(1) / 2 + mpmath.sqrt(1 + mpmath.mpf(3) / 8 * sp * e ** 1.5) / 2)
    A = mpmath.sqrt(1 / (e * w) + 32 / (15 * sp) * mpmath.sqrt(e + l13) + (e + l13) * l13 / 3) * d3
    B = mpmath.sqrt(32) / (mpmath.sqrt(3) * mpmath.pi ** 0.25 * e ** 0.25) * d3
    k3 = a3_b3(ETA3, 2)
    assert contains(k3.A_k, A) or abs(float(k3.A_k.mid) / float(A) - 1) < 1e-15
    assert abs(float(k3.B_k.mid) / float(B) - 1) < 1e-15


def test_b_independent_of_omega():
    assert a3_b3(ETA3, 2).B_k.lo == a3_b3(ETA3, 10).B_k.lo
    assert ak_bk(ETA3, 2, 7).B_k.hi == ak_bk(ETA3, 10, 7).B_k.hi


def test_recursion_matches_oracle():
    e, w = mpmath.mpf("0.8410538348318537"), mpmath.mpf(3)
    seq = ak_bk_sequence(ETA3, 3, 8)
    A, B = mpmath.mpf(seq[0].A_k.mid), mpmath.mpf(seq[0].B_k.mid)
    for k in range(3, 8):
        K = 2 ** (k - 1)
        d = mpmath.sqrt(1 + 2 / mpmath.mpf(2337) ** (1 - mpmath.mpf(2) / K)
                        * (9 * mpmath.pi / 1024 * e) ** (mpmath.mpf(1) / K))
        A = d * (w ** (-mpmath.mpf(1) / K) + 2 ** (mpmath.mpf(19) / 12) * (K - 1)
                 / mpmath.sqrt((2 * K - 1) * (4 * K - 3)) * mpmath.sqrt(A))
        B = d * 2 ** 1.5 * (K - 1) / mpmath.sqrt((2 * K - 3) * (4 * K - 5)) * mpmath.sqrt(B)
        assert abs(float(seq[k - 2].A_k.mid) / float(A) - 1) < 1e-13
        assert abs(float(seq[k - 2].B_k.mid) / float(B) - 1) < 1e-13


def test_delta_decreasing_to_one():
    vals = [delta_k(ETA3, k) for k in range(3, 65)]
    assert all(b.hi < a.lo for a, b in zip(vals, vals[1:]))
    assert vals[-1].lo > 1


def test_ck_dk_monotone_in_h():
    prev = None
    for hv in ("1.001", "1.01", "1.1", "1.5", "2"):
        cd = ck_dk(ETA3, iv(hv), 4)
        if prev is not None:
            assert cd.C_k.lo >= prev.C_k.lo and cd.D_k.lo >= prev.D_k.lo
        prev = cd


def test_ck_dk_large_k_finite():
    cd = ck_dk(ETA3, H, 200)
    assert math.isfinite(float(cd.C_k.hi)) and float(cd.D_k.hi) > 0


def test_dirichlet_bound_preconditions():
    with pytest.raises(PreconditionError):
        vdc_dirichlet_bound(10, 10, 100, 3, ETA3, iv("1.5"))
    with pytest.raises(PreconditionError):
        vdc_dirichlet_bound(10, 20, 100, 3, ETA3, iv("1.5"))


def test_dirichlet_bound_huge_t():
    b = vdc_dirichlet_bound(10 ** 6, 1007000, Interval(3069).exp(), 6, ETA3, iv("1.007"))
    assert 0 < float(b.lo) and math.isfinite(float(b.hi))


def test_brute_oracle_matches_mpmath():
    ph = PhaseSpec(12345.678, 100, 50)
    s = exp_sum_brute(ph)
    ref = mpmath.fsum(mpmath.expj(mpmath.mpf(repr(ph.t)) * mpmath.log(n)) for n in range(101, 151))
    assert abs(s - complex(ref)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3000), st.integers(1, 400), st.floats(10, 1e6), st.floats(0.3, 3))
def test_order3_bound_dominates(a, L, t, eta):
    S = exp_sum_brute(PhaseSpec(t, a, L))
    W = PI * Interval(a + L) ** 3 / Interval(t)
    lam = Interval(Fraction((a + L) ** 3, (a + 1) ** 3))
    c = corput3_alpha_beta(W, lam, Interval(eta))
    assert abs(S) ** 2 <= float(c.bound_sq(Interval(L)).lo)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3000), st.integers(1, 2000), st.floats(10, 1e6), st.sampled_from([3, 4, 5]))
def test_dirichlet_bound_dominates(a, span, t, k):
    b = a + min(span, a)
    n = np.arange(a + 1, b + 1, dtype=float)
    v = abs(np.sum(np.exp(-1j * t * np.log(n)) / n))
    B = vdc_dirichlet_bound(a, b, Interval(t), k, ETA3, Interval(Fraction(b, a)))
    assert v <= float(B.lo)
