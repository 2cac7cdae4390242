import math

import mpmath
import pytest

from zetaline.rigor import DomainError, Interval, Status, iv
from zetaline.zeta_eval import (
    cheng_em_bound, em_logline_certificate, g_and_R, rs_decomposition, zeta_deriv_bound_1line,
    zeta_em, zeta_em_with_derivative, zeta_real,
)

from conftest import contains


@pytest.mark.parametrize("s", [complex(1, 3), complex(1, 14.134725), complex(0.5, 100), complex(1, 1000),
                               complex(2, 0.5), complex(1, 31415.9)])
def test_zeta_em_matches_mpmath(s):
    z = zeta_em(s, 1e-8)
    ref = complex(mpmath.zeta(mpmath.mpc(s.real, s.imag)))
    assert abs(z.value - ref) <= max(z.err, 1e-12) * 10
    assert z.err <= 1e-8


def test_zeta_derivative_matches_mpmath():
    s = complex(1, 250.0)
    z, dz = zeta_em_with_derivative(s, 1e-8)
    ref = complex(mpmath.zeta(mpmath.mpc(1, 250), derivative=1))
    assert abs(dz.value - ref) < 1e-7


def test_zeta_em_domain():
    with pytest.raises(DomainError):
        zeta_em(complex(0.2, 10))
    with pytest.raises(DomainError):
        zeta_em(1)


@pytest.mark.parametrize("sigma", ["1.0001", "1.05", "2", "2.1"])
def test_zeta_real_encloses(sigma):
    z = zeta_real(iv(sigma))
    assert contains(z, mpmath.zeta(mpmath.mpf(sigma)))
    assert z.rel_width() < 1e-18


def test_g_and_R_positive_and_decreasing():
    g1, R1 = g_and_R(100)
    g2, R2 = g_and_R(1000)
    assert g2.hi < g1.lo and R2.hi < R1.lo
    g_big, _ = g_and_R(Interval(10 ** 8))
    assert abs(float(g_big.mid) - math.sqrt(2 * math.pi)) < 1e-6


def test_rs_decomposition_n1():
    d = rs_decomposition(Interval(10 ** 6))
    assert d.n1 == math.floor(math.sqrt(10 ** 6 / (2 * math.pi)))


def test_cheng_bound_domain():
    assert cheng_em_bound(1, 100, iv("0.25")).lo > 0
    with pytest.raises(DomainError):
        cheng_em_bound(1, 100, iv("0.1"))


def test_deriv_bound_dominates_samples():
    D = float(zeta_deriv_bound_1line(Interval(200)).hi)
    for t in (1.0, 5.0, 37.5, 120.0, 199.0):
        assert abs(complex(mpmath.zeta(mpmath.mpc(1, t), derivative=1))) <= D


@pytest.mark.slow
def test_logline_certificate():
    piece, outs = em_logline_certificate()
    assert all(o.status is Status.PROVEN for o in outs.values())
    assert piece.grade == "empirical"
