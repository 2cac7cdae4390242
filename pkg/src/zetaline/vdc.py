"""Explicit van der Corput derivative-test constants.

Order-3 test (alpha, beta), the alternative order-3 test (A_3, B_3), the
recursive k-th order constants (A_k, B_k, delta_k) and the Dirichlet-sum
constants (C_k, D_k) for sums of n^{-1-it} over a < n <= b <= h a.

All outputs are Intervals.  Rational exponents are kept exact (Fraction)
and only turned into enclosures inside ``Interval.pow``.
"""

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .rigor import (
    PI, SQRT_PI, LOG_2PI, DomainError, Interval, PreconditionError,
    as_interval, log_factorial,
)

__all__ = [
    "Order3Constants", "KthConstants", "DirichletConstants",
    "corput3_alpha_beta", "a3_b3", "delta_k", "ak_bk", "ak_bk_sequence",
    "ck_dk", "vdc_dirichlet_bound", "exponents",
]

_C32 = 32 / (15 * SQRT_PI)          # 32/(15 sqrt(pi))
_C64 = 64 / (3 * SQRT_PI)           # 64/(3 sqrt(pi))
_TWO_19_12 = Interval(2).pow(Fraction(19, 12))
_TWO_3_2 = Interval(2).pow(Fraction(3, 2))


@dataclass(frozen=True)
class Order3Constants:
    alpha: Interval
    beta: Interval
    W: Interval
    lam: Interval
    eta: Interval

    def bound_sq(self, L):
        """Right side (L W^{-1/3} + eta)(alpha L + beta W^{2/3}) of the test."""
        w13 = self.W.pow(Fraction(1, 3))
        return (L / w13 + self.eta) * (self.alpha * L + self.beta * w13 * w13)


@dataclass(frozen=True)
class KthConstants:
    k: int
    K: int
    A_k: Interval
    B_k: Interval
    delta_k: Interval
    eta3: Interval
    omega: Interval
    # only for k = 3: the order-3 lemma's own lambda_0 and delta_3
    lambda0: Optional[Interval] = None
    delta3: Optional[Interval] = None


@dataclass(frozen=True)
class DirichletConstants:
    k: int
    K: int
    C_k: Interval
    D_k: Interval
    h: Interval
    eta3: Interval


def exponents(k):
    """(K, k/(2K-2), 2/K) as exact rationals."""
    K = 2 ** (k - 1)
    return K, Fraction(k, 2 * K - 2), Fraction(2, K)


def corput3_alpha_beta(W, lam, eta):
    W, lam, eta = as_interval(W), as_interval(lam), as_interval(eta)
    if not W.lo > 0:
        raise DomainError("W must be > 0")
    if not lam.lo >= 1:
        raise DomainError("lambda must be >= 1")
    if not eta.lo > 0:
        raise DomainError("eta must be > 0")
    w13 = W.pow(Fraction(1, 3))
    w23 = w13 * w13
    alpha = 1 / eta + _C32 * (eta + 1 / w13).sqrt() + 2 * lam * eta / w13 + 2 * lam / w23
    beta = _C64 / eta.sqrt() + 4 / w13
    return Order3Constants(alpha, beta, W, lam, eta)


def _check_eta_omega(eta3, omega):
    if not eta3.lo > 0:
        raise DomainError("eta3 must be > 0")
    if not omega.lo > 1:
        raise DomainError("omega must be > 1")


def a3_b3(eta3, omega):
    eta3, omega = as_interval(eta3), as_interval(omega)
    _check_eta_omega(eta3, omega)
    lam0 = (1 / eta3 + _C32 * eta3.sqrt() * omega) ** -3
    l13 = lam0.pow(Fraction(1, 3))
    d3 = (Fraction(1, 2) + (1 + Fraction(3, 8) * SQRT_PI * eta3.pow(Fraction(3, 2))).sqrt() / 2).sqrt()
    A = (1 / (eta3 * omega) + _C32 * (eta3 + l13).sqrt() + (eta3 + l13) * l13 / 3).sqrt() * d3
    B = _b3(eta3, d3)
    return KthConstants(3, 4, A, B, delta_k(eta3, 3), eta3, omega, lam0, d3)


def _b3(eta3, d3):
    return Interval(32).sqrt() / (Interval(3).sqrt() * PI.pow(Fraction(1, 4)) * eta3.pow(Fraction(1, 4))) * d3


def delta_k(eta3, k):
    """delta_k of the recursion (k >= 3)."""
    K = 2 ** (k - 1)
    eta3 = as_interval(eta3)
    base = 9 * PI / 1024 * eta3
    return (1 + 2 / Interval(2337).pow(1 - Fraction(2, K)) * base.pow(Fraction(1, K))).sqrt()


# Memo of the recursion keyed on the exact endpoints of (eta3, omega).  B_k only
# depends on eta3 so it gets its own table; that makes B_k(omega) bit-identical.
_lock = threading.Lock()
_A_MEMO = {}
_B_MEMO = {}
_D_MEMO = {}


_MEMO_CAP = 4096


def _key(x):
    return (x.lo, x.hi)


def _trim():
    # optimizer runs touch thousands of omegas; keep memory bounded
    if len(_A_MEMO) > _MEMO_CAP:
        _A_MEMO.clear()


def _deltas(eta3, kmax):
    with _lock:
        d = _D_MEMO.setdefault(_key(eta3), [])
        for k in range(3 + len(d), kmax + 1):
            d.append(delta_k(eta3, k))
        return d[: kmax - 2]


def _b_seq(eta3, kmax):
    deltas = _deltas(eta3, kmax)
    with _lock:
        seq = _B_MEMO.get(_key(eta3))
        if seq is None:
            d3 = a3_b3(eta3, Interval(2)).delta3
            seq = _B_MEMO.setdefault(_key(eta3), [_b3(eta3, d3)])
        while len(seq) < kmax - 2:
            k = 2 + len(seq)
            K = 2 ** (k - 1)
            c = _TWO_3_2 * (K - 1) / Interval((2 * K - 3) * (4 * K - 5)).sqrt()
            seq.append(deltas[k - 3] * c * seq[-1].sqrt())
        return seq[: kmax - 2]


def _a_seq(eta3, omega, kmax):
    deltas = _deltas(eta3, kmax)
    with _lock:
        _trim()
        key = _key(eta3) + _key(omega)
        seq = _A_MEMO.get(key)
        if seq is None:
            seq = _A_MEMO.setdefault(key, [a3_b3(eta3, omega).A_k])
        while len(seq) < kmax - 2:
            k = 2 + len(seq)
            K = 2 ** (k - 1)
            c = _TWO_19_12 * (K - 1) / Interval((2 * K - 1) * (4 * K - 3)).sqrt()
            seq.append(deltas[k - 3] * (omega.pow(Fraction(-1, K)) + c * seq[-1].sqrt()))
        return seq[: kmax - 2]


def ak_bk_sequence(eta3, omega, kmax):
    """KthConstants for k = 3..kmax (memoized per (eta3, omega))."""
    eta3, omega = as_interval(eta3), as_interval(omega)
    _check_eta_omega(eta3, omega)
    if kmax < 3:
        raise DomainError("k must be >= 3")
    first = a3_b3(eta3, omega)
    A = _a_seq(eta3, omega, kmax)
    B = _b_seq(eta3, kmax)
    D = _deltas(eta3, kmax)
    out = [first]
    for k in range(4, kmax + 1):
        out.append(KthConstants(k, 2 ** (k - 1), A[k - 3], B[k - 3], D[k - 3], eta3, omega))
    return out


def ak_bk(eta3, omega, k):
    if not isinstance(k, int) or k < 3:
        raise DomainError("k must be an integer >= 3")
    return ak_bk_sequence(eta3, omega, k)[-1]


def ck_dk(eta3, h, k):
    eta3, h = as_interval(eta3), as_interval(h)
    if not h.lo > 1:
        raise DomainError("h must be > 1")
    K, e1, e2 = exponents(k)
    kc = ak_bk(eta3, h ** k, k)
    lf = (log_factorial(k - 1) - LOG_2PI) / (2 * K - 2)
    hm1 = h - 1
    C = kc.A_k * h.pow(Fraction(2 * k, K) - e1) * hm1 * lf.exp()
    D = kc.B_k * h.pow(e1) * hm1.pow(1 - e2) * (-lf).exp()
    return DirichletConstants(k, K, C, D, h, eta3)


def vdc_dirichlet_bound(a, b, t, k, eta3, h):
    """Upper bound on |sum_{a<n<=b} n^{-1-it}| for b <= h a."""
    if not (isinstance(a, int) and isinstance(b, int)) or a <= 0:
        raise DomainError("a, b must be integers with a > 0")
    if b <= a:
        raise PreconditionError("need b > a")
    h, t = as_interval(h), as_interval(t)
    if not b <= h.lo * a:
        raise PreconditionError("need b <= h*a")
    if not t.lo > 0:
        raise DomainError("t must be > 0")
    K, e1, e2 = exponents(k)
    cd = ck_dk(eta3, h, k)
    A = Interval(a)
    s = Fraction(1, 2 * K - 2)
    return cd.C_k * A.pow(-e1) * t.pow(s) + cd.D_k * A.pow(e1 - e2) * t.pow(-s)
