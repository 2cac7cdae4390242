"""Desk-scale evaluation of zeta and related quantities.

Two grades live here.  ``zeta_em`` / ``zeta_em_with_derivative`` work in
double precision with an explicit truncation bound plus a floating-point
error budget: good for empirical scans, not certificates.  ``zeta_real``,
``g_and_R`` and ``cheng_em_bound`` are interval computations and feed the
certified pipelines.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np

from .pieces import BoundPiece
from .rigor import (
    EULER, LOG2, PI, SQRT_PI, TWO_PI, CertOutcome, DomainError, Interval,
    Status, as_interval, bernoulli, certify_leq, iv,
)

__all__ = [
    "ZetaValue", "RSDecomposition", "PhaseSpec", "exp_sum_brute", "zeta_em",
    "zeta_em_with_derivative", "cheng_em_bound", "g_and_R", "rs_decomposition",
    "em_logline_certificate", "zeta_real", "zeta_deriv_bound_1line",
]

BRUTE_CAP = 10 ** 6
EM_TERMS_CAP = 12
EM_N_CAP = 4 * 10 ** 7
_U = 2.0 ** -52


@dataclass(frozen=True)
class ZetaValue:
    value: complex
    err: float


@dataclass(frozen=True)
class RSDecomposition:
    t: Interval
    n1: int
    main_sum_bound: Interval
    second_sum_bound: Interval
    g: Interval
    R: Interval


@dataclass(frozen=True)
class PhaseSpec:
    """f(x) = sign * (t/2pi) log x on (a, a+L]."""
    t: float
    a: int
    L: int
    sign: int = 1

    def __post_init__(self):
        if self.L < 1 or self.a < 0:
            raise DomainError("need L >= 1 and a >= 0")


def exp_sum_brute(phase):
    """sum_{n=a+1}^{a+L} e^{2 pi i f(n)} at ~100-bit working precision."""
    if phase.L > BRUTE_CAP:
        raise ValueError(f"oracle length capped at {BRUTE_CAP}")
    ctx = gmpy2.context(precision=110)
    t = ctx.mul(gmpy2.mpfr(repr(float(phase.t)), 110), phase.sign)
    re = im = gmpy2.mpfr(0, 110)
    parts_re, parts_im = [], []
    for n in range(phase.a + 1, phase.a + phase.L + 1):
        s, c = ctx.sin_cos(ctx.mul(t, ctx.log(n)))
        parts_re.append(c)
        parts_im.append(s)
    re = ctx.fsum(parts_re)
    im = ctx.fsum(parts_im)
    return complex(float(re), float(im))


# --- Euler-Maclaurin for complex s -----------------------------------------------

def _em_pieces(s, N, m):
    """Euler-Maclaurin value and derivative with N-1 explicit terms, m corrections."""
    n = np.arange(1, N, dtype=np.float64)
    logn = np.log(n)
    mag = np.exp(-s.real * logn)
    ph = -s.imag * logn
    terms = mag * (np.cos(ph) + 1j * np.sin(ph))
    val = complex(terms.sum())
    der = complex(-(terms * logn).sum())
    S = float(mag.sum())
    logN = math.log(N)
    NS = complex(math.exp(-s.real * logN) * np.exp(-1j * s.imag * logN))   # N^{-s}
    N1s = N * NS
    val += N1s / (s - 1) + NS / 2
    der += -logN * N1s / (s - 1) - N1s / (s - 1) ** 2 - logN * NS / 2
    poch = s                       # s (s+1) ... (s+2j-2)
    dpoch = 1.0 + 0j               # derivative of poch
    Npow = NS / N                  # N^{-s-2j+1} at j = 1
    last_v = last_d = 0.0
    for j in range(1, m + 2):
        c = float(bernoulli(2 * j) / math.factorial(2 * j))
        tv = c * poch * Npow
        td = c * (dpoch - logN * poch) * Npow
        if j == m + 1:
            last_v, last_d = abs(tv), abs(td)
            break
        val += tv
        der += td
        # advance poch by two factors
        for i in (2 * j - 1, 2 * j):
            dpoch = dpoch * (s + i) + poch
            poch = poch * (s + i)
        Npow = Npow / (N * N)
    safety = max(2.0, abs(s + 2 * m + 1) / (s.real + 2 * m + 1))
    fp = (abs(s.imag) * logN + 4 * math.log2(N) + 10) * _U * 4
    err_v = safety * last_v + fp * S
    err_d = 2 * safety * last_d + fp * S * (logN + 1)
    return val, der, err_v, err_d


def _em(s, target_err, want_derivative):
    s = complex(s)
    if s.real < 0.5:
        raise DomainError("zeta_em needs Re(s) >= 1/2")
    if abs(s.imag) > 1e9:
        raise DomainError("|t| above the 1e9 scale cap")
    if target_err < 1e-12:
        raise DomainError("target_err must be >= 1e-12")
    if s == 1:
        raise DomainError("pole at s = 1")
    best = None
    for c in (0.5, 0.25, 0.125):
        N = int(abs(s) / (math.pi * c)) + 20
        if N > EM_N_CAP:
            break
        out = _em_pieces(s, N, EM_TERMS_CAP)
        err = out[3] if want_derivative else out[2]
        if best is None or err < best[1]:
            best = (out, err)
        if out[2] <= target_err and (not want_derivative or out[3] <= target_err * max(1.0, abs(out[1]))):
            return out
    if best is None:
        raise ValueError("scale cap reached before any evaluation")
    raise ValueError(f"target_err {target_err:g} unreachable; achievable err ~ {best[1]:.3g}")


def zeta_em(s, target_err=1e-10):
    val, _, err, _ = _em(s, target_err, False)
    return ZetaValue(val, err)


def zeta_em_with_derivative(s, target_err=1e-8):
    """(zeta(s), zeta'(s)) as ZetaValues (empirical grade)."""
    val, der, ev, ed = _em(s, target_err, True)
    return ZetaValue(val, ev), ZetaValue(der, ed)


# --- certified pieces ---------------------------------------------------------------

def cheng_em_bound(sigma, t0, h0):
    """Upper bound for |zeta(s) - sum_{n <= h0 t} n^{-s}|, t >= t0."""
    sigma, t0, h = as_interval(sigma), as_interval(t0), as_interval(h0)
    if not (sigma.lo >= Fraction(1, 2) and sigma.hi <= 1):
        raise DomainError("sigma must lie in [1/2, 1]")
    if not t0.lo > 0:
        raise DomainError("t0 must be > 0")
    if not h.lo > (1 / TWO_PI).hi:
        raise DomainError("h0 must exceed 1/(2 pi)")
    x = 1 / (2 * h)
    inner = h + Fraction(1, 2) + 3 * (1 + 1 / (t0 * t0)).sqrt() * (1 - x * x.cot())
    return inner / (h * t0).pow(sigma)


def g_and_R(t):
    """(g(t), R(t)) of the Riemann-Siegel-type bound, as enclosures."""
    t = as_interval(t)
    if not t.lo > 0:
        raise DomainError("t must be > 0")
    g = TWO_PI.sqrt() * (Fraction(5, 3) / (t * t) + PI / (6 * t)).exp()
    sp2 = (PI / 2).sqrt()
    st = t.sqrt()
    R = ((sp2 + g / 2) / st
         + (9 * sp2 + g / (PI * (3 - 2 * LOG2)).sqrt()) / t
         + (968 * PI * SQRT_PI + g * 242 * PI) / 700 / (t * st))
    return g, R


def rs_decomposition(t):
    t = as_interval(t)
    if not t.lo >= TWO_PI.hi:
        raise DomainError("the decomposition needs t >= 2 pi")
    n1 = int(gmpy2.floor(gmpy2.sqrt(t.lo / TWO_PI.hi)))
    n1_hi = int(gmpy2.floor(gmpy2.sqrt(t.hi / TWO_PI.lo)))
    if n1 != n1_hi:
        raise DomainError("t too wide to fix n1")
    g, R = g_and_R(t)
    main = Interval(n1).log() + EULER + Fraction(1, n1)
    second = g * n1 / t.sqrt()
    return RSDecomposition(t, n1, main, second, g, R)


def zeta_real(sigma, N=40, m=20):
    """Enclosure of zeta(sigma), sigma > 1 real.

    Euler-Maclaurin with N-1 explicit terms and m Bernoulli corrections; for
    real sigma the remainder is bounded by the first omitted correction.
    """
    s = as_interval(sigma)
    if not s.lo > 1:
        raise DomainError("zeta_real needs sigma > 1")
    total = Interval(0)
    for n in range(1, N):
        total = total + Interval(n).pow(-s)
    NN = Interval(N)
    Ns = NN.pow(-s)
    total = total + NN * Ns / (s - 1) + Ns / 2
    poch = s
    Npow = Ns / NN
    for j in range(1, m + 2):
        term = bernoulli(2 * j) / math.factorial(2 * j) * poch * Npow
        if j == m + 1:
            r = abs(term).hi
            return total + Interval(-1, 1) * Interval(r)
        total = total + term
        poch = poch * (s + 2 * j - 1) * (s + 2 * j)
        Npow = Npow / (NN * NN)


def zeta_deriv_bound_1line(t_hi, N=100):
    """Rigorous upper bound for |zeta'(1+it)| uniformly over 1 <= t <= t_hi.

    From zeta(s) = sum_{n<=N} n^{-s} + N^{1-s}/(s-1) - s int_N^inf {x} x^{-s-1} dx
    differentiated in s, at sigma = 1 and |s - 1| = t >= 1.
    """
    t_hi = as_interval(t_hi)
    NN = Interval(N)
    lN = NN.log()
    S = Interval(0)
    for n in range(2, N + 1):
        S = S + Interval(n).log() / n
    smod = (1 + t_hi * t_hi).sqrt()
    # |s-1| >= 1 on the range we use
    return S + lN + 1 + 1 / NN + smod * (lN + 1) / NN


def em_logline_certificate(grid_step=None):
    """|zeta(1+it)| <= log t - 0.45 for t >= 3.

    t >= 30 pi: certified from the Euler-Maclaurin remainder with h0 = 1/4 and
    the harmonic sum bound.  3 <= t < 30 pi: empirical grid scan with a
    rigorous derivative bound controlling the gaps between grid points.
    Returns (piece, outcomes) where outcomes maps check name -> CertOutcome.
    """
    out = {}
    t0 = 30 * PI
    E = cheng_em_bound(1, t0, Fraction(1, 4))
    # log N + gamma + 1/N with N = floor(t/4) <= t/4 is increasing in N, so
    # it is at most log(t/4) + gamma + 4/t, and 4/t <= 4/t0.
    lhs = EULER + 4 / t0 + E - 2 * LOG2
    out["large t (t >= 30 pi)"] = certify_leq(lhs, iv("-0.45"))
    out["small t grid (3 <= t < 30 pi)"] = _small_t_scan(grid_step)
    # the small-t half is a floating-point scan, so the piece is empirical grade
    piece = BoundPiece.linear("log t - 0.45", 1, "-0.45", Interval(3).log(), None, grade="empirical")
    return piece, out


def _small_t_scan(grid_step=None):
    """Grid scan on [3, 30 pi] with derivative-based excursion control."""
    t_end = float((30 * PI).hi)
    D = float(zeta_deriv_bound_1line(30 * PI).hi)
    # first pass with a coarse grid to read the slack, then pick the step
    coarse = np.linspace(3.0, t_end, 400)
    slack = min(math.log(t) - 0.45 - abs(zeta_em(complex(1, t), 1e-10).value) for t in coarse)
    if slack <= 0:
        return CertOutcome(Status.REFUTED, slack, "grid point violates the bound")
    step = grid_step or (0.1 * slack / D)
    n = int(math.ceil((t_end - 3.0) / step)) + 1
    ts = np.linspace(3.0, t_end, n)
    half = (ts[1] - ts[0]) / 2
    worst = math.inf
    witness = None
    for t in ts:
        z = zeta_em(complex(1, t), 1e-10)
        # the bound log t - 0.45 is increasing, so compare at the left cell edge
        s = math.log(max(3.0, t - half)) - 0.45 - (abs(z.value) + z.err + D * half)
        if s < worst:
            worst, witness = s, t
    if worst > 0:
        return CertOutcome(Status.PROVEN, worst, f"empirical grid, {n} points, |zeta'| <= {D:.4g}")
    return CertOutcome(Status.UNDECIDED, worst, f"witness t = {witness:.6f}")
