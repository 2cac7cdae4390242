"""Bounds for zeta'/zeta and 1/zeta on (and just right of) the 1-line.

Q1 bounds |zeta'/zeta(sigma+it)| for 1 <= sigma <= 1 + 2d loglog t/log t
and Q2 bounds |1/zeta(1+it)|, both as multiples of log t/loglog t for
t >= t0.  Everything t-dependent is evaluated at its worst case t = t0.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from .rigor import (
    E, EULER, LOG2, CertOutcome, DomainError, Interval, PreconditionError,
    Status, as_interval, certify_exact_leq, certify_leq, certify_lt, iv,
)
from .zeta_eval import zeta_deriv_bound_1line, zeta_em, zeta_real

__all__ = [
    "Thm2Params", "Thm2Certificate", "zeta_log_AB", "cprime", "q1", "q2",
    "thm2_certify", "splice_small_t", "PAPER_PARAMS", "REMARK_PARAMS", "C0_ZERO_FREE",
]

C0_ZERO_FREE = 1 / iv("21.432")
FORD_A = iv("76.2")
TRUDGIAN_23 = iv("62.6")


@dataclass(frozen=True)
class Thm2Params:
    t0: Interval
    eps: Interval
    C: Interval
    d: Interval
    d1: Interval
    # C as an exact multiple of e^2 when known (e.g. 1/8), so the
    # boundary case C = e^2/8 can be decided exactly
    C_over_e2: Optional[Fraction] = None

    @classmethod
    def from_mapping(cls, d):
        c_raw = str(d["C"]).replace(" ", "")
        ratio = None
        m = _E2_FORMS.get(c_raw)
        if m is not None:
            ratio = m
        elif c_raw.startswith("e^2/") or c_raw.startswith("exp(2)/"):
            ratio = Fraction(1, int(c_raw.split("/", 1)[1]))
        C = E * E * ratio if ratio is not None else iv(c_raw)
        return cls(iv(str(d["t0"])), iv(str(d["eps"])), C, iv(str(d["d"])), iv(str(d["d1"])), ratio)


_E2_FORMS = {"e^2/8": Fraction(1, 8), "exp(2)/8": Fraction(1, 8)}

PAPER_PARAMS = Thm2Params(iv(500), iv("0.52"), E * E / 8, iv("0.018"), iv("0.0065"), Fraction(1, 8))
REMARK_PARAMS = Thm2Params(iv(16), iv("0.52"), E * E / 8, iv("0.0147"), iv("0.0056"), Fraction(1, 8))


@dataclass(frozen=True)
class Thm2Certificate:
    params: Thm2Params
    c1: Interval
    C1: Interval
    AB: Tuple[Interval, Interval]
    A_max: Interval
    X_max: Interval
    r_at_t0: Interval
    alpha: Interval
    beta: Interval
    lambda1: Interval
    lambda2: Interval
    Q1: Interval
    R1: Interval
    Q2: Interval
    constraints: List[Tuple[str, CertOutcome]]
    claims: List[Tuple[str, CertOutcome]] = field(default_factory=list)
    strip_width: Fraction = Fraction(0)
    splice: Optional[dict] = None

    def status(self):
        outs = [c.status for _, c in self.constraints + self.claims]
        if Status.REFUTED in outs:
            return Status.REFUTED
        if Status.UNDECIDED in outs:
            return Status.UNDECIDED
        return Status.PROVEN


def _ll(t):
    return t.log().log()


def c_assumption(C, C_over_e2=None):
    """C (loglog t_e)^2/log t_e <= 1/2 with t_e = e^{e^2}, i.e. C <= e^2/8."""
    if C_over_e2 is not None:
        return certify_exact_leq(C_over_e2, Fraction(1, 8))
    return certify_leq(4 * as_interval(C) / (E * E), Fraction(1, 2))


def zeta_log_AB(C, t0, C_over_e2=None):
    """(A, B) with |zeta(sigma+it)| <= A log^B t on sigma_t <= sigma <= 2, t >= t0.

    Returns (A, B, checks).  The second check is the right-of-1 branch:
    62.6 sqrt(1+9/t0^2)(1 + log sqrt(1+9/t0^2)/log t0) must not exceed A.
    """
    C, t0 = as_interval(C), as_interval(t0)
    checks = [("C assumption", c_assumption(C, C_over_e2)),
              ("t0 >= e^e", certify_leq(E.exp(), t0))]
    B = Fraction(2, 3) + iv("71.2") * C.pow(Fraction(3, 2)) / (E * E)
    q = (1 + 9 / (t0 * t0)).sqrt()
    pl = TRUDGIAN_23 * q * (1 + q.log() / t0.log())
    checks.append(("right-of-1 branch below A", certify_leq(pl, FORD_A)))
    return FORD_A, B, checks


def cprime(d1, t0):
    """C'(d1, t0) = exp(gamma d1 loglog t0/log t0)/d1."""
    d1, t0 = as_interval(d1), as_interval(t0)
    if not d1.lo > 0:
        raise DomainError("d1 must be > 0")
    if not t0.lo >= E.exp().hi:
        raise DomainError("need t0 >= e^e")
    return (EULER * d1 * _ll(t0) / t0.log()).exp() / d1


def q1(p, c0_rule="min"):
    """The zeta'/zeta chain; returns a dict of constants and the constraint list.

    ``c0_rule="max"`` reproduces the published (unsound) choice of C0 and is
    only meant for diagnostics.
    """
    t0, eps, C, d = p.t0, p.eps, p.C, p.d
    cons = []
    if not t0.lo > E.exp().hi:
        cons.append(("t0 >= e^e", CertOutcome(Status.REFUTED, float(t0.hi - E.exp().lo))))
        return None, cons
    cons.append(("0 < eps <= 1", _all(certify_lt(0, eps), certify_leq(eps, 1))))
    cons.append(("d > 0", certify_lt(0, d)))
    A, B, ab_checks = zeta_log_AB(C, t0, p.C_over_e2)
    cons += ab_checks
    L0 = t0.log()
    LL0 = L0.log()
    # C0 = C * min(...): both ratios are lower bounds for the relevant
    # (loglog)^2/log quotient, so the valid constant is the smaller one
    ra = (_ll(t0 - eps) / LL0) ** 2
    rb = L0 / (t0 + eps).log()
    C1_sound = C * Interval(min(ra.lo, rb.lo), min(ra.hi, rb.hi))
    C1_printed = C * Interval(max(ra.lo, rb.lo), max(ra.hi, rb.hi))
    C1 = C1_sound if c0_rule == "min" else C1_printed
    e2 = E * E
    cons.append(("r-eps condition", certify_leq(d / E + (C1 + d) * 4 / e2, eps)))
    c1 = C0_ZERO_FREE * L0 / (t0 + eps).log()
    alpha = (d + c1) / (d + C1 * LL0)
    cons.append(("alpha cond", certify_lt(alpha, Fraction(1, 2))))
    beta = d / (c1 + d)
    cons.append(("beta < 1", certify_lt(beta, 1)))
    r0 = (C1 + d / LL0) * LL0 * LL0 / L0
    sig = 1 + d * LL0 / L0
    zs = zeta_real(sig)
    z2 = zeta_real(2 * sig)
    X_max = zs * (sig - 1) / z2
    A_max = A * (1 + (1 + eps / t0).log() / L0).pow(B)
    K = (A_max * X_max / d).log()
    # the bracket in Q1 is maximal at t0 when log(A_max X_max/d) >= logloglog t0
    cons.append(("Q1 bracket maximal at t0", certify_leq(LL0.log(), K)))
    den = C1 * LL0 - d - 2 * c1
    cons.append(("1 - 2 alpha > 0 denominator", certify_lt(0, den)))
    lam1 = 8 * d / (C1 * c1) * ((C1 * LL0 + d) / den) ** 2
    lam2 = 1 / d + 2 / c1
    Q1 = lam1 * (B + 1 - LL0.log() / LL0 + K / LL0) + lam2
    out = {"A": A, "B": B, "C1": C1, "C1_printed": C1_printed, "c1": c1, "alpha": alpha,
           "beta": beta, "r_at_t0": r0, "sigma_prime": sig, "X_max": X_max, "A_max": A_max,
           "lambda1": lam1, "lambda2": lam2, "Q1": Q1}
    return out, cons


def _all(*outs):
    for c in outs:
        if c.status is not Status.PROVEN:
            return c
    return CertOutcome(Status.PROVEN, min(c.margin for c in outs))


def q2(p, R1):
    """Q2(d1, t0) given a certified R1 for zeta'/zeta on the strip of width 2d."""
    R1 = as_interval(R1)
    if not p.d1.hi <= (2 * p.d).lo:
        raise PreconditionError("need d1 <= 2d")
    if not p.d1.lo > 0:
        raise DomainError("d1 must be > 0")
    L0 = p.t0.log()
    LL0 = L0.log()
    return ((R1 * p.d1).exp() * (LL0 / L0 + 1 / p.d1).pow(Fraction(3, 4))
            * (cprime(p.d1, 2 * p.t0) * (LOG2 / L0 + 1)).pow(Fraction(1, 4)))


def splice_small_t(t_lo=3, t_hi=500, step=0.01, coeff="2.079", target="430.5"):
    """Empirical check of 1/|zeta(1+it)| <= coeff log t on [t_lo, t_hi].

    Pointwise on a grid of the given step; ``excursion`` is the worst margin
    after subtracting a rigorous bound on |zeta'| times step/2 from |zeta|
    (informational).  Also certifies coeff log t <= target log t/loglog t on
    the range (i.e. coeff loglog t_hi <= target).
    """
    n = int(round((t_hi - t_lo) / step))
    ts = t_lo + step * np.arange(n + 1)
    D = float(zeta_deriv_bound_1line(Interval(t_hi)).hi)
    cval = float(coeff)
    worst = math.inf
    worst_t = None
    worst_exc = math.inf
    viol = 0
    for t in ts:
        z = zeta_em(complex(1.0, float(t)), 1e-10)
        m = abs(z.value) - z.err
        lim = 1.0 / (cval * math.log(t))
        slack = m - lim
        if slack < worst:
            worst, worst_t = slack, float(t)
        if slack <= 0:
            viol += 1
        worst_exc = min(worst_exc, slack - D * step / 2)
    comp = certify_leq(iv(coeff) * Interval(t_hi).log().log(), iv(target))
    return {"points": int(n + 1), "violations": viol, "min_slack": worst, "argmin_t": worst_t,
            "excursion_margin": worst_exc, "deriv_bound": D, "comparison": comp, "grade": "empirical"}


def thm2_certify(params=PAPER_PARAMS, R1=None, targets=(154, "430.5"), splice=False):
    """Full chain.  ``targets`` are the (R1, R2) values to certify; R1 for
    Q2 defaults to the upper endpoint of Q1."""
    p = params
    out, cons = q1(p)
    if out is None:
        nan = Interval(0)
        return Thm2Certificate(p, nan, nan, (nan, nan), nan, nan, nan, nan, nan, nan, nan,
                               nan, nan, nan, cons)
    claims = []
    if targets and targets[0] is not None:
        claims.append((f"Q1 <= {targets[0]}", certify_leq(out["Q1"], iv(str(targets[0])))))
    # Q2 is built from Q1's certified upper endpoint unless R1 is given
    if R1 is None:
        R1 = Interval(out["Q1"].hi)
    else:
        R1 = as_interval(R1)
        claims.append(("Q1 <= R1", certify_leq(out["Q1"], R1)))
    try:
        Q2 = q2(p, R1)
    except PreconditionError as exc:
        cons.append(("d1 <= 2d", CertOutcome(Status.REFUTED, 0.0, str(exc))))
        Q2 = Interval(0)
    else:
        cons.append(("d1 <= 2d", certify_leq(p.d1, 2 * p.d)))
    if targets and len(targets) > 1 and targets[1] is not None:
        claims.append((f"Q2 <= {targets[1]}", certify_leq(Q2, iv(str(targets[1])))))
    strip = Fraction(2) * Fraction(str(float(p.d.mid))) if p.d.lo == p.d.hi else _dec_frac(p.d)
    sp = None
    if splice:
        sp = splice_small_t()
        status = Status.PROVEN if sp["violations"] == 0 else Status.REFUTED
        claims.append(("small-t splice (empirical)", CertOutcome(status, sp["min_slack"], "empirical grade")))
        claims.append(("2.079 log t <= 430.5 log t/loglog t on [3, 500]", sp["comparison"]))
    return Thm2Certificate(p, out["c1"], out["C1"], (out["A"], out["B"]), out["A_max"], out["X_max"],
                           out["r_at_t0"], out["alpha"], out["beta"], out["lambda1"], out["lambda2"],
                           out["Q1"], R1, Q2, cons, claims, strip, sp)


def _dec_frac(x):
    """Exact rational for a decimal-literal interval (shortest decimal inside)."""
    from decimal import Decimal
    for digits in range(1, 40):
        s = f"{float(x.mid):.{digits}g}"
        q = Fraction(Decimal(s))
        if x.contains(q):
            return 2 * q
    return 2 * Fraction(float(x.mid))
