"""The order-3 blockwise bounds |zeta(1+it)| <= a log t + B.

Parts 1 and 2 split the main sum into blocks of length ~t^(1/3) and apply
the order-3 test to each block.  Part 3 also runs the order-4 and order-5
Dirichlet-sum lemmas on the initial segment and replaces the trivial bound
for the reflected sum by a t^(-1/12) estimate.

Thresholds are carried as log t (t1 = e^16 and friends).
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .pieces import BoundPiece, LINEAR
from .rigor import (
    EULER, E, PI, TWO_PI, CertOutcome, DomainError, Interval, PreconditionError,
    Status, as_interval, certify_leq, certify_lt, iv,
)
from .thm1 import rho_of, theta_of
from .vdc import ck_dk, corput3_alpha_beta
from .zeta_eval import g_and_R

__all__ = [
    "PropParamsA", "PropParamsB", "PropCertificate", "alpha0_beta0", "b0_of",
    "b1_of", "second_sum_c", "b3_of", "prop_certify", "PAPER_A1", "PAPER_A2",
    "PAPER_B", "hump_sup",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class PropParamsA:
    log_t1: Interval
    eta: Interval
    q0: int

    @classmethod
    def from_mapping(cls, d):
        return cls(_log_arg(d, "t1"), iv(str(d["eta"])), int(d["q0"]))


@dataclass(frozen=True)
class PropParamsB:
    log_t2: Interval
    eta3: Interval
    eta4: Interval
    h1p: Interval
    q0: int
    s0: int
    mu5: Interval
    mu6: Interval
    # eta for the order-3 tail over q0 P <= n <= n1 (the printed B3 has no
    # such term; we default to eta4)
    eta_tail: Optional[Interval] = None

    @classmethod
    def from_mapping(cls, d):
        et = d.get("eta_tail")
        return cls(_log_arg(d, "t2"), iv(str(d["eta3"])), iv(str(d["eta4"])), iv(str(d["h1p"])),
                   int(d["q0"]), int(d["s0"]), iv(str(d["mu5"])), iv(str(d["mu6"])),
                   None if et is None else iv(str(et)))


def _log_arg(d, name):
    if "log_" + name in d:
        return iv(str(d["log_" + name]))
    s = str(d[name]).strip()
    if s.startswith("exp(") and s.endswith(")"):
        return iv(s[4:-1])
    return iv(s).log()


PAPER_A1 = PropParamsA(iv(16), iv("1.304"), 5)
PAPER_A2 = PropParamsA(iv(82), iv("1.028"), 4)
PAPER_B = PropParamsB(iv(93), iv("1.4942456016768517"), iv("2.0960121834416348"),
                      iv("1.126788460908779"), 29, 110, iv("32.114893449766214"),
                      iv("35.523572643294735"))


@dataclass(frozen=True)
class PropCertificate:
    pieces: Tuple[Optional[BoundPiece], Optional[BoundPiece], Optional[BoundPiece]]
    intermediates: Dict[str, Dict[str, Interval]]
    checks: List[Tuple[str, CertOutcome]]
    claims: List[Tuple[str, CertOutcome]] = field(default_factory=list)
    diagnostics: Dict[str, Interval] = field(default_factory=dict)

    def status(self):
        outs = [c.status for _, c in self.checks + self.claims]
        if any(p is None for p in self.pieces):
            outs.append(Status.UNDECIDED)
        if Status.REFUTED in outs:
            return Status.REFUTED
        if Status.UNDECIDED in outs:
            return Status.UNDECIDED
        return Status.PROVEN


# --- order-3 block constants ------------------------------------------------------

def alpha0_beta0(q0, eta):
    if not isinstance(q0, int) or q0 < 1:
        raise DomainError("q0 must be a positive integer")
    W0 = TWO_PI * (q0 + 1) ** 3
    lam0 = Interval(Fraction(q0 + 1, q0) ** 3)
    c = corput3_alpha_beta(W0, lam0, eta)
    return c.alpha, c.beta


def b0_of(q0, eta, log_t1):
    """B0: the block constant with alpha, beta at their maxima alpha0, beta0."""
    eta, L = as_interval(eta), as_interval(log_t1)
    a0, b0 = alpha0_beta0(q0, eta)
    r = 1 + Fraction(1, q0)
    t16 = (L / 6).exp()
    return (b0 * r / TWO_PI.pow(Fraction(1, 6)) + a0 * eta / t16
            + eta * b0 * r * r / (TWO_PI.pow(Fraction(1, 3)) * t16)).sqrt()


def _tau(L):
    return 1 / TWO_PI.sqrt() + (-L / 6).exp() / 2


def hump_sup(log_t1, c):
    """sup over y >= log_t1 of (y/6 - c) e^{-y/12}.

    The function increases up to y = 12 + 6c and decreases afterwards.
    """
    L, c = as_interval(log_t1), as_interval(c)
    yc = 12 + 6 * c
    if L.lo >= yc.hi:
        return (L / 6 - c) * (-L / 12).exp()
    if L.hi <= yc.lo:
        return 2 * (-yc / 12).exp()
    # straddle: take the larger of both (both are valid upper candidates)
    a = (L / 6 - c) * (-L / 12).exp()
    b = 2 * (-yc / 12).exp()
    return Interval(max(a.lo, b.lo), max(a.hi, b.hi))


def _order3_tail(q0, eta, L):
    """Bound for |sum_{q0 P <= n <= n1} n^{-1-it}| uniformly in t >= e^L.

    Returns (sound, printed).  The printed form evaluates the whole
    B0 t^{-1/12}(log t/6 + log tau1 - log(q0 - 1/2)) factor at t1; when the
    constant part is negative that factor is not decreasing, so the sound
    form uses its true supremum.
    """
    a0, _ = alpha0_beta0(q0, eta)
    B0 = b0_of(q0, eta, L)
    lead = a0.sqrt() / TWO_PI.pow(Fraction(1, 6)) * 2 / (Interval(q0) - HALF).sqrt()
    c = (Interval(q0) - HALF).log() - _tau(L).log()
    printed = lead + B0 * (-L / 12).exp() * (L / 6 - c)
    sound = lead + B0 * hump_sup(L, c)
    return sound, printed, {"alpha0": a0, "B0": B0, "tau1": _tau(L)}


def _part_a_checks(p):
    L = p.log_t1
    checks = [("t1 >= exp(12)", certify_leq(12, L))]
    t1 = L.exp()
    P = _ceil(t1.pow(Fraction(1, 3)))
    n1 = _floor((t1 / TWO_PI).sqrt())
    if P is None or n1 is None:
        checks.append(("P, n1 at t1", CertOutcome(Status.UNDECIDED, 0.0, "integer part not resolved")))
        return checks
    Q = n1 // P
    checks.append(("q0 P > 1 at t1", _exact(2, p.q0 * P)))
    checks.append(("q0 <= Q at t1", _exact(p.q0, Q)))
    return checks


def _exact(a, b):
    from .rigor import certify_exact_leq
    return certify_exact_leq(a, b)


def _floor(x):
    lo, hi = math.floor(x.lo), math.floor(x.hi)
    return int(lo) if lo == hi else None


def _ceil(x):
    lo, hi = math.ceil(x.lo), math.ceil(x.hi)
    return int(lo) if lo == hi else None


def b1_of(params):
    """Part 1/2 piece constant B1(q0) + g(t1)/sqrt(2 pi) + R(t1).

    Returns (sound constant, printed-evaluation constant, intermediates, checks).
    """
    p = params
    L, q0 = p.log_t1, p.q0
    checks = _part_a_checks(p)
    t1 = L.exp()
    t13 = (L / 3).exp()
    sound_tail, printed_tail, inter = _order3_tail(q0, p.eta, L)
    head = EULER + (q0 + (q0 - 1) / t13).log() + 1 / (q0 * t13 - 1)
    g, R = g_and_R(t1)
    rest = g / TWO_PI.sqrt() + R
    sound = head + sound_tail + rest
    printed = head + printed_tail + rest
    inter = dict(inter, head=head, g_over_sqrt2pi_plus_R=rest, B1_sound=sound, B1_printed=printed)
    return sound, printed, inter, checks


# --- part 3 -----------------------------------------------------------------------------

def second_sum_c(s0, eta4, log_t2):
    """C(s0, eta4, t2) with |sum_{n <= n1} n^{it}| <= C t^{5/12} for t >= t2.

    Returns (sound, printed).  Two bracketed terms of the printed C increase
    with t; the sound value replaces them by their t -> infinity limits.
    """
    L = as_interval(log_t2)
    a0, _ = alpha0_beta0(s0, eta4)
    B0 = b0_of(s0, eta4, L)
    t112 = (L / 12).exp()
    pre = 1 + (-L / 3).exp()
    lead = 2 * a0.sqrt() / TWO_PI.pow(Fraction(1, 6))
    sound = pre * (s0 / t112 + lead / TWO_PI.pow(Fraction(1, 4)) + B0 / TWO_PI.sqrt())
    printed = pre * (s0 / t112 + lead * (1 / TWO_PI.pow(Fraction(1, 4)) - Interval(s0).sqrt() / t112)
                     + B0 * (1 / TWO_PI.sqrt() - (s0 - 1) / (L / 6).exp()))
    return sound, printed


def mu_condition(p):
    """1 < mu6 t2^(theta6/2) <= mu5 t2^(theta5/2) <= q0 ceil(t2^(1/3)) - 1."""
    L = p.log_t2
    z6 = p.mu6 * (L * theta_of(6) / 2).exp()
    z5 = p.mu5 * (L * theta_of(5) / 2).exp()
    P = _ceil((L / 3).exp())
    out = [("mu: 1 < Z6(t2)", certify_lt(1, z6)), ("mu: Z6(t2) <= Z5(t2)", certify_leq(z6, z5))]
    if P is None:
        out.append(("mu: Z5(t2) <= q0 P - 1", CertOutcome(Status.UNDECIDED, 0.0, "ceil(t2^(1/3)) not resolved")))
    else:
        out.append(("mu: Z5(t2) <= q0 P - 1", certify_leq(z5, p.q0 * P - 1)))
    return out, z6, z5


def b3_of(params):
    """Part 3 constant B3 for |zeta(1+it)| <= (8/33) log t + B3, t >= t2.

    Returns (sound B3, printed-display B3, intermediates, checks).  The
    sound value adds the order-3 tail over q0 P <= n <= n1, which the
    printed display leaves out, and uses the sound C.
    """
    p = params
    L = p.log_t2
    checks = [("t2 >= exp(182/3)", certify_leq(Fraction(182, 3), L))]
    mu_checks, z6, z5 = mu_condition(p)
    checks += mu_checks
    checks.append(("h1' > 1", certify_lt(1, p.h1p)))
    if not all(c.status is Status.PROVEN for _, c in checks):
        return None, None, {}, checks
    hp = p.h1p + p.h1p / (z6 - 1)
    checks.append(("h' > 1", certify_lt(1, hp)))
    mu4 = p.q0 + (p.q0 - 1) * (-L / 3).exp()
    c4, c5 = ck_dk(p.eta3, hp, 4), ck_dk(p.eta3, hp, 5)
    A4p = p.mu5.pow(Fraction(-2, 7)) * c4.C_k + mu4.pow(Fraction(1, 28)) * c4.D_k
    A5p = p.mu6.pow(Fraction(-1, 6)) * c5.C_k + p.mu5.pow(Fraction(1, 24)) * c5.D_k
    lh = p.h1p.log()
    B4p = Interval(Fraction(1, 39)) + _pos(mu4.log() - p.mu5.log() + lh) / L
    B5p = Interval(Fraction(28, 429)) + _pos(p.mu5.log() - p.mu6.log() + lh) / L
    mid = (A4p * B4p * (-rho_of(4) * L).exp() * L + Interval(990) / (7 * E) * A5p * B5p) / lh
    init = p.mu6.log() + lh + EULER + 1 / (p.h1p * z6 - 1)
    C_sound, C_printed = second_sum_c(p.s0, p.eta4, L)
    t2 = L.exp()
    g, R = g_and_R(t2)
    gt = g / (L / 12).exp()
    eta_tail = p.eta_tail if p.eta_tail is not None else p.eta4
    tail, _, tail_inter = _order3_tail(p.q0, eta_tail, L)
    printed = mid + init + C_printed * gt + R
    sound = mid + init + C_sound * gt + R + tail
    inter = {
        "h_prime": hp, "mu4": mu4, "A4p": A4p, "A5p": A5p, "B4p": B4p, "B5p": B5p,
        "C4": c4.C_k, "D4": c4.D_k, "C5": c5.C_k, "D5": c5.D_k,
        "middle": mid, "initial": init, "C": C_sound, "C_printed": C_printed,
        "second_sum": C_sound * gt, "order3_tail": tail, "R": R,
        "B3_sound": sound, "B3_printed": printed, **{"tail_" + k: v for k, v in tail_inter.items()},
    }
    return sound, printed, inter, checks


def _pos(x):
    return Interval(max(0, x.lo), max(0, x.hi))


# --- assembly ---------------------------------------------------------------------------

def prop_certify(a1=PAPER_A1, a2=PAPER_A2, b=PAPER_B, targets=("4.664", "4.308", "12.53")):
    """All three parts.  ``targets`` are the constants claimed for each part
    (None to skip); a part whose parameters are missing is left unavailable."""
    pieces = [None, None, None]
    inter = {}
    checks = []
    claims = []
    diag = {}
    for idx, (tag, pa) in enumerate((("part1", a1), ("part2", a2))):
        if pa is None:
            continue
        sound, printed, it, ch = b1_of(pa)
        inter[tag] = it
        checks += [(f"{tag}: {n}", c) for n, c in ch]
        diag[tag + "_printed"] = printed
        if all(c.status is Status.PROVEN for _, c in ch):
            pieces[idx] = BoundPiece(f"1/3 log t + B1 ({tag})", LINEAR,
                                     (Interval(Fraction(1, 3)), sound), pa.log_t1, None, "certified")
            if targets[idx] is not None:
                claims.append((f"{tag}: constant <= {targets[idx]}", certify_leq(sound, iv(targets[idx]))))
    if b is not None:
        sound, printed, it, ch = b3_of(b)
        inter["part3"] = it
        checks += [(f"part3: {n}", c) for n, c in ch]
        if sound is not None:
            diag["part3_printed"] = printed
            slope = Interval(Fraction(theta_of(6), 2))
            pieces[2] = BoundPiece("8/33 log t + B3", LINEAR, (slope, sound), b.log_t2, None, "certified")
            if targets[2] is not None:
                claims.append((f"part3: constant <= {targets[2]}", certify_leq(sound, iv(targets[2]))))
    return PropCertificate(tuple(pieces), inter, checks, claims, diag)
