"""The |zeta(1+it)| <= c log t / loglog t pipeline.

From the free parameters (eta3, h1, h2, t0) to the chain
b0, A0, A1, A2, A3c, A4, A5, A6, plus the piecewise assembly over all
t >= 3 and the gap-ratio analysis.

t0 is carried as L = log t0 throughout; t0 itself (e^3069) is never needed.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .pieces import LOGLOG, BoundPiece
from .rigor import (
    EULER, LOG2, LOG_2PI, PI, SQRT_2PI, CertOutcome, DomainError, Interval,
    PreconditionError, Status, as_interval, certify_exact_leq, certify_leq,
    certify_lt, imax, iv, log_factorial,
)
from .vdc import ak_bk, ck_dk, delta_k, exponents
from .zeta_eval import g_and_R

__all__ = [
    "Thm1Params", "Thm1Trace", "Thm1Certificate", "A0Result", "A2Result",
    "GapResult", "TableRow", "sup_tilde_a2", "theta_of", "rho_of", "rho_rational", "kappa",
    "h_of", "r0_of", "big_a", "fixed_points", "a0_sup", "a2_inf", "certify",
    "gap_ratio", "theorem1_table", "table_pieces", "stated_table_pieces",
    "published_arithmetic", "PAPER_PARAMS",
]

T0_LOG_MIN = Fraction(990, 7)
TWELFTH_ROOT_2 = Interval(2).pow(Fraction(1, 12))


# --- exact ingredients --------------------------------------------------------

def theta_of(k):
    if not isinstance(k, int) or k < 3:
        raise DomainError("theta_k needs an integer k >= 3")
    K = 2 ** (k - 1)
    return Fraction(2 * K, (k - 2) * K + 4)


def rho_rational(k):
    if not isinstance(k, int) or k < 3:
        raise DomainError("rho_k needs an integer k >= 3")
    K = 2 ** (k - 1)
    return Fraction(K - 2, K - 1) / (2 * (k - 1) * K + 4)


def rho_of(k):
    """rho(k) for integer k (exact, then enclosed) or real k (Interval)."""
    if isinstance(k, int):
        return Interval(rho_rational(k))
    k = as_interval(k)
    if not k.lo >= 3:
        raise DomainError("rho needs k >= 3")
    y = Interval(2).pow(k)              # 2^k = 2K
    den = (k - 1) * y + 4
    return (y - 4) / (y - 2) / den


def kappa(h2, log_t):
    """kappa(h2, t) with t = exp(log_t)."""
    h2, L = as_interval(h2), as_interval(log_t)
    if not L.lo > 1:
        raise DomainError("kappa needs t >= e^e")
    v = h2 * L.log()
    den = v - 1 + Interval(2).pow(2 - v)
    if not den.lo > 0:
        raise DomainError("kappa denominator must be positive")
    return ((L - LOG_2PI) / den).exp()


def h_of(h1, h2, log_t0):
    h1 = as_interval(h1)
    return h1 + h1 / (kappa(h2, log_t0) - 1)


def r0_of(h2, log_t0):
    """floor(h2 loglog t0), certified (raises if the enclosure straddles an integer)."""
    v = as_interval(h2) * as_interval(log_t0).log()
    lo, hi = math.floor(v.lo), math.floor(v.hi)
    if lo != hi:
        raise PreconditionError("h2*loglog(t0) too close to an integer to fix r0")
    return int(lo)


def _two_pi_power(e):
    return (LOG_2PI * e).exp()


def big_a(eta3, h, k, include_d=True):
    """A(eta3, h, k); ``include_d=False`` drops the D_k term (diagnostic only)."""
    if not isinstance(k, int) or k < 3:
        raise DomainError("k must be an integer >= 3")
    K, e1, e2 = exponents(k)
    cd = ck_dk(eta3, h, k)
    D = cd.D_k if include_d else Interval(0)
    if k <= 5:
        return (_two_pi_power(theta_of(k + 1) * Fraction(k, 4 * (K - 1))) * cd.C_k
                + _two_pi_power(-theta_of(k) * (Fraction(k, 4 * (K - 1)) - Fraction(1, K))) * D)
    return _two_pi_power(Fraction(8 * k, 81 * (K - 1))) * cd.C_k + D


# --- A0 ---------------------------------------------------------------------------

def fixed_points(eta3):
    """mu10, nu10, delta10 and the fixed points x*, y* of the majorising maps.

    ``x_star`` uses mu10 as printed (the ratio at k = 10).  That ratio
    increases with k towards 2^(1/12), so the sound majorant uses
    ``x_star_sup`` built from 2^(1/12).
    """
    d10 = delta_k(eta3, 10)
    mu10 = Interval(2).pow(Fraction(19, 12)) * 511 / Interval(2092035).sqrt()
    nu10 = Interval(2).pow(Fraction(3, 2)) * 511 / (3 * Interval(231767).sqrt())

    def fp(mu):
        md = mu * d10
        return (md / 2 + (md * md / 4 + d10).sqrt()) ** 2

    return {
        "delta10": d10, "mu10": mu10, "nu10": nu10,
        "x_star": fp(mu10), "x_star_sup": fp(TWELFTH_ROOT_2),
        "y_star": (d10 * nu10) ** 2,
    }


def _env_c(h, k):
    K, e1, _ = exponents(k)
    lf = (log_factorial(k - 1) - LOG_2PI) / (2 * K - 2)
    return h.pow(Fraction(2 * k, K) - e1) * (h - 1) * lf.exp()


def _env_d(h, k):
    K, e1, e2 = exponents(k)
    lf = (log_factorial(k - 1) - LOG_2PI) / (2 * K - 2)
    return h.pow(e1) * (h - 1).pow(1 - e2) * (-lf).exp()


@dataclass(frozen=True)
class A0Result:
    A0: Interval
    table: Dict[int, Interval]
    tail_bound: Interval
    k_cap: int
    A10: Interval
    B10: Interval
    fixed: Dict[str, Interval]
    checks: List[Tuple[str, CertOutcome]]
    paper_claims: List[Tuple[str, CertOutcome]]


def a0_sup(eta3, h, k_cap=1000):
    """A0 = sup_{k>=6} A(eta3, h, k) with a certified tail.

    k = 6..10 are computed directly.  For k >= 11 we use
    A_k(eta3, h^k) <= max(A_10(eta3, h^10), x_star_sup) and
    B_k <= max(B_10, y*), both from the majorising fixed-point maps, times
    the explicit C/D envelopes for k <= k_cap and a monotone analytic
    envelope for k > k_cap.
    """
    eta3, h = as_interval(eta3), as_interval(h)
    if k_cap < 11:
        raise DomainError("k_cap must be >= 11")
    table = {k: big_a(eta3, h, k) for k in range(6, 11)}
    fx = fixed_points(eta3)
    kc10 = ak_bk(eta3, h ** 10, 10)
    A10, B10 = kc10.A_k, kc10.B_k
    checks = []
    # delta_k decreasing in k  <=>  2337^2 * 9 pi eta3 / 1024 >= 1
    base = Interval(2337 ** 2) * 9 * PI * eta3 / 1024
    checks.append(("delta_k decreasing in k", certify_leq(1, base)))
    # ratio 2^(19/12)(K-1)/sqrt((2K-1)(4K-3)) <= 2^(1/12)  <=>  5 <= 6K (exact)
    checks.append(("A-ratio <= 2^(1/12) for all k", certify_exact_leq(5, 6 * 2 ** 9)))
    # ratio 2^(3/2)(K-1)/sqrt((2K-3)(4K-5)) decreasing for K > 4/3 (exact)
    checks.append(("B-ratio decreasing for k >= 10", certify_exact_leq(Fraction(4, 3), 2 ** 9)))
    xbar = imax(A10, fx["x_star_sup"])
    ybar = imax(B10, fx["y_star"])
    tail = Interval(0)
    max_ec = Interval(0)
    max_ed = Interval(0)
    for k in range(10, k_cap + 1):
        ec, ed = _env_c(h, k), _env_d(h, k)
        max_ec, max_ed = imax(max_ec, ec), imax(max_ed, ed)
        if k >= 11:
            K = 2 ** (k - 1)
            bound = _two_pi_power(Fraction(8 * k, 81 * (K - 1))) * xbar * ec + ybar * ed
            tail = imax(tail, bound)
    # k > k_cap: every factor below is a non-increasing majorant in k
    k1 = k_cap + 1
    K1 = 2 ** (k1 - 1)
    _, e1, e2 = exponents(k1)
    fact = (Interval(k1 - 1) * Interval(k1 - 1).log() / (2 * K1 - 2)).exp()
    ec_inf = h.pow(Fraction(2 * k1, K1) - e1) * (h - 1) * fact
    ed_inf = h.pow(e1) * (h - 1).pow(1 - e2)
    tail_inf = _two_pi_power(Fraction(8 * k1, 81 * (K1 - 1))) * xbar * ec_inf + ybar * ed_inf
    tail = imax(tail, tail_inf)
    A0 = imax(*table.values(), tail)

    a6 = table[6]
    claims = [
        ("A10 <= x* (printed mu10)", certify_leq(A10, fx["x_star"])),
        ("B10 <= y*", certify_leq(B10, fx["y_star"])),
        ("mu10 is the max of the A-ratio over k >= 10", certify_leq(TWELFTH_ROOT_2, fx["mu10"])),
        (f"C envelope < 0.0073 on k = 10..{k_cap}", certify_lt(max_ec, iv("0.0073"))),
        (f"D envelope < 0.0001 on k = 10..{k_cap}", certify_lt(max_ed, iv("0.0001"))),
        ("A(k) < 0.0203 for k >= 10", certify_lt(imax(table[10], tail), iv("0.0203"))),
        ("A0 = A(6)", certify_leq(imax(table[7], table[8], table[9], table[10], tail), a6)),
    ]
    return A0Result(A0, table, tail, k_cap, A10, B10, fx, checks, claims)


# --- A2 ---------------------------------------------------------------------------

@dataclass(frozen=True)
class A2Result:
    A2: Interval
    a2_at_u0: Interval
    b1: Interval
    u0: Interval
    r0: int
    checks: List[Tuple[str, CertOutcome]]
    paper_claims: List[Tuple[str, CertOutcome]]
    sup_tilde_a2: Interval


def _tilde_a2(v):
    l2 = LOG2
    two_v = Interval(2).pow(-v)
    num = (v - 1) * l2 + 1 - two_v * (8 * (v - 1) * l2 + 6) + two_v * two_v * (8 * (v - 2) * l2 + 8)
    den = (v - 1 + 4 * two_v) * (1 - 2 * two_v) * (1 - 4 * two_v)
    return num / den


def _printed_majorant(v0):
    c = Interval(2).pow(2 - v0)
    return ((v0 - 1) * LOG2 + 1) / ((v0 - 1 + c) * (1 - Interval(2).pow(1 - v0)) * (1 - c))


def _tail_majorant(V):
    """Bound on tilde-a2(v) for all v >= V (> 3), non-increasing in V."""
    return ((V - 1) * LOG2 + 1) / ((V - 1) * (1 - Interval(2).pow(1 - V)) * (1 - Interval(2).pow(2 - V)))


def sup_tilde_a2(v0, span=10, cells=2000):
    """Certified enclosure of sup_{v >= v0} tilde-a2(v)."""
    v0 = as_interval(v0)
    if not v0.lo > 3:
        raise DomainError("need v0 > 3")
    a = v0.lo
    sup = _tail_majorant(Interval(a) + span).hi
    for i in range(cells):
        cell = Interval(a + Fraction(span * i, cells), a + Fraction(span * (i + 1), cells))
        sup = max(sup, _tilde_a2(cell).hi)
    return Interval(_tilde_a2(v0).lo, sup)


def a2_inf(h1, h2, log_t0, b1_theta=6):
    """A2 = exp(a2(u0)) after certifying that a2 is increasing on u >= u0.

    ``b1_theta`` selects the theta index in b1 = theta_j + 2 log h1/log t0;
    the printed definition is j = 6.  Any larger b1 gives a smaller, still
    valid A2.
    """
    h1, h2, L = as_interval(h1), as_interval(h2), as_interval(log_t0)
    u0 = L.log()
    v0 = h2 * u0
    r0 = r0_of(h2, L)
    lim = LOG2 + Fraction(1, 5)
    # tilde-a2 is bounded by interval cells on [v0, v0 + 10] and a monotone
    # majorant beyond.  The printed intermediate majorant is not an upper
    # bound (one denominator factor moved the wrong way) so it is only a
    # diagnostic.
    for cells in (200, 2000):
        s = sup_tilde_a2(v0, cells=cells)
        ca = certify_lt(Interval(s.hi), lim)
        if ca.proven:
            break
    checks = [("(a) sup tilde-a2 < log 2 + 0.2", ca)]
    slope = 1 - lim * h2
    checks.append(("(b) 1 - (log 2 + 0.2) h2 > 0", certify_lt(0, slope)))
    checks.append(("(c) e^u0 (1 - (log 2 + 0.2) h2) - h2 - 1 > 0", certify_lt(0, L * slope - h2 - 1)))
    den = v0 - 1 + Interval(2).pow(2 - r0)
    checks.append(("remaining-term derivative >= -h2 - 1", certify_leq(2, den * den)))
    b1 = Interval(theta_of(b1_theta)) + 2 * h1.log() / L
    a2 = 1 - b1 + L * rho_of(v0) + 2 / den - u0
    printed = [("printed majorant at v0 <= log 2 + 0.2", certify_leq(_printed_majorant(v0), lim))]
    return A2Result(a2.exp(), a2, b1, u0, r0, checks, printed, s)


# --- certificate --------------------------------------------------------------------

@dataclass(frozen=True)
class Thm1Params:
    eta3: Interval
    h1: Interval
    h2: Interval
    log_t0: Interval          # t0 = exp(log_t0)
    b1_theta: int = 6
    k_cap: int = 1000

    @classmethod
    def from_mapping(cls, d):
        if "log_t0" in d:
            L = iv(str(d["log_t0"]))
        elif "t0" in d:
            s = str(d["t0"]).strip()
            if s.startswith("exp(") and s.endswith(")"):
                L = iv(s[4:-1])
            else:
                L = iv(s).log()
        else:
            raise KeyError("log_t0")
        return cls(iv(str(d["eta3"])), iv(str(d["h1"])), iv(str(d["h2"])), L,
                   int(d.get("b1_theta", 6)), int(d.get("k_cap", 1000)))


PAPER_PARAMS = Thm1Params(iv("0.8410538348318537"), iv("1.0072318915891114"),
                          iv("0.8643140421215492"), iv("3069"))


@dataclass(frozen=True)
class Thm1Trace:
    r0: int
    h: Interval
    kappa0: Interval
    phi: Dict[int, Interval]
    A_table: Dict[int, Interval]
    x_star: Interval
    y_star: Interval
    x_star_sup: Interval
    b1: Interval
    u0: Interval
    a2_at_u0: Interval
    a0_tail_bound: Interval
    paper_claims: List[Tuple[str, CertOutcome]] = field(default_factory=list)


@dataclass(frozen=True)
class Thm1Certificate:
    params: Thm1Params
    b0: Optional[Interval]
    A0: Optional[Interval]
    A1: Optional[Interval]
    A2: Optional[Interval]
    A3c: Optional[Interval]
    A4: Optional[Interval]
    A5: Optional[Interval]
    A6: Optional[Interval]
    preconditions: List[Tuple[str, CertOutcome]]
    trace: Optional[Thm1Trace]
    claims: List[Tuple[str, CertOutcome]] = field(default_factory=list)

    @property
    def valid(self):
        return self.A6 is not None and all(c.status is Status.PROVEN for _, c in self.preconditions)

    def status(self):
        outs = [c.status for _, c in self.preconditions + self.claims]
        if Status.REFUTED in outs:
            return Status.REFUTED
        if Status.UNDECIDED in outs:
            return Status.UNDECIDED
        return Status.PROVEN


def _failed(params, pre):
    return Thm1Certificate(params, None, None, None, None, None, None, None, None, pre, None)


def certify(params, target=iv("1.721")):
    p = params
    L = p.log_t0
    pre = []

    def gate(name, outcome):
        pre.append((name, outcome))
        return outcome.status is Status.PROVEN

    if not gate("t0 range", certify_leq(T0_LOG_MIN, L)):
        return _failed(p, pre)
    if not gate("1 < h1 <= 2", _both(certify_lt(1, p.h1), certify_leq(p.h1, 2))):
        return _failed(p, pre)
    if not gate("0 < h2 < 1/log 2", _both(certify_lt(0, p.h2), certify_lt(p.h2, 1 / LOG2))):
        return _failed(p, pre)
    u0 = L.log()
    if not gate("h2 > 3/loglog t0", certify_lt(3 / u0, p.h2)):
        return _failed(p, pre)
    try:
        r0 = r0_of(p.h2, L)
    except PreconditionError as exc:
        gate("r0 >= 6", CertOutcome(Status.UNDECIDED, 0.0, str(exc)))
        return _failed(p, pre)
    if not gate("r0 >= 6", certify_exact_leq(6, r0)):
        return _failed(p, pre)
    kap = kappa(p.h2, L)
    h = p.h1 + p.h1 / (kap - 1)
    if not gate("h > 1", certify_lt(1, h)):
        return _failed(p, pre)

    a0 = a0_sup(p.eta3, h, p.k_cap)
    for name, c in a0.checks:
        gate("A0: " + name, c)
    a2 = a2_inf(p.h1, p.h2, L, p.b1_theta)
    for name, c in a2.checks:
        gate("A2: " + name, c)
    if not all(c.status is Status.PROVEN for _, c in pre):
        return _failed(p, pre)

    log_h1 = p.h1.log()
    phi = {}
    b0 = Interval(0)
    A_low = {}
    for k in (3, 4, 5):
        phi[k] = (theta_of(k) - theta_of(k + 1)) / (2 * log_h1) + 1 / L
        A_low[k] = big_a(p.eta3, h, k)
        b0 = b0 + A_low[k] * phi[k] * L * (-rho_of(k) * L).exp()
    A0 = a0.A0
    A1 = A0 / (2 * log_h1)
    A2 = a2.A2
    v0 = p.h2 * u0
    A3c = u0 / (v0 - 2) + (log_h1 + EULER + 1 / (kap - 1) - LOG_2PI / (v0 - Fraction(15, 16))) * u0 / L
    A4 = A3c + (A1 / A2 + b0) * u0 / L
    g, R = g_and_R(L.exp())
    A5 = (g / SQRT_2PI + R) * u0 / L
    A6 = A4 + A5
    trace = Thm1Trace(r0, h, kap, phi, {**A_low, **a0.table}, a0.fixed["x_star"],
                      a0.fixed["y_star"], a0.fixed["x_star_sup"], a2.b1, u0, a2.a2_at_u0,
                      a0.tail_bound, a0.paper_claims + a2.paper_claims)
    claims = [] if target is None else [(f"A6 <= {fmt_target(target)}", certify_leq(A6, target))]
    return Thm1Certificate(p, b0, A0, A1, A2, A3c, A4, A5, A6, pre, trace, claims)


def fmt_target(x):
    return f"{float(as_interval(x).mid):.17g}"


def _both(a, b):
    for c in (a, b):
        if c.status is not Status.PROVEN:
            return c
    return CertOutcome(Status.PROVEN, min(a.margin, b.margin))


def published_arithmetic(params=PAPER_PARAMS):
    """Diagnostic re-run matching the paper's printed numbers.

    Drops D_k from A(eta3, h, k), uses the k >= 6 prefactor for k = 3..5 in
    b0 as well, and builds b1 from theta_5.  Not a certificate: it exists to
    show where the printed constants come from.
    """
    p = params
    L = p.log_t0
    u0 = L.log()
    kap = kappa(p.h2, L)
    h = p.h1 + p.h1 / (kap - 1)
    tab = {k: big_a(p.eta3, h, k, include_d=False) for k in range(6, 11)}
    log_h1 = p.h1.log()
    b0 = Interval(0)
    for k in (3, 4, 5):
        K = 2 ** (k - 1)
        Ak = _two_pi_power(Fraction(8 * k, 81 * (K - 1))) * ck_dk(p.eta3, h, k).C_k
        phi = (theta_of(k) - theta_of(k + 1)) / (2 * log_h1) + 1 / L
        b0 = b0 + Ak * phi * L * (-rho_of(k) * L).exp()
    A0 = tab[6]
    A1 = A0 / (2 * log_h1)
    A2 = a2_inf(p.h1, p.h2, L, b1_theta=5).A2
    v0 = p.h2 * u0
    A3c = u0 / (v0 - 2) + (log_h1 + EULER + 1 / (kap - 1) - LOG_2PI / (v0 - Fraction(15, 16))) * u0 / L
    A4 = A3c + (A1 / A2 + b0) * u0 / L
    g, R = g_and_R(L.exp())
    A5 = (g / SQRT_2PI + R) * u0 / L
    return {"A_table": tab, "b0": b0, "A0": A0, "A1": A1, "A2": A2, "A3c": A3c,
            "A4": A4, "A5": A5, "A6": A4 + A5}


# --- piecewise assembly ----------------------------------------------------------------

@dataclass(frozen=True)
class GapResult:
    max_ratio: Interval       # lo: value at the argmax; hi: certified sup over the range
    argmax_log_t: float

    @property
    def argmax_t(self):
        try:
            return math.exp(self.argmax_log_t)
        except OverflowError:
            return math.inf


def _ratio_float(piece, x):
    if piece.shape == LOGLOG:
        return float(piece.coeffs[0].mid)
    return float(piece.value(Interval(x)).mid) * math.log(x) / x


def _envelope(pieces, x):
    vals = [_ratio_float(p, x) for p in pieces if p.covers(x)]
    return min(vals) if vals else None


def gap_ratio(t_range, pieces, grid=4096, golden_iters=60):
    """max over t in t_range of min_p piece_p(t) / (log t/loglog t).

    ``t_range`` holds t endpoints (numbers or Intervals; e^705 does not fit a
    float, pass ``Interval(705.64).exp()`` or similar).  The argmax is located
    on a grid in log t and refined by golden-section search; the upper end
    of ``max_ratio`` is certified over every grid cell by interval extension.
    """
    x_lo, x_hi = (as_interval(v).log() for v in t_range)
    a, b = float(x_lo.lo), float(x_hi.hi)
    if not a > 1:
        raise DomainError("need t_lo > e")
    live = [p for p in pieces
            if not (p.x_hi is not None and p.x_hi.hi < a) and not (p.x_lo.lo > b)]
    pts = sorted({a + (b - a) * i / (grid - 1) for i in range(grid)}
                 | {float(p.x_lo.mid) for p in live if a < p.x_lo.mid < b}
                 | {float(p.x_hi.mid) for p in live if p.x_hi is not None and a < p.x_hi.mid < b})
    env = []
    for x in pts:
        e = _envelope(live, x)
        if e is None:
            raise PreconditionError(f"log t = {x} is not covered by any piece")
        env.append(e)
    i = max(range(len(pts)), key=lambda j: env[j])
    lo_b, hi_b = pts[max(0, i - 1)], pts[min(len(pts) - 1, i + 1)]
    gr = (math.sqrt(5) - 1) / 2
    c, d = hi_b - gr * (hi_b - lo_b), lo_b + gr * (hi_b - lo_b)
    for _ in range(golden_iters):
        if _envelope(live, c) > _envelope(live, d):
            hi_b = d
        else:
            lo_b = c
        c, d = hi_b - gr * (hi_b - lo_b), lo_b + gr * (hi_b - lo_b)
    xs = (lo_b + hi_b) / 2
    if _envelope(live, xs) < env[i]:
        xs = pts[i]
    X = Interval(xs)
    lo_val = min(p.ratio(X).lo for p in live if p.covers(xs))
    hi_val = lo_val
    for x0, x1 in zip(pts[:-1], pts[1:]):
        cell = Interval(x0, x1)
        cover = [p for p in live if p.covers(x0) and p.covers(x1)]
        if not cover:
            raise PreconditionError(f"cell [{x0}, {x1}] in log t is not covered by a single piece")
        hi_val = max(hi_val, min(p.ratio(cell).hi for p in cover))
    return GapResult(Interval(lo_val, hi_val), xs)


@dataclass(frozen=True)
class TableRow:
    piece: BoundPiece
    outcome: CertOutcome
    sup_ratio: Optional[Interval]     # None when refuted early at a witness
    witness_log_t: Optional[float] = None


def _piece_sup(piece, coeff, cells=4096, max_depth=40):
    """Certify sup over the piece's range of its ratio against coeff.

    Returns (outcome, enclosure of the sup, witness log t or None).
    """
    coeff = as_interval(coeff)
    if piece.shape == LOGLOG:
        r = piece.coeffs[0]
        return certify_leq(r, coeff), r, None
    if piece.x_hi is None:
        return (CertOutcome(Status.REFUTED, -math.inf, "ratio unbounded on an infinite range"),
                Interval(0, math.inf), None)
    a, b = piece.x_lo.lo, piece.x_hi.hi
    pts = [a + (b - a) * i / cells for i in range(cells + 1)]
    pts[0], pts[-1] = a, b
    stack = [(x0, x1, 0) for x0, x1 in zip(pts[:-1], pts[1:])]
    sup_lo = piece.ratio(Interval(a)).lo
    sup_hi = None           # max over resolved leaves
    undecided = False
    while stack:
        x0, x1, depth = stack.pop()
        r = piece.ratio(Interval(x0, x1))
        if r.hi < coeff.lo:
            sup_hi = r.hi if sup_hi is None else max(sup_hi, r.hi)
            continue
        m = (x0 + x1) / 2
        rp = piece.ratio(Interval(m))
        sup_lo = max(sup_lo, rp.lo)
        if rp.lo > coeff.hi:
            note = f"witness log t = {float(m):.10g}"
            return CertOutcome(Status.REFUTED, float(coeff.hi - rp.lo), note), None, float(m)
        if depth >= max_depth:
            undecided = True
            sup_hi = r.hi if sup_hi is None else max(sup_hi, r.hi)
            continue
        stack.append((x0, m, depth + 1))
        stack.append((m, x1, depth + 1))
    enc = Interval(min(sup_lo, sup_hi), sup_hi)
    if undecided:
        return CertOutcome(Status.UNDECIDED, float(coeff.lo - sup_hi)), enc, None
    return CertOutcome(Status.PROVEN, float(coeff.lo - sup_hi)), enc, None


def _linear(name, a, b, x_lo, x_hi, grade):
    return BoundPiece.linear(name, a, b, x_lo, x_hi, grade)


def stated_table_pieces(A6="1.7206778023076486"):
    """The six pieces with the constants exactly as stated in the source."""
    return [
        _linear("1/2 log t + 1.93", Fraction(1, 2), "1.93", Interval(3).log(), "16.01", "external"),
        _linear("1/3 log t + 4.664", Fraction(1, 3), "4.664", 16, 82, "external"),
        _linear("1/3 log t + 4.308", Fraction(1, 3), "4.308", 82, 93, "external"),
        _linear("8/33 log t + 12.53", Fraction(8, 33), "12.53", 93, 706, "external"),
        _linear("1/5 log t + 44.02", Fraction(1, 5), "44.02", "705.64", 3069, "external"),
        BoundPiece.loglog("A6 log t/loglog t", A6, 3069, None, "external"),
    ]


def table_pieces(prop_cert, thm1_cert):
    """The six pieces with constants taken from our own certificates.

    The 1/2 and 1/5 slope pieces are external results consumed as axioms.
    """
    def hi(x):
        return Interval(x.hi)

    pieces = [
        _linear("1/2 log t + 1.93", Fraction(1, 2), "1.93", Interval(3).log(), "16.01", "external"),
    ]
    pa, pb, p3 = prop_cert.pieces if prop_cert is not None else (None, None, None)
    for pc, (x0, x1) in ((pa, (16, 82)), (pb, (82, 93)), (p3, (93, 706))):
        if pc is not None:
            pieces.append(BoundPiece(pc.name, pc.shape, (pc.coeffs[0], hi(pc.coeffs[1])),
                                     iv(x0), iv(x1), pc.grade))
    pieces.append(_linear("1/5 log t + 44.02", Fraction(1, 5), "44.02", "705.64", 3069, "external"))
    if thm1_cert is not None and thm1_cert.A6 is not None:
        pieces.append(BoundPiece.loglog("A6 log t/loglog t", hi(thm1_cert.A6), thm1_cert.params.log_t0, None))
    return pieces


def theorem1_table(coefficient=iv("1.721"), pieces=None, prop_cert=None, thm1_cert=None):
    """Certify each piece <= coefficient * log t/loglog t on its range.

    Returns (rows, verdict).  Missing certificates make the table incomplete,
    which is reported as Undecided.
    """
    coefficient = as_interval(coefficient)
    if pieces is None:
        if prop_cert is None or thm1_cert is None:
            raise PreconditionError("theorem1_table needs pieces or both certificates")
        pieces = table_pieces(prop_cert, thm1_cert)
    rows = []
    for p in pieces:
        out, sup, wit = _piece_sup(p, coefficient)
        rows.append(TableRow(p, out, sup, wit))
    statuses = [r.outcome.status for r in rows]
    if len(pieces) < 6:
        statuses.append(Status.UNDECIDED)
    if Status.REFUTED in statuses:
        verdict = Status.REFUTED
    elif Status.UNDECIDED in statuses:
        verdict = Status.UNDECIDED
    else:
        verdict = Status.PROVEN
    return rows, verdict
