"""Empirical scans of zeta on the 1-line against the certified constants.

Floating-point grade: each point uses the Euler-Maclaurin value with its
error estimate folded in on the unfavourable side, but nothing between grid
points is controlled.
"""

import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .zeta_eval import zeta_em_with_derivative

__all__ = ["ScanCheck", "log_grid", "scan_1line"]


@dataclass
class ScanCheck:
    name: str
    points: int = 0
    violations: int = 0
    worst_ratio: float = 0.0     # max of observed/allowed; < 1 means the bound holds
    worst_t: float = math.nan
    witnesses: List[float] = field(default_factory=list)

    def add(self, t, observed, allowed):
        self.points += 1
        r = observed / allowed
        if r > self.worst_ratio:
            self.worst_ratio, self.worst_t = r, t
        if r > 1:
            self.violations += 1
            if len(self.witnesses) < 10:
                self.witnesses.append(t)

    def to_json(self):
        return {"name": self.name, "points": self.points, "violations": self.violations,
                "worst_ratio": repr(self.worst_ratio), "worst_t": repr(self.worst_t),
                "witnesses": [repr(w) for w in self.witnesses], "grade": "empirical"}


def log_grid(t_lo, t_hi, n):
    if n < 2 or not 0 < t_lo < t_hi:
        raise ValueError("need n >= 2 and 0 < t_lo < t_hi")
    return np.exp(np.linspace(math.log(t_lo), math.log(t_hi), n))


def scan_1line(ts, c_zeta=1.721, c_inv=430.5, c_inv_small=2.079, small_hi=500.0,
               c_logderiv=154.0, logderiv_lo=500.0):
    """Check the four 1-line inequalities at every t in ``ts``.

    |zeta| <= c_zeta L/LL, 1/|zeta| <= c_inv L/LL, 1/|zeta| <= c_inv_small L
    for t <= small_hi and |zeta'/zeta| <= c_logderiv L/LL for t >= logderiv_lo,
    with L = log t, LL = loglog t.  Points with t <= e (LL <= 0) are skipped for
    the L/LL checks.
    """
    checks = {
        "zeta": ScanCheck(f"|zeta(1+it)| <= {c_zeta} log t/loglog t"),
        "inv": ScanCheck(f"1/|zeta(1+it)| <= {c_inv} log t/loglog t"),
        "inv_small": ScanCheck(f"1/|zeta(1+it)| <= {c_inv_small} log t on t <= {small_hi:g}"),
        "logderiv": ScanCheck(f"|zeta'/zeta(1+it)| <= {c_logderiv} log t/loglog t on t >= {logderiv_lo:g}"),
    }
    for t in ts:
        t = float(t)
        z, dz = zeta_em_with_derivative(complex(1.0, t), 1e-4)
        zhi = abs(z.value) + z.err
        zlo = abs(z.value) - z.err
        L = math.log(t)
        if L > 1:
            w = L / math.log(L)
            checks["zeta"].add(t, zhi, c_zeta * w)
            checks["inv"].add(t, 1 / zlo, c_inv * w)
            if t >= logderiv_lo:
                checks["logderiv"].add(t, (abs(dz.value) + dz.err) / zlo, c_logderiv * w)
        if t <= small_hi:
            checks["inv_small"].add(t, 1 / zlo, c_inv_small * L)
    return list(checks.values())
