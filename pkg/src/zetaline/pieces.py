"""Bound pieces: a·log t + b, c·log t/loglog t, A·log^B t, c·log^{2/3} t.

Ranges are stored in the variable x = log t, which keeps t = e^{3069}
and friends representable without fuss.  ``x_hi = None`` means unbounded.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .rigor import Interval, as_interval, fmt_hi, fmt_lo, iv

__all__ = ["BoundPiece", "LINEAR", "LOGLOG", "POWER", "LOG23", "GRADES", "catalogue"]

LINEAR = "a*log(t)+b"
LOGLOG = "c*log(t)/loglog(t)"
POWER = "A*log(t)^B"
LOG23 = "c*log(t)^(2/3)"
GRADES = ("certified", "empirical", "external")


@dataclass(frozen=True)
class BoundPiece:
    name: str
    shape: str
    coeffs: Tuple[Interval, ...]
    x_lo: Interval
    x_hi: Optional[Interval] = None
    grade: str = "certified"

    def __post_init__(self):
        if self.shape not in (LINEAR, LOGLOG, POWER, LOG23):
            raise ValueError(f"unknown shape {self.shape}")
        if self.grade not in GRADES:
            raise ValueError(f"unknown grade {self.grade}")
        if self.x_hi is not None and self.x_hi.hi < self.x_lo.lo:
            raise ValueError("empty range")

    # convenient constructors -------------------------------------------------
    @classmethod
    def linear(cls, name, a, b, x_lo, x_hi=None, grade="certified"):
        return cls(name, LINEAR, (iv(a), iv(b)), iv(x_lo), None if x_hi is None else iv(x_hi), grade)

    @classmethod
    def loglog(cls, name, c, x_lo, x_hi=None, grade="certified"):
        return cls(name, LOGLOG, (iv(c),), iv(x_lo), None if x_hi is None else iv(x_hi), grade)

    def value(self, x):
        """Piece value at log t = x (x an Interval or number)."""
        x = as_interval(x)
        c = self.coeffs
        if self.shape == LINEAR:
            return c[0] * x + c[1]
        if self.shape == LOGLOG:
            return c[0] * x / x.log()
        if self.shape == POWER:
            return c[0] * x.pow(c[1])
        return c[0] * x.pow(Fraction(2, 3))

    def ratio(self, x):
        """value / (log t/loglog t)."""
        x = as_interval(x)
        if self.shape == LOGLOG:
            return self.coeffs[0]
        return self.value(x) * x.log() / x

    @classmethod
    def log23(cls, name, c, x_lo, x_hi=None, grade="external"):
        return cls(name, LOG23, (iv(c),), iv(x_lo), None if x_hi is None else iv(x_hi), grade)

    @property
    def t_range(self):
        """Validity range in t (Intervals; hi is None when unbounded)."""
        return self.x_lo.exp(), None if self.x_hi is None else self.x_hi.exp()

    def covers(self, x):
        return self.x_lo.lo <= x and (self.x_hi is None or x <= self.x_hi.hi)

    def to_json(self):
        return {
            "name": self.name,
            "shape": self.shape,
            "coefficients": [[fmt_lo(c.lo), fmt_hi(c.hi)] for c in self.coeffs],
            "log_t_range": [fmt_lo(self.x_lo.lo), None if self.x_hi is None else fmt_hi(self.x_hi.hi)],
            "grade": self.grade,
        }


def catalogue():
    """Previously published bounds for |zeta(1+it)|, consumed as axioms.

    Keyed by name; all valid for t >= 3 (log t >= log 3).
    """
    x3 = Interval(3).log()
    out = [
        BoundPiece.linear("log t", 1, 0, x3, None, "external"),
        BoundPiece.linear("1/2 log t + 1.93", Fraction(1, 2), "1.93", x3, None, "external"),
        BoundPiece.linear("1/5 log t + 44.02", Fraction(1, 5), "44.02", x3, None, "external"),
        BoundPiece.linear("3/4 log t", Fraction(3, 4), 0, x3, None, "external"),
        BoundPiece.log23("62.6 log^(2/3) t", "62.6", x3, None, "external"),
    ]
    return {p.name: p for p in out}
