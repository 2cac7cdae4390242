"""JSON and CSV emission for certificates.

Intervals become [lo, hi] decimal strings rounded outward at 17 significant
digits; floats become their repr.  Output is byte-stable for equal input.
"""

import dataclasses
import enum
import json
import math
from fractions import Fraction

import gmpy2

from .pieces import BoundPiece
from .rigor import CertOutcome, Interval, fmt_hi, fmt_lo

__all__ = ["SCHEMA", "DIGITS", "to_plain", "dumps", "csv_number", "csv_lines", "interval_from_json"]

SCHEMA = 1
DIGITS = 17


def _num(x):
    if isinstance(x, float):
        return repr(x) if math.isfinite(x) else str(x)
    return x


def to_plain(obj):
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}" if obj.denominator != 1 else str(obj.numerator)
    if isinstance(obj, Interval):
        return [fmt_lo(obj.lo, DIGITS), fmt_hi(obj.hi, DIGITS)]
    if isinstance(obj, CertOutcome):
        return {"status": obj.status.value, "margin": _num(obj.margin), "note": obj.note}
    if isinstance(obj, BoundPiece):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        # (name, CertOutcome) pairs read better as objects
        if obj and all(isinstance(e, tuple) and len(e) == 2 and isinstance(e[0], str)
                       and isinstance(e[1], CertOutcome) for e in obj):
            return [{"name": n, **to_plain(c)} for n, c in obj]
        return [to_plain(e) for e in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: to_plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if type(obj) is type(gmpy2.mpfr(0)):
        return fmt_hi(obj, DIGITS)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(kind, body, status):
    doc = {"schema": SCHEMA, "kind": kind, "status": status.value if hasattr(status, "value") else status}
    doc.update(to_plain(body))
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def interval_from_json(pair):
    from .rigor import iv
    return iv(pair[0], pair[1])


def _pad(s):
    """Pad a decimal string with trailing zeros to DIGITS significant digits."""
    mant, _, exp = s.partition("E")
    digits = mant.lstrip("-").replace(".", "").lstrip("0")
    if not digits:
        return s
    need = DIGITS - len(digits)
    if need > 0:
        mant = mant + ("" if "." in mant else ".") + "0" * need
    return mant + ("E" + exp if exp else "")


def csv_number(x):
    """17-significant-digit decimal (upper endpoint for Intervals)."""
    if isinstance(x, Interval):
        return _pad(fmt_hi(x.hi, DIGITS))
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return f"{x:.{DIGITS - 1}e}"
    return str(x)


def csv_lines(header, rows):
    out = [",".join(header)]
    for r in rows:
        out.append(",".join(csv_number(v) for v in r))
    return "\n".join(out) + "\n"
