"""Certified explicit bounds for the Riemann zeta function on the 1-line."""

from .rigor import Interval, Status, CertOutcome, iv

__version__ = "0.1.0"

__all__ = ["Interval", "Status", "CertOutcome", "iv", "__version__"]
