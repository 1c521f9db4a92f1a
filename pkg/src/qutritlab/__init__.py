"""SU(3) Bloch-vector numerics for qutrit states and their separability thresholds."""

from .errors import QutritLabError
from .report import SeparabilityReport, Verdict

__all__ = ["QutritLabError", "SeparabilityReport", "Verdict"]
__version__ = "0.1.0"
