"""Machine-readable separability reports and JSON helpers."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

SCHEMA = "qutritlab/1"


class Verdict(str, enum.Enum):
    SEPARABLE = "SEPARABLE"
    NONSEPARABLE = "NONSEPARABLE"
    BOUNDARY = "BOUNDARY"


@dataclass
class SeparabilityReport:
    family: str
    epsilon: float
    threshold: float
    verdict: Verdict
    witnesses: dict[str, float] = field(default_factory=dict)
    decomposition: list[dict[str, Any]] | None = None

    @property
    def separable(self) -> bool:
        return self.verdict is not Verdict.NONSEPARABLE

    @property
    def boundary(self) -> bool:
        return self.verdict is Verdict.BOUNDARY

    def to_dict(self) -> dict[str, Any]:
        return {
            "family": self.family,
            "epsilon": self.epsilon,
            "threshold": self.threshold,
            "verdict": self.verdict.value,
            "separable": self.separable,
            "boundary": self.boundary,
            "witnesses": dict(self.witnesses),
            "decomposition": self.decomposition,
        }


def rational(x: Fraction) -> dict[str, Any]:
    """Exact and float forms of a rational threshold."""
    return {"exact": f"{x.numerator}/{x.denominator}", "value": float(x)}


def complex_pair(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def to_jsonable(obj: Any) -> Any:
    """Convert numpy values for ``json.dumps``; complex numbers become ``[re, im]``."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (complex, np.complexfloating)):
        return complex_pair(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, Fraction):
        return rational(obj)
    return obj
