"""Small shared result records for verification-style operations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict


@dataclass
class CheckReport:
    """Outcome of one exact identity check."""

    ok: bool
    name: str
    detail: str = ""
    data: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class DualityReport:
    """Measured duality ratio against its predicted constant."""

    lhs: Fraction
    rhs: Fraction
    ratio: Fraction | None
    predicted_ratio: Fraction
    ok: bool
    detail: str = ""

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "ratio": None if self.ratio is None else str(self.ratio),
            "predicted_ratio": str(self.predicted_ratio),
            "pass": self.ok,
            "detail": self.detail,
        }
