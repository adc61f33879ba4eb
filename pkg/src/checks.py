"""
Result type shared by the verification routines.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

try:
    from .logger import get_logger
except ImportError:
    from logger import get_logger


@dataclass
class CheckReport:
    """Outcome of an exhaustive check: how many instances, how many failed, and witnesses."""

    name: str
    checked: int = 0
    failed: int = 0
    witnesses: List[str] = field(default_factory=list)
    parameters: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, passed: bool, witness: Optional[str] = None) -> bool:
        self.checked += 1
        if not passed:
            self.failed += 1
            if witness is not None and len(self.witnesses) < 20:
                self.witnesses.append(witness)
        return passed

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.checked += other.checked
        self.failed += other.failed
        self.witnesses.extend(other.witnesses[:max(0, 20 - len(self.witnesses))])
        return self

    def log(self) -> "CheckReport":
        metadata = dict(self.parameters)
        if self.witnesses:
            metadata["first_witness"] = self.witnesses[0]
        get_logger().log_check(self.name, self.checked, self.failed, metadata or None)
        return self

    def __bool__(self) -> bool:
        return self.ok
