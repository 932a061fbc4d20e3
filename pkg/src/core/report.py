"""
S-graph Workbench - Check Reports
Violation lists returned by every verification routine.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass
class CheckReport:
    """Outcome of one check: violations are content, never exceptions."""
    name: str
    violations: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, **violation: Any) -> None:
        self.violations.append(violation)

    def extend(self, other: "CheckReport") -> None:
        for violation in other.violations:
            self.violations.append({"source": other.name, **violation})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "violations": self.violations,
            "details": self.details,
        }
