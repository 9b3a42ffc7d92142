from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional


@dataclass
class CheckReport:
    check: str
    instance: Dict[str, Any]
    passed: bool
    detail: Optional[str] = None
    # on failure: the two exact sides of the identity, serialized
    evidence: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None

    def sort_key(self) -> tuple:
        return (self.check, instance_key(self.instance))


def instance_key(instance: Dict[str, Any]) -> str:
    return json.dumps(instance, sort_keys=True, separators=(",", ":"))


@dataclass
class ReportSet:
    reports: List[CheckReport] = field(default_factory=list)

    def add(self, report: CheckReport) -> None:
        self.reports.append(report)

    def ordered(self) -> List[CheckReport]:
        return sorted(self.reports, key=CheckReport.sort_key)

    def failures(self) -> List[CheckReport]:
        return [r for r in self.ordered() if not r.passed]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def counts(self) -> Dict[str, int]:
        passed = sum(1 for r in self.reports if r.passed)
        return {"total": len(self.reports), "passed": passed, "failed": len(self.reports) - passed}

    def __iter__(self) -> Iterator[CheckReport]:
        return iter(self.ordered())

    def __len__(self) -> int:
        return len(self.reports)
