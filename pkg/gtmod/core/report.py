from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, TextIO

from .utils import CheckReport, ReportSet

# ---------- JSON helpers ----------

def dumps(payload: Any) -> str:
    """Byte-stable JSON: sorted keys, fixed separators, no floats expected."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def with_seed(payload: Dict[str, Any], seed: int | None) -> Dict[str, Any]:
    out = dict(payload)
    out["seed"] = seed
    return out

# ---------- Check reports ----------

def report_to_dict(r: CheckReport) -> Dict[str, Any]:
    d: Dict[str, Any] = {
        "check": r.check,
        "instance": r.instance,
        "passed": r.passed,
        "seed": r.seed,
    }
    if r.detail:
        d["detail"] = r.detail
    if r.evidence:
        d["evidence"] = r.evidence
    return d


def report_line(r: CheckReport) -> str:
    return dumps(report_to_dict(r))


def report_lines(reports: Iterable[CheckReport]) -> List[str]:
    ordered = reports.ordered() if isinstance(reports, ReportSet) else sorted(reports, key=CheckReport.sort_key)
    return [report_line(r) for r in ordered]


def write_report_line(r: CheckReport, stream: TextIO) -> None:
    stream.write(report_line(r) + "\n")
    stream.flush()


def summary_line(reports: ReportSet, seed: int | None) -> str:
    return dumps(with_seed({"summary": reports.counts()}, seed))


def write_jsonl(reports: ReportSet, stream: TextIO, seed: int | None = None) -> None:
    for line in report_lines(reports):
        stream.write(line + "\n")
    stream.write(summary_line(reports, seed) + "\n")


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
