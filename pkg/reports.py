#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Verification reports: named checks with pass/fail status and a witness
"""

import json
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from presentation import FieldExpr

PASS = "pass"
FAIL = "fail"


def progress(message: str, verbose: bool = True) -> None:
    """Status line on stderr; stdout stays reserved for reports"""
    if verbose:
        print(message, file=sys.stderr, flush=True)


@dataclass
class CheckResult:
    id: str
    status: str
    witness: Optional[str] = None
    millis: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {"id": self.id, "status": self.status, "witness": self.witness, "millis": self.millis}


@dataclass
class VerificationReport:
    campaign: str
    config: Dict = field(default_factory=dict)
    checks: List[CheckResult] = field(default_factory=list)
    timing: bool = False

    # -- recording --------------------------------------------------------
    def record(self, check_id: str, passed: bool, witness=None, millis: Optional[float] = None) -> CheckResult:
        if isinstance(witness, FieldExpr):
            witness = str(witness) if witness else None
        elif witness is not None:
            witness = str(witness)
        result = CheckResult(check_id, PASS if passed else FAIL, None if passed else witness,
                             millis if self.timing else None)
        self.checks.append(result)
        return result

    def expect_zero(self, check_id: str, expr: FieldExpr, millis: Optional[float] = None) -> CheckResult:
        return self.record(check_id, not expr, expr, millis)

    def expect_equal(self, check_id: str, actual, expected, millis: Optional[float] = None) -> CheckResult:
        if isinstance(actual, FieldExpr) and isinstance(expected, FieldExpr):
            difference = actual - expected
            return self.record(check_id, not difference, difference, millis)
        return self.record(check_id, actual == expected, f"{actual} != {expected}", millis)

    @contextmanager
    def timed(self):
        """Yields a one-element list that receives the elapsed milliseconds"""
        box: List[Optional[float]] = [None]
        start = time.perf_counter()
        try:
            yield box
        finally:
            box[0] = round((time.perf_counter() - start) * 1000, 3) if self.timing else None

    def merge(self, other: "VerificationReport", prefix: str = "") -> None:
        for check in other.checks:
            self.checks.append(CheckResult(prefix + check.id, check.status, check.witness, check.millis))

    # -- queries ----------------------------------------------------------
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def summary(self) -> Dict[str, int]:
        failed = len(self.failures)
        return {"total": len(self.checks), "passed": len(self.checks) - failed, "failed": failed}

    # -- rendering --------------------------------------------------------
    def to_dict(self) -> dict:
        checks = sorted(self.checks, key=lambda c: c.id)
        return {
            "campaign": self.campaign,
            "config": self.config,
            "checks": [check.to_dict() for check in checks],
            "summary": self.summary(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, separators=(",", ": "), ensure_ascii=False)

    def to_dataframe(self) -> pd.DataFrame:
        rows = [check.to_dict() for check in sorted(self.checks, key=lambda c: c.id)]
        return pd.DataFrame(rows, columns=["id", "status", "witness", "millis"])

    def to_text(self) -> str:
        summary = self.summary()
        status = "✅ passed" if self.passed else "❌ failed"
        lines = [f"{self.campaign}: {status} ({summary['passed']}/{summary['total']})"]
        df = self.to_dataframe()
        if not df.empty:
            if not self.timing:
                df = df.drop(columns=["millis"])
            df["witness"] = df["witness"].fillna("")
            lines.append(df.to_string(index=False))
        return "\n".join(lines)

    def save(self, directory: Path, csv: bool = False) -> Path:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        target = directory / f"{self.campaign}.json"
        target.write_text(self.to_json() + "\n", encoding="utf-8")
        if csv:
            self.to_dataframe().to_csv(directory / f"{self.campaign}.csv", index=False, encoding="utf-8")
        return target
