"""Verification reports: one ``CHECK <name> <status> <max-abs-error>`` line per check."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

STATUSES = ("PASS", "FAIL", "INFO")


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    error: float

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"status must be one of {STATUSES}, got {self.status!r}")
        if any(ch.isspace() for ch in self.name):
            object.__setattr__(self, "name", "_".join(self.name.split()))

    @classmethod
    def within(cls, name: str, error: float, tol: float) -> "Check":
        return cls(name, "PASS" if error <= tol else "FAIL", float(error))

    @classmethod
    def boolean(cls, name: str, ok: bool, error: float = 0.0) -> "Check":
        return cls(name, "PASS" if ok else "FAIL", float(error))

    @classmethod
    def info(cls, name: str, error: float) -> "Check":
        return cls(name, "INFO", float(error))

    @property
    def passed(self) -> bool:
        return self.status != "FAIL"

    def line(self) -> str:
        return f"CHECK {self.name} {self.status} {self.error:.3e}"


def render(checks: Iterable[Check]) -> str:
    return "".join(c.line() + "\n" for c in checks)


def summary_csv(checks: Iterable[Check]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "status", "max_abs_error"])
    for c in checks:
        w.writerow([c.name, c.status, f"{c.error:.3e}"])
    return buf.getvalue()


def write_summary(checks: Iterable[Check], path: str | Path) -> None:
    Path(path).write_text(summary_csv(checks))


def all_passed(checks: Iterable[Check]) -> bool:
    return all(c.passed for c in checks)
