"""Structured pass/fail reports for the theorem checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import TheoremViolation

PASS, FAIL, UNSUPPORTED, SKIPPED = "PASS", "FAIL", "UNSUPPORTED", "SKIPPED"


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str = ""

    def line(self) -> str:
        return f"{self.status} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class TheoremReport:
    title: str
    results: list = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = "") -> bool:
        self.results.append(CheckResult(name, PASS if ok else FAIL, detail))
        return ok

    def skip(self, name: str, reason: str = ""):
        self.results.append(CheckResult(name, SKIPPED, reason))

    def unsupported(self, name: str, reason: str = ""):
        self.results.append(CheckResult(name, UNSUPPORTED, reason))

    def merge(self, other: "TheoremReport", prefix: str = ""):
        for r in other.results:
            self.results.append(CheckResult(prefix + r.name, r.status, r.detail))

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    def failures(self):
        return [r for r in self.results if r.status == FAIL]

    def status_of(self, name: str) -> str:
        for r in self.results:
            if r.name == name:
                return r.status
        raise KeyError(name)

    def lines(self):
        return [r.line() for r in self.results]

    def __str__(self):
        return "\n".join([f"# {self.title}"] + self.lines())

    def raise_for_failures(self):
        bad = self.failures()
        if bad:
            raise TheoremViolation(f"{self.title}: {bad[0].name} failed", witness=bad[0].detail)
        return self
