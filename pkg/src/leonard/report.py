"""Tiny result type shared by every verification routine."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    name: str
    failures: list[str] = field(default_factory=list)

    def ok(self) -> bool:
        return not self.failures

    def add(self, message: str) -> None:
        self.failures.append(message)

    def __str__(self) -> str:
        if self.ok():
            return f"{self.name}: pass"
        head = f"{self.name}: fail ({len(self.failures)} problem(s))"
        return "\n  ".join([head] + self.failures)
