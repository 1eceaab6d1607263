from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    witness: Optional[Any] = None


@dataclass
class Report:
    subject: str
    checks: list = field(default_factory=list)

    def add(self, name, ok, detail="", witness=None):
        self.checks.append(Check(name, bool(ok), detail, witness))
        return ok

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def __getitem__(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __str__(self):
        lines = [f"{self.subject}: {'ok' if self.ok else 'FAILED'}"]
        for c in self.checks:
            line = f"  [{'pass' if c.ok else 'FAIL'}] {c.name}"
            if c.detail:
                line += f": {c.detail}"
            lines.append(line)
        return "\n".join(lines)
