"""Itemized verification reports shared by the checks and the command line."""
from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"
NOT_CHECKABLE = "not-checkable"
STATUSES = (PASS, FAIL, VACUOUS, NOT_CHECKABLE)


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def line(self) -> str:
        s = f"[{self.status}] {self.name}"
        return f"{s}: {self.detail}" if self.detail else s

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail,
                "values": {str(k): _plain(v) for k, v in self.values.items()}}


def _plain(v):
    if isinstance(v, (set, frozenset)):
        return sorted(v, key=repr)
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if hasattr(v, "item"):
        return v.item()
    return v


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    def add(self, name: str, status: str, detail: str = "", **values) -> Check:
        c = Check(name, status, detail, values)
        self.checks.append(c)
        return c

    def expect(self, name: str, cond: bool, detail: str = "", **values) -> Check:
        return self.add(name, PASS if cond else FAIL, detail, **values)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.detail, c.values))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def status(self) -> str:
        if not self.ok:
            return FAIL
        if self.checks and all(c.status == VACUOUS for c in self.checks):
            return VACUOUS
        if self.checks and all(c.status == NOT_CHECKABLE for c in self.checks):
            return NOT_CHECKABLE
        return PASS

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def lines(self) -> list[str]:
        return [f"{self.title}: {self.status}"] + ["  " + c.line() for c in self.checks]

    def as_dict(self) -> dict:
        return {"title": self.title, "status": self.status,
                "checks": [c.as_dict() for c in self.checks]}
