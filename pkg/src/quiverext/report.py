"""Check reports and deterministic rendering."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    witnesses: list = field(default_factory=list)


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    notes: list[tuple[str, str]] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "", witnesses=None) -> Check:
        c = Check(name, bool(passed), detail, list(witnesses or []))
        self.checks.append(c)
        return c

    def note(self, key: str, value) -> None:
        """Reported but not asserted."""
        self.notes.append((key, str(value)))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail, c.witnesses))
        self.notes.extend((prefix + k, v) for k, v in other.notes)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __bool__(self):
        return self.passed

    def records(self) -> list[str]:
        out = [f"check.{c.name} = {'pass' if c.passed else 'fail'}" for c in self.checks]
        return out + [f"info.{k} = {v}" for k, v in self.notes]

    def text(self) -> str:
        width = max((len(c.name) for c in self.checks), default=0)
        lines = [self.title]
        for c in self.checks:
            lines.append(f"  {c.name.ljust(width)}  {'PASS' if c.passed else 'FAIL'}"
                         + (f"  {c.detail}" if c.detail else ""))
            for w in c.witnesses[:5]:
                lines.append(f"      witness: {w}")
        for k, v in self.notes:
            lines.append(f"  info {k}: {v}")
        return "\n".join(lines)


def render_matrix(m) -> str:
    rows = [[str(x) for x in row] for row in m]
    width = max((len(x) for row in rows for x in row), default=1)
    return "\n".join("[" + " ".join(x.rjust(width) for x in row) + "]" for row in rows)


def render_records(pairs) -> str:
    """``key = value`` lines, in the given order."""
    return "\n".join(f"{k} = {v}" for k, v in pairs) + "\n"
