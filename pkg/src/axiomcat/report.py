"""Machine-readable verdict trees shared by every check."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    items: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {"rule": self.rule, "message": self.message, "items": list(self.items)}


@dataclass
class Report:
    """A named check with its violations, witnesses and sub-checks.

    A report passes when it has no violations and all children pass.
    """

    check: str
    violations: list[Violation] = field(default_factory=list)
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    children: list["Report"] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and all(child.ok for child in self.children)

    def __bool__(self) -> bool:
        return self.ok

    def fail(self, rule: str, message: str, *items: str) -> None:
        self.violations.append(Violation(rule, message, tuple(items)))

    def extend(self, violations) -> None:
        self.violations.extend(violations)

    def witness(self, **data: Any) -> None:
        self.witnesses.append(data)

    def note(self, text: str) -> None:
        self.notes.append(text)

    def add(self, child: "Report") -> "Report":
        self.children.append(child)
        return child

    def counterexamples(self) -> list[Violation]:
        found = list(self.violations)
        for child in self.children:
            found.extend(child.counterexamples())
        return found

    def find(self, check: str) -> "Report | None":
        if self.check == check:
            return self
        for child in self.children:
            hit = child.find(check)
            if hit is not None:
                return hit
        return None

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "passed": self.ok,
            "witnesses": [_jsonable(w) for w in self.witnesses],
            "counterexamples": [v.to_dict() for v in self.counterexamples()],
            "notes": list(self.notes),
            "children": [child.to_dict() for child in self.children],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def summary_lines(self, depth: int = 0) -> list[str]:
        mark = "PASS" if self.ok else "FAIL"
        lines = [f"{'  ' * depth}{mark} {self.check}"]
        for v in self.violations:
            items = f" [{', '.join(v.items)}]" if v.items else ""
            lines.append(f"{'  ' * (depth + 1)}- {v.rule}: {v.message}{items}")
        for child in self.children:
            lines.extend(child.summary_lines(depth + 1))
        return lines


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return sorted(_jsonable(v) for v in value)
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if value is None or isinstance(value, (str, int, float, bool)):
        return value
    return str(value)
