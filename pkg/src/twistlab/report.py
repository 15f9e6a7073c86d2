"""Shared result types: validation reports and numerical certificates."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Violation:
    """One broken axiom or contract, with a concrete witness."""

    kind: str
    witness: tuple
    detail: str = ""

    def to_json(self) -> dict:
        return {"kind": self.kind, "witness": list(self.witness), "detail": self.detail}


@dataclass
class ValidationReport:
    subject: str = ""
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def add(self, kind: str, witness: tuple, detail: str = "") -> None:
        self.violations.append(Violation(kind, witness, detail))

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "violations": [v.to_json() for v in self.violations],
        }

    def __str__(self) -> str:
        if self.ok:
            return f"{self.subject or 'object'}: ok"
        lines = [f"{self.subject or 'object'}: {len(self.violations)} violation(s)"]
        lines += [f"  [{v.kind}] witness={v.witness} {v.detail}" for v in self.violations]
        return "\n".join(lines)


@dataclass
class Condition:
    """A single certified condition: pass/fail plus the worst residual seen."""

    name: str
    passed: bool
    residual: float | None = None
    witness: str | None = None

    def to_json(self) -> dict:
        out: dict = {"name": self.name, "passed": self.passed}
        if self.residual is not None:
            out["max_residual"] = self.residual
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Certificate:
    title: str
    conditions: list[Condition] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def add(self, name: str, passed: bool, residual: float | None = None,
            witness: str | None = None) -> None:
        self.conditions.append(Condition(name, passed, residual, witness))

    def condition(self, name: str) -> Condition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "conditions": [c.to_json() for c in self.conditions],
            "meta": self.meta,
        }

    def __str__(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        lines = [f"{self.title}: {mark}"]
        for c in self.conditions:
            m = "ok" if c.passed else "FAIL"
            res = "" if c.residual is None else f" residual={c.residual:.3e}"
            wit = "" if c.witness is None else f" witness={c.witness}"
            lines.append(f"  {c.name}: {m}{res}{wit}")
        return "\n".join(lines)
