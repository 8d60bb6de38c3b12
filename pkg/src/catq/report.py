"""Verdicts and condition reports shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: tuple[str, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


def holds() -> Verdict:
    return Verdict(True, None)


def fails(*witness: str) -> Verdict:
    return Verdict(False, tuple(witness))


@dataclass(frozen=True)
class Condition:
    """One checked condition.

    ``witness`` names the objects/morphisms at which the condition fails; it
    is None when the condition holds.  Informative rows are reported but do
    not count towards the overall verdict.
    """

    label: str
    holds: bool
    witness: tuple[str, ...] | None
    statement: str
    informative: bool = False

    def to_dict(self) -> dict:
        d = {
            "label": self.label,
            "holds": self.holds,
            "witness": list(self.witness) if self.witness is not None else None,
            "statement": self.statement,
        }
        if self.informative:
            d["informative"] = True
        return d


@dataclass
class ConditionReport:
    title: str
    conditions: list[Condition] = field(default_factory=list)

    def add(self, label: str, verdict: Verdict, statement: str, informative: bool = False) -> Condition:
        if any(c.label == label for c in self.conditions):
            raise ValueError(f"duplicate condition label {label!r}")
        w = None if verdict.holds else (verdict.witness or ())
        cond = Condition(label, verdict.holds, w, statement, informative)
        self.conditions.append(cond)
        return cond

    def __getitem__(self, label: str) -> Condition:
        for c in self.conditions:
            if c.label == label:
                return c
        raise KeyError(label)

    def __contains__(self, label: str) -> bool:
        return any(c.label == label for c in self.conditions)

    def __iter__(self) -> Iterator[Condition]:
        return iter(self.conditions)

    def __len__(self) -> int:
        return len(self.conditions)

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.conditions]

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.conditions if not c.informative)

    def verdicts(self) -> dict[str, bool]:
        return {c.label: c.holds for c in self.conditions}

    def first_failure(self) -> Condition | None:
        for c in self.conditions:
            if not c.holds and not c.informative:
                return c
        return None

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "holds": self.holds,
            "conditions": [c.to_dict() for c in self.conditions],
        }

    def format(self) -> str:
        lines = [f"== {self.title} =="]
        width = max((len(c.label) for c in self.conditions), default=0)
        for c in self.conditions:
            mark = "true " if c.holds else "false"
            tail = ""
            if c.witness:
                tail = "  witness: " + ", ".join(c.witness)
            tag = " (info)" if c.informative else ""
            lines.append(f"  {c.label:<{width}}  {mark}{tag}  {c.statement}{tail}")
        return "\n".join(lines)
