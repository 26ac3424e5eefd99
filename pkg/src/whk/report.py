"""Structured pass/fail reports with witnesses."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .kernel import Tensor

_RESIDUAL_LIMIT = 64


@dataclass
class Check:
    id: str
    anchor: str
    passed: bool
    witness: dict | None = None
    seconds: float = 0.0
    note: str = ""

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "anchor": self.anchor,
            "pass": self.passed,
            "witness": self.witness,
            "seconds": round(self.seconds, 6),
        }
        if self.note:
            out["note"] = self.note
        return out


def residual_witness(lhs: Tensor, rhs: Tensor, labels: tuple[str, ...] | None = None) -> dict | None:
    """First index where ``lhs`` and ``rhs`` differ, plus the residual if small."""
    diff = lhs - rhs
    idx = diff.first_nonzero()
    if idx is None:
        return None
    w = {
        "index": list(idx),
        "lhs": str(lhs.item(*idx)),
        "rhs": str(rhs.item(*idx)),
        "nonzero": diff.count_nonzero(),
    }
    if labels:
        w["labels"] = list(labels)
    if diff.size <= _RESIDUAL_LIMIT:
        w["residual"] = diff.to_strings()
    return w


@dataclass
class Report:
    title: str = ""
    checks: list[Check] = field(default_factory=list)
    _clock: float = field(default_factory=time.perf_counter, repr=False)

    def _lap(self) -> float:
        now = time.perf_counter()
        dt, self._clock = now - self._clock, now
        return dt

    def expect(self, id: str, anchor: str, ok: bool, witness=None, note: str = "") -> bool:
        self.checks.append(Check(id, anchor, bool(ok), None if ok else witness, self._lap(), note))
        return bool(ok)

    def expect_equal(self, id: str, anchor: str, lhs: Tensor, rhs: Tensor, labels=None, note: str = "") -> bool:
        if lhs.shape != rhs.shape:
            return self.expect(id, anchor, False, {"shape": [list(lhs.shape), list(rhs.shape)]}, note)
        w = residual_witness(lhs, rhs, labels)
        return self.expect(id, anchor, w is None, w, note)

    def info(self, id: str, anchor: str, note: str) -> None:
        """Record an observation that is reported but never fails."""
        self.checks.append(Check(id, anchor, True, None, self._lap(), note))

    def extend(self, other: Report, prefix: str = "") -> Report:
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.anchor, c.passed, c.witness, c.seconds, c.note))
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def get(self, id: str) -> Check:
        for c in self.checks:
            if c.id == id:
                return c
        raise KeyError(id)

    def raise_if_failed(self, exc_type, message: str | None = None):
        if not self.passed:
            names = ", ".join(c.id for c in self.failures())
            raise exc_type(message or f"{self.title}: failed {names}", self)
        return self

    def sorted(self) -> list[Check]:
        return sorted(self.checks, key=lambda c: c.id)

    def to_dict(self) -> dict:
        return {"title": self.title, "pass": self.passed, "checks": [c.to_dict() for c in self.sorted()]}

    def to_text(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"] if self.title else []
        for c in self.sorted():
            line = f"  [{'pass' if c.passed else 'FAIL'}] {c.id}  ({c.anchor})  {c.seconds * 1000:.1f} ms"
            if c.note:
                line += f"  -- {c.note}"
            lines.append(line)
            if c.witness:
                lines.append(f"         witness: {c.witness}")
        return "\n".join(lines)
