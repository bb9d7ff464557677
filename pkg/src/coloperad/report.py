from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of an exhaustive check.

    ``violation`` names the first failed condition; ``witness`` carries the
    offending data (flags, morphisms, color tuples, ...).
    """
    name: str
    ok: bool = True
    checked: int = 0
    violation: str | None = None
    witness: object = None
    details: dict = field(default_factory=dict)

    def fail(self, violation, witness=None):
        if self.ok:
            self.ok = False
            self.violation = violation
            self.witness = witness
        return self

    def merge(self, other: "Report"):
        self.checked += other.checked
        if not other.ok:
            self.fail(f"{other.name}: {other.violation}", other.witness)
        return self

    def __bool__(self):
        return self.ok

    def to_dict(self):
        out = {"name": self.name, "ok": self.ok, "checked": self.checked}
        if not self.ok:
            out["violation"] = self.violation
            out["witness"] = repr(self.witness)
        return out
