"""PASS/FAIL check reports shared by every validator."""

from dataclasses import dataclass, field
import json

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


def encode_residual(obj):
    """Canonical JSON-able encoding of a residual value."""
    if obj is None:
        return None
    if hasattr(obj, "encode") and not isinstance(obj, str):
        return obj.encode()
    if isinstance(obj, (list, tuple)):
        return [encode_residual(o) for o in obj]
    if isinstance(obj, dict):
        return {k: encode_residual(v) for k, v in obj.items()}
    return obj


@dataclass
class Check:
    name: str
    status: str
    residual: object = None
    notes: str = ""
    trial: int = 0

    @property
    def ok(self):
        return self.status != FAIL

    def as_dict(self):
        return {
            "name": self.name,
            "status": self.status,
            "residual": encode_residual(self.residual),
            "notes": self.notes,
        }


@dataclass
class Report:
    checks: list = field(default_factory=list)

    def add(self, name, passed, residual=None, notes="", trial=0):
        status = PASS if passed else FAIL
        self.checks.append(Check(name, status, None if passed else residual, notes, trial))
        return passed

    def skip(self, name, notes=""):
        self.checks.append(Check(name, SKIP, None, notes))

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(
                Check(prefix + c.name, c.status, c.residual, c.notes, c.trial)
            )
        return self

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if c.status == FAIL]

    def get(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def ordered(self):
        return sorted(self.checks, key=lambda c: (c.name, c.trial))

    def to_json(self):
        return json.dumps({"checks": [c.as_dict() for c in self.ordered()]}, indent=2, sort_keys=True)

    def to_text(self):
        lines = []
        for c in self.ordered():
            line = f"{c.status:4}  {c.name}"
            if c.notes:
                line += f"  ({c.notes})"
            lines.append(line)
            if c.status == FAIL and c.residual is not None:
                lines.append(f"      residual: {json.dumps(encode_residual(c.residual))}")
        return "\n".join(lines)

    def __bool__(self):
        return self.ok
