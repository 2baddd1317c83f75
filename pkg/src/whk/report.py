"""Check reports: per-check status plus concrete witnesses for failures."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

SCHEMA = 1
MAX_WITNESSES = 25


def jsonable(x: Any) -> Any:
    """Convert nested tuples, Fractions and dataclass-free values to JSON types."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_dict"):
        return x.to_dict()
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _term(x) -> str:
    if isinstance(x, list) and len(x) == 2:
        return f"{x[1]}*{x[0]}"
    return str(x)


def _failure_key(f) -> str:
    return f.check + json.dumps(f.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class Failure:
    check: str
    witness: tuple
    residual: tuple = ()
    note: str = ""

    def to_dict(self) -> dict:
        d = {"witness": jsonable(self.witness), "residual": jsonable(self.residual)}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    """Outcome of a batch of checks.

    Every check that was run is registered with :meth:`ran`, so a check
    that passed shows up explicitly instead of just being absent.
    """

    name: str
    checks: dict = field(default_factory=dict)  # check name -> list[Failure]
    info: dict = field(default_factory=dict)

    def ran(self, check: str) -> None:
        self.checks.setdefault(check, [])

    def fail(self, check: str, witness: Iterable = (), residual: Iterable = (), note: str = "") -> None:
        self.checks.setdefault(check, []).append(
            Failure(check, tuple(witness), tuple(residual), note)
        )

    def expect(self, check: str, cond: bool, witness: Iterable = (), residual: Iterable = (), note: str = "") -> bool:
        self.ran(check)
        if not cond:
            self.fail(check, witness, residual, note)
        return cond

    @property
    def ok(self) -> bool:
        return not any(self.checks.values())

    def passed(self, check: str) -> bool:
        if check not in self.checks:
            raise KeyError(f"check {check!r} was never run")
        return not self.checks[check]

    def failures(self, check: str | None = None) -> list[Failure]:
        if check is not None:
            fs = self.checks.get(check, [])
        else:
            fs = [f for v in self.checks.values() for f in v]
        return sorted(fs, key=_failure_key)

    def merge(self, other: "Report", prefix: str = "") -> "Report":
        for name, fs in other.checks.items():
            key = f"{prefix}{name}"
            self.checks.setdefault(key, []).extend(
                Failure(key, f.witness, f.residual, f.note) for f in fs
            )
        for k, v in other.info.items():
            self.info.setdefault(f"{prefix}{k}", v)
        return self

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        checks = {}
        for name in sorted(self.checks):
            fs = sorted(set(self.checks[name]), key=_failure_key)
            entry: dict = {"status": "pass" if not fs else "fail"}
            if fs:
                entry["failures"] = [f.to_dict() for f in fs[:MAX_WITNESSES]]
                entry["failure_count"] = len(fs)
            checks[name] = entry
        out = {"name": self.name, "status": "pass" if self.ok else "fail", "checks": checks}
        if self.info:
            out["info"] = jsonable(self.info)
        return out

    def render_text(self) -> str:
        d = self.to_dict()
        lines = [f"{d['name']}: {d['status'].upper()}"]
        for name, entry in d["checks"].items():
            lines.append(f"  [{entry['status']}] {name}")
            for f in entry.get("failures", []):
                w = ", ".join(str(x) for x in f["witness"])
                r = " ".join(_term(x) for x in f["residual"])
                line = f"      witness ({w})"
                if r:
                    line += f" residual [{r}]"
                if f.get("note"):
                    line += f"  {f['note']}"
                lines.append(line)
            if entry.get("failure_count", 0) > len(entry.get("failures", [])):
                lines.append(f"      ... {entry['failure_count']} failures in total")
        for k in sorted(d.get("info", {})):
            lines.append(f"  {k}: {json.dumps(d['info'][k], sort_keys=True)}")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.render_text()
