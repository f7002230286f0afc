"""Verification reports: one record per checked identity, serializable to JSON."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass
from dataclasses import field as dc_field
from typing import Any

from .exactla import Matrix

SCHEMA = 1
_MAX_WITNESS_ENTRIES = 400


def matrix_witness(m: Matrix) -> dict[str, Any]:
    """Exact serialization of a matrix; large ones are summarized by their nonzero entries."""
    out: dict[str, Any] = {"shape": list(m.shape), "field": m.field.tag}
    if m.rows * m.cols <= _MAX_WITNESS_ENTRIES:
        out["entries"] = m.to_strings()
    else:
        rows, cols = (m.num != 0).nonzero()
        out["nonzero"] = int(rows.size)
        out["sample"] = [[int(r), int(c), str(m.entry(int(r), int(c)))]
                         for r, c in list(zip(rows, cols))[:20]]
    return out


def residue_witness(lhs: Matrix, rhs: Matrix, **context) -> dict[str, Any]:
    w: dict[str, Any] = dict(context)
    if lhs.shape != rhs.shape:
        w["shapes"] = [list(lhs.shape), list(rhs.shape)]
    else:
        w["residue"] = matrix_witness(lhs - rhs)
    return w


@dataclass
class Check:
    id: str
    anchor: str
    passed: bool
    witness: dict[str, Any] | None = None

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"id": self.id, "anchor": self.anchor, "status": "pass" if self.passed else "fail"}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class Report:
    suite: str
    group: str
    field: str | None = None
    seed: int | None = None
    params: dict[str, Any] = dc_field(default_factory=dict)
    checks: list[Check] = dc_field(default_factory=list)
    elapsed: float = 0.0
    _t0: float = dc_field(default_factory=time.perf_counter, repr=False)

    def check(self, id: str, anchor: str, passed: bool, witness: dict[str, Any] | None = None) -> bool:
        """Record one identity; failures always carry a witness."""
        passed = bool(passed)
        if not passed and witness is None:
            witness = {"instance": id}
        self.checks.append(Check(id, anchor, passed, None if passed else witness))
        return passed

    def equal(self, id: str, anchor: str, lhs: Matrix, rhs: Matrix, **context) -> bool:
        ok = lhs.shape == rhs.shape and lhs == rhs
        return self.check(id, anchor, ok, None if ok else residue_witness(lhs, rhs, **context))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.anchor, c.passed, c.witness))

    def finish(self) -> "Report":
        self.elapsed = time.perf_counter() - self._t0
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict[str, Any]:
        # timing is kept out of the serialized form so equal inputs give equal bytes
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "group": self.group,
            "field": self.field,
            "seed": self.seed,
            "params": self.params,
            "check_count": len(self.checks),
            "failure_count": len(self.failures),
            "status": "pass" if self.passed else "fail",
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.suite} [{self.group}] {len(self.checks) - len(self.failures)}/{len(self.checks)} checks"
        if self.elapsed:
            line += f" in {self.elapsed:.2f}s"
        return line
