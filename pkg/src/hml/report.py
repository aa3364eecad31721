"""Inequality reports: named quantities plus pairwise verdicts with slack."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable

REL_TOL = 1e-7
ABS_TOL = 1e-12


@dataclass(frozen=True)
class Verdict:
    left: str
    right: str
    passed: bool
    slack: float


@dataclass
class InequalityReport:
    """Ordered quantities and the comparisons made between them.

    A verdict ``(l, r)`` asserts ``value(l) <= value(r)`` under the rule
    ``left <= right * (1 + rel_tol) + abs_tol``; ``slack = right - left``.
    Entrywise comparisons carry the label of a matrix pair and
    ``slack = -(worst excess)``.
    """

    suite: str
    digest: dict[str, Any] = field(default_factory=dict)
    rel_tol: float = REL_TOL
    abs_tol: float = ABS_TOL
    quantities: list[tuple[str, float]] = field(default_factory=list)
    verdicts: list[Verdict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.passed]

    def value(self, label: str) -> float:
        for name, v in self.quantities:
            if name == label:
                return v
        raise KeyError(label)

    def labels(self) -> list[str]:
        return [name for name, _ in self.quantities]

    def add(self, label: str, value: float) -> None:
        value = float(value)
        for i, (name, old) in enumerate(self.quantities):
            if name == label:
                if not math.isclose(old, value, rel_tol=1e-12, abs_tol=1e-300):
                    raise ValueError(f"quantity {label!r} recorded twice: {old!r} vs {value!r}")
                return
        self.quantities.append((label, value))

    def leq(self, left: str, right: str) -> Verdict:
        lv, rv = self.value(left), self.value(right)
        ok = lv <= rv * (1 + self.rel_tol) + self.abs_tol
        v = Verdict(left, right, bool(ok), rv - lv)
        self.verdicts.append(v)
        return v

    def chain(self, *links: tuple[str, float]) -> None:
        """Record ``links`` and assert each is <= the next one."""
        for label, value in links:
            self.add(label, value)
        for (a, _), (b, _) in zip(links, links[1:]):
            self.leq(a, b)

    def equal(self, left: str, right: str) -> None:
        self.leq(left, right)
        self.leq(right, left)

    def entrywise(self, left: str, right: str, ok: bool, excess: float) -> None:
        self.verdicts.append(Verdict(left, right, bool(ok), -float(excess)))

    def to_dict(self) -> dict[str, Any]:
        return {
            "digest": self.digest,
            "quantities": [[k, v] for k, v in self.quantities],
            "verdicts": [[v.left, v.right, v.passed, v.slack] for v in self.verdicts],
        }


def bundle(suite: str, reports: Iterable[InequalityReport]) -> dict[str, Any]:
    """The report JSON document for a list of trial reports."""
    reports = list(reports)
    n_pass = sum(r.passed for r in reports)
    return {
        "suite": suite,
        "trials": [r.to_dict() for r in reports],
        "summary": {"pass": n_pass, "fail": len(reports) - n_pass},
    }


def _encode(obj) -> str:
    # Floats go out with 17 significant digits so reports are byte-stable
    # and round-trip exactly.
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return json.dumps(str(obj))
        return format(obj, ".17g")
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if hasattr(obj, "item"):
        return _encode(obj.item())
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(doc: dict[str, Any]) -> str:
    return _encode(doc) + "\n"


def to_csv(doc: dict[str, Any]) -> str:
    """One row per trial: digest fields, then every quantity as a column."""
    trials = doc["trials"]
    digest_keys: list[str] = []
    labels: list[str] = []
    for t in trials:
        for k in t["digest"]:
            if k not in digest_keys:
                digest_keys.append(k)
        for label, _ in t["quantities"]:
            if label not in labels:
                labels.append(label)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["trial", *digest_keys, "pass", *labels])
    for i, t in enumerate(trials):
        q = dict(t["quantities"])
        passed = all(v[2] for v in t["verdicts"])
        row = [i]
        for k in digest_keys:
            v = t["digest"].get(k, "")
            row.append(_encode(v) if isinstance(v, (list, tuple, dict)) else
                       format(v, ".17g") if isinstance(v, float) else v)
        row.append(int(passed))
        row.extend(format(q[lab], ".17g") if lab in q else "" for lab in labels)
        w.writerow(row)
    return buf.getvalue()


def write_report(doc: dict[str, Any], path, fmt: str = "json") -> None:
    if fmt == "json":
        text = dumps(doc)
    elif fmt == "csv":
        text = to_csv(doc)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
