"""Named pass/fail checks with counterexample witnesses."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass(frozen=True)
class Witness:
    indices: tuple
    lhs: Any
    rhs: Any


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    witness: Witness | None = None
    informational: bool = False
    note: str = ""

    def __post_init__(self):
        if (self.status == FAIL) != (self.witness is not None):
            raise ValueError("a witness is present exactly when the check fails")

    @property
    def passed(self):
        return self.status == PASS


def passed(name, informational=False, note=""):
    return Check(name, PASS, informational=informational, note=note)


def failed(name, indices, lhs, rhs, informational=False, note=""):
    return Check(name, FAIL, Witness(tuple(indices), lhs, rhs), informational, note)


def skipped(name, note=""):
    return Check(name, SKIPPED, note=note)


def compare(name, cases, informational=False):
    """First case ``(indices, lhs, rhs)`` with ``lhs != rhs`` fails the check.

    ``cases`` is consumed lazily in order, so the witness is the first
    failing index tuple in iteration order.
    """
    for idx, lhs, rhs in cases:
        if lhs != rhs:
            return failed(name, idx, lhs, rhs, informational)
    return passed(name, informational)


@dataclass
class Report:
    checks: list = field(default_factory=list)

    def add(self, check):
        self.checks.append(check)
        return check

    def extend(self, other):
        self.checks.extend(other.checks if isinstance(other, Report) else other)

    @property
    def ok(self):
        """True when every non-informational check passed."""
        return all(c.passed for c in self.checks if not c.informational)

    def failures(self):
        return [c for c in self.checks if c.status == FAIL and not c.informational]

    def first_failure(self):
        f = self.failures()
        return f[0] if f else None

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self):
        return [c.name for c in self.checks]

    def __iter__(self):
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)


def format_value(v, labels=None):
    if isinstance(v, tuple):
        return "[" + ",".join(format_value(x, labels) for x in v) + "]"
    if hasattr(v, "items") and hasattr(v, "dims"):
        # sparse tensor: label tuples with their coefficients
        name = (lambda i: labels[i]) if labels is not None else str
        body = " ".join(f"{','.join(name(i) for i in key)}:{c}" for key, c in v.items())
        return "{" + body + "}"
    return str(v)


def format_check(c: Check, labels=None):
    tag = " [informational]" if c.informational else ""
    if c.status == PASS:
        return f"{c.name} PASS{tag}"
    if c.status == SKIPPED:
        return f"{c.name} SKIP" + (f" ({c.note})" if c.note else "")
    w = c.witness
    if labels is not None:
        at = ",".join(labels[i] if isinstance(i, int) and 0 <= i < len(labels) else str(i) for i in w.indices)
    else:
        at = ",".join(str(i) for i in w.indices)
    return f"{c.name} FAIL at ({at}): lhs={format_value(w.lhs, labels)} rhs={format_value(w.rhs, labels)}{tag}"


def format_report(report: Report, labels=None):
    return "\n".join(format_check(c, labels) for c in report)
