"""Inequality records with sound-direction bookkeeping.

Every side of an inequality ``lhs <= rhs`` carries a direction tag saying how
its number relates to the true quantity:

``exact``        the true value up to floating point
``upper_bound``  the true value is at most this number
``lower_bound``  the true value is at least this number
``estimate``     a Monte-Carlo estimate with a standard error
``heuristic``    an unbounded approximation

A check passes only when an upper bound of the left side is at most a lower
bound of the right side. Estimates are widened by three standard errors.
A definite failure needs the reverse: a lower bound of the left side above an
upper bound of the right side. Everything else is inconclusive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from ._jsonio import SCHEMA_VERSION, from_num, num

EXACT = "exact"
UPPER = "upper_bound"
LOWER = "lower_bound"
ESTIMATE = "estimate"
HEURISTIC = "heuristic"
DIRECTIONS = (EXACT, UPPER, LOWER, ESTIMATE, HEURISTIC)

PASS, FAIL, INCONCLUSIVE, SKIPPED = "pass", "fail", "inconclusive", "skipped"

SIGMAS = 3.0
RTOL = 1e-12


@dataclass(frozen=True)
class Side:
    value: float
    direction: str = EXACT
    std_error: float = 0.0

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ValueError(f"unknown direction {self.direction!r}")
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "std_error", float(self.std_error))

    def upper(self) -> float | None:
        """A number known to dominate the true value, if any."""
        if self.direction in (EXACT, UPPER):
            return self.value
        if self.direction == ESTIMATE:
            return self.value + SIGMAS * self.std_error
        return None

    def lower(self) -> float | None:
        if self.direction in (EXACT, LOWER):
            return self.value
        if self.direction == ESTIMATE:
            return self.value - SIGMAS * self.std_error
        return None

    def to_json(self):
        return {"value": num(self.value), "direction": self.direction, "std_error": num(self.std_error)}

    @classmethod
    def from_json(cls, d):
        return cls(from_num(d["value"]), d["direction"], from_num(d.get("std_error", 0.0)))


def _leq(a, b):
    if a == b:
        return True
    if math.isinf(b) and b > 0:
        return True
    return a <= b + RTOL * max(abs(a), abs(b))


def judge(lhs: Side, rhs: Side) -> tuple[str, float]:
    """Status and sound margin of ``lhs <= rhs``."""
    lu, rl = lhs.upper(), rhs.lower()
    if lu is not None and rl is not None:
        margin = rl - lu if not (math.isinf(rl) and math.isinf(lu)) else 0.0
        if _leq(lu, rl):
            return PASS, margin
    ll, ru = lhs.lower(), rhs.upper()
    if ll is not None and ru is not None and not _leq(ll, ru):
        return FAIL, ru - ll
    return INCONCLUSIVE, rhs.value - lhs.value


@dataclass(frozen=True)
class InequalityReport:
    """One checked instance of an inequality ``lhs <= rhs``."""

    theorem: str
    instance: str
    lhs: Side
    rhs: Side
    constant: float | None = None
    seed: int | None = None
    status: str = INCONCLUSIVE
    margin: float = math.nan
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def ratio(self) -> float:
        if self.rhs.value == 0:
            return math.inf if self.lhs.value > 0 else 1.0
        return self.lhs.value / self.rhs.value

    def to_json(self):
        return {"kind": "inequality_report", "schema_version": SCHEMA_VERSION,
                "theorem": self.theorem, "instance": self.instance,
                "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json(),
                "constant": num(self.constant), "seed": self.seed, "status": self.status,
                "margin": num(self.margin), "details": _clean(self.details)}

    @classmethod
    def from_json(cls, d):
        return cls(d["theorem"], d["instance"], Side.from_json(d["lhs"]), Side.from_json(d["rhs"]),
                   from_num(d.get("constant")), d.get("seed"), d["status"], from_num(d["margin"]),
                   dict(d.get("details", {})))


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if hasattr(obj, "to_json"):
        return obj.to_json()
    try:
        return num(obj)
    except (TypeError, ValueError):
        return str(obj)


def compare(theorem: str, instance: str, lhs: Side, rhs: Side, constant=None, seed=None,
            **details) -> InequalityReport:
    status, margin = judge(lhs, rhs)
    return InequalityReport(theorem, instance, lhs, rhs, None if constant is None else float(constant),
                            seed, status, float(margin), details)


def skipped(theorem: str, instance: str, reason: str, **details) -> InequalityReport:
    return InequalityReport(theorem, instance, Side(math.nan, HEURISTIC), Side(math.nan, HEURISTIC),
                            status=SKIPPED, details={"reason": reason, **details})


def audit(reports) -> list[str]:
    """Re-judge every report; returns a list of problems (empty when clean)."""
    problems = []
    for r in reports:
        if r.status == SKIPPED:
            continue
        status, _ = judge(r.lhs, r.rhs)
        if r.status == PASS and status != PASS:
            problems.append(f"{r.theorem}/{r.instance}: pass without sound directions")
        elif r.status != status:
            problems.append(f"{r.theorem}/{r.instance}: recorded {r.status}, re-judged {status}")
    return problems
