"""Verification records shared by every checking routine."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

PASS = "pass"
FAIL = "fail"
DISCREPANCY = "discrepancy"
INFO = "info"


@dataclass(frozen=True)
class Check:
    """One verified identity.

    ``status`` is ``pass``/``fail``; ``discrepancy`` marks a documented
    disagreement between a published formula and the algebra that does not
    fail a run; ``info`` records a measured value with no verdict.
    """

    scope: str
    identity: str
    n: int | None
    status: str
    detail: str = ""
    alpha: tuple | None = None

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def as_record(self) -> dict:
        from .serialize import scalar_to_json

        return {
            "scope": self.scope,
            "identity": self.identity,
            "n": self.n,
            "alpha": None if self.alpha is None else [scalar_to_json(a) for a in self.alpha],
            "status": self.status,
            "detail": self.detail,
        }


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, scope, identity, n, ok, detail="", alpha=None) -> Check:
        """Append a pass/fail check; ``ok`` may also be a status string."""
        status = ok if isinstance(ok, str) else (PASS if ok else FAIL)
        check = Check(scope, identity, n, status, detail, None if alpha is None else tuple(alpha))
        self.checks.append(check)
        return check

    def extend(self, other: "Report | Iterable[Check]") -> None:
        self.checks.extend(other.checks if isinstance(other, Report) else other)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def by_identity(self, identity: str) -> list[Check]:
        return [c for c in self.checks if c.identity == identity]

    def __iter__(self) -> Iterator[Check]:
        return iter(self.checks)

    def __len__(self) -> int:
        return len(self.checks)

    def __bool__(self) -> bool:
        return self.ok


class IdentityViolation(ArithmeticError):
    """An identity that must hold by construction evaluated to false."""
