"""Result record shared by the membership predicates and the check harness."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .exactalg import RatFun

__all__ = ["Failure", "CheckReport"]


@dataclass(frozen=True)
class Failure:
    """One concrete witness: where the identity broke and by how much."""

    where: str
    delta: Optional[RatFun] = None


@dataclass
class CheckReport:
    """Outcome of a named verification.

    A failing report always carries at least one witness; ``extras`` holds
    side observations that do not affect the verdict (for example the two
    parity readings of the harmonic membership test).  ``duration`` is
    wall-clock seconds and is ignored by equality.
    """

    name: str
    params: dict = field(default_factory=dict)
    passed: bool = True
    failures: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)
    duration: float = 0.0

    def record(self, where: str, delta: Optional[RatFun] = None) -> None:
        self.passed = False
        self.failures.append(Failure(where, delta))

    def merge(self, other: "CheckReport") -> None:
        self.passed = self.passed and other.passed
        self.failures.extend(other.failures)
        self.extras.update(other.extras)

    def summary(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        text = f"{state} {self.name}"
        if not self.passed and self.failures:
            first = self.failures[0]
            text += f" [{first.where}"
            if first.delta is not None:
                text += f": delta = {first.delta}"
            text += "]"
        return text

    def __eq__(self, other) -> bool:
        if not isinstance(other, CheckReport):
            return NotImplemented
        return (
            self.name == other.name
            and self.params == other.params
            and self.passed == other.passed
            and self.failures == other.failures
            and self.extras == other.extras
        )
