"""
Outcome types shared by the billiard map, the induced maps and the
first-return engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple, Union

from .geometry import Point2


class _Singular:
    """Marker returned by a map step whose image is undefined."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "SINGULAR"

    def __bool__(self) -> bool:
        return False


SINGULAR = _Singular()

StepResult = Union[Point2, _Singular]


def is_singular(value: object) -> bool:
    return value is SINGULAR


class Direction(Enum):
    FORWARD = "forward"
    BACKWARD = "backward"

    def __repr__(self):
        return self.name


class OrbitState(Enum):
    """Lifecycle of an orbit computation."""

    RUNNING = "running"
    PERIODIC = "periodic"
    SINGULAR = "singular"
    BUDGET_EXCEEDED = "budget_exceeded"

    def __repr__(self):
        return self.name


class OrbitEvent(Enum):
    STEPPED = "stepped"
    RETURNED = "returned"
    HIT_SINGULAR = "hit_singular"
    EXHAUSTED = "exhausted"

    def __repr__(self):
        return self.name


class PointClass(Enum):
    """Classification of a seed from its two-sided orbit."""

    PERIODIC = "periodic"
    BOUNDARY = "boundary"
    UNDETERMINED = "undetermined"

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Periodic:
    period: int
    kind = "periodic"

    @property
    def steps_used(self) -> int:
        return self.period


@dataclass(frozen=True)
class HitSingular:
    step: int
    kind = "singular"

    @property
    def steps_used(self) -> int:
        return self.step


@dataclass(frozen=True)
class BudgetExceeded:
    budget: int
    kind = "budget_exceeded"

    @property
    def steps_used(self) -> int:
        return self.budget


OrbitOutcome = Union[Periodic, HitSingular, BudgetExceeded]


@dataclass(frozen=True)
class ReturnRecord:
    """
    First iterate that lands back in the target region.

    ``prefix`` keeps the intermediate iterates (up to a cap) so that
    minimality of ``steps`` can be asserted afterwards.
    """

    image: Point2
    steps: int
    prefix: Tuple[Point2, ...] = field(default=(), compare=False, repr=False)
    kind = "returned"

    @property
    def steps_used(self) -> int:
        return self.steps


ReturnOutcome = Union[ReturnRecord, HitSingular, BudgetExceeded]
