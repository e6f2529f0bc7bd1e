"""
JSON encoding of exact values, outcomes and reports, and parsing of the
exact seed syntax ``"a p/q b r/s a p/q b r/s"``.
"""

import json
import re
from fractions import Fraction
from typing import Any, Dict, List

from .entities.geometry import Point2, Polygon
from .entities.orbit import (
    BudgetExceeded,
    HitSingular,
    Periodic,
    ReturnRecord,
)
from .entities.qsqrt2 import QSqrt2

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class SeedSyntaxError(ValueError):
    """Raised for seeds that are not exact rational quadruples."""


def _parse_rational(token: str) -> Fraction:
    if not _RATIONAL.match(token):
        raise SeedSyntaxError(f"{token!r} is not an exact rational p/q")
    try:
        return Fraction(token)
    except ZeroDivisionError as exc:
        raise SeedSyntaxError(f"{token!r} has a zero denominator") from exc


def parse_qsqrt2(tokens: List[str]) -> QSqrt2:
    """Parse ``["a", "p/q", "b", "r/s"]`` into ``p/q + (r/s)*sqrt2``."""
    if len(tokens) != 4 or tokens[0] != "a" or tokens[2] != "b":
        raise SeedSyntaxError(f"expected 'a p/q b r/s', got {' '.join(tokens)!r}")
    return QSqrt2(_parse_rational(tokens[1]), _parse_rational(tokens[3]))


def parse_seed(text: str) -> Point2:
    """
    Parse an exact seed point.

    Args:
        text: ``"a p/q b r/s a p/q b r/s"``, the x coordinate then y

    Returns:
        The exact point

    Raises:
        SeedSyntaxError: On any other syntax, including decimals
    """
    tokens = text.split()
    if len(tokens) != 8:
        raise SeedSyntaxError(f"expected 8 tokens, got {len(tokens)}")
    return Point2(parse_qsqrt2(tokens[:4]), parse_qsqrt2(tokens[4:]))


def format_seed(p: Point2) -> str:
    """Inverse of :func:`parse_seed`."""
    return " ".join(
        f"a {_text(c.a)} b {_text(c.b)}" for c in (p.x, p.y)
    )


def _text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def point_to_json(p: Point2) -> Dict[str, Any]:
    return {"x": p.x.to_json(), "y": p.y.to_json()}


def point_from_json(payload: Dict[str, Any]) -> Point2:
    return Point2(QSqrt2.from_json(payload["x"]), QSqrt2.from_json(payload["y"]))


def polygon_to_json(polygon: Polygon) -> List[Dict[str, Any]]:
    return [point_to_json(p) for p in polygon.vertices]


def outcome_to_json(outcome) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "outcome": outcome.kind,
        "steps_used": outcome.steps_used,
    }
    if isinstance(outcome, Periodic):
        payload["period"] = outcome.period
    elif isinstance(outcome, HitSingular):
        payload["step"] = outcome.step
    elif isinstance(outcome, BudgetExceeded):
        payload["budget"] = outcome.budget
    elif isinstance(outcome, ReturnRecord):
        payload["image"] = point_to_json(outcome.image)
        payload["steps"] = outcome.steps
    return payload


def component_to_json(comp) -> Dict[str, Any]:
    return {
        "level": comp.level,
        "address": comp.address,
        "center": point_to_json(comp.center),
        "side": comp.side.to_json(),
        "period": comp.period,
        "t_prime_period": comp.t_prime_period,
    }


def dumps(payload: Any) -> str:
    """Deterministic JSON text: sorted keys, fixed indentation."""
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
