"""
Seeded rational sample points for the property checks.
"""

import math
import random
from fractions import Fraction
from typing import Callable, List, Optional

from .entities.geometry import Point2, Polygon
from .entities.qsqrt2 import QSqrt2


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def _bounds(polygon: Polygon) -> tuple[int, int, int, int]:
    xs = [p.x.to_float() for p in polygon.vertices]
    ys = [p.y.to_float() for p in polygon.vertices]
    return (
        math.floor(min(xs)),
        math.ceil(max(xs)),
        math.floor(min(ys)),
        math.ceil(max(ys)),
    )


def sample_points(
    polygon: Polygon,
    count: int,
    rng: random.Random,
    denominator: int,
    accept: Optional[Callable[[Point2], bool]] = None,
    max_attempts: int = 100,
) -> List[Point2]:
    """
    Draw ``count`` rational points with the given denominator from the
    interior of ``polygon`` by rejection from its integer bounding box.

    Args:
        polygon: Region to sample from (convex or not)
        count: Number of points wanted
        rng: Seeded generator; the draw is fully determined by its state
        denominator: Common denominator of the coordinates
        accept: Optional extra filter applied after interior membership
        max_attempts: Rejections allowed per requested point

    Returns:
        The sampled points, in draw order

    Raises:
        RuntimeError: If the acceptance rate is too low
    """
    x_lo, x_hi, y_lo, y_hi = _bounds(polygon)
    points: List[Point2] = []
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts > max_attempts * max(count, 1):
            raise RuntimeError("sampling region is too thin for rejection sampling")
        x = Fraction(rng.randint(x_lo * denominator, x_hi * denominator), denominator)
        y = Fraction(rng.randint(y_lo * denominator, y_hi * denominator), denominator)
        p = Point2(QSqrt2(x), QSqrt2(y))
        if not polygon.contains(p):
            continue
        if accept is not None and not accept(p):
            continue
        points.append(p)
    return points
