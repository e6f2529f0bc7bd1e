"""
Lifting periodic components from ``Y = OKLM u gamma^2`` to the whole wedge.

Every periodic component of the wedge map is ``T'^m(H^n(C_0))`` for a
component ``C_0`` of ``Y`` with ``m <= 3``. The window sweep checks this on
a grid: it finds the component of each grid point exactly, by clipping the
continuity domain of its itinerary, and pulls it back into ``Y``.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .billiard import cone_half_planes, run_orbit, tangent_vertex
from .entities.geometry import (
    AffineMap,
    HalfPlane,
    Point2,
    Polygon,
    clip_polygon,
)
from .entities.orbit import SINGULAR, HitSingular, Periodic
from .entities.qsqrt2 import QSqrt2
from .induced import (
    InducedAtlas,
    OutsideDomainError,
    inverse_branch_map,
    wedge_branch_map,
    wedge_step,
)
from .renormalization import RenormalizationData

logger = logging.getLogger(__name__)

MAX_LIFT_STEPS = 3
NECKLACE_BASE = "necklace"
CLIP_HALF_WIDTH = 6
MATCH_DEPTH = 12
MAX_SHIFTS = 16


class LiftError(ValueError):
    """Raised when a polygon straddles a singular line while being lifted."""


def _step_polygon(polygon: Polygon, ia: InducedAtlas) -> Polygon:
    centroid = polygon.vertex_centroid()
    j = tangent_vertex(centroid, ia.atlas)
    if j is SINGULAR:
        raise LiftError(f"polygon centroid {centroid} is singular")
    closed_planes = cone_half_planes(j, ia.atlas) + ia.wedge_planes
    for v in polygon.vertices:
        if any(plane.side(v) < 0 for plane in closed_planes):
            raise LiftError("polygon straddles a singular line")
    return polygon.transformed(wedge_branch_map(j, ia))


def lift_component(
    c0: Polygon, n: int, m: int, ia: InducedAtlas, rd: RenormalizationData
) -> Polygon:
    """
    ``T'^m(H^n(c0))`` computed polygon-wise.

    Args:
        c0: A component of ``Y``
        n: Number of ``H`` translations, at least 0
        m: Number of wedge steps, between 0 and 3

    Raises:
        ValueError: If ``n`` or ``m`` is out of range or ``c0`` is not in ``Y``
        LiftError: If a step would cut the polygon
    """
    if n < 0 or not 0 <= m <= MAX_LIFT_STEPS:
        raise ValueError(f"invalid lift (n={n}, m={m})")
    if not rd.in_region_y(c0.vertex_centroid()):
        raise ValueError("the base polygon does not lie in Y")
    lifted = c0.transformed(rd.h_map.power(n))
    for _ in range(m):
        lifted = _step_polygon(lifted, ia)
    return lifted


def _box(center: Point2, half_width: int) -> Polygon:
    d = QSqrt2(half_width)
    return Polygon(
        (
            Point2(center.x - d, center.y - d),
            Point2(center.x + d, center.y - d),
            Point2(center.x + d, center.y + d),
            Point2(center.x - d, center.y + d),
        )
    )


def component_from_point(
    x: Point2, ia: InducedAtlas, period: int
) -> Optional[Polygon]:
    """
    The periodic component of the wedge map containing ``x``.

    The itinerary of ``x`` is followed for whole periods until the composed
    branch is the identity; the component is the common domain of those
    branches, clipped from a box around ``x``.
    """
    composite = AffineMap.identity()
    planes: List[HalfPlane] = []
    current = x
    steps = 0
    while True:
        for _ in range(period):
            j = tangent_vertex(current, ia.atlas)
            if j is SINGULAR:
                return None
            for plane in cone_half_planes(j, ia.atlas) + ia.wedge_planes:
                planes.append(plane.pullback(composite))
            branch = wedge_branch_map(j, ia)
            composite = branch.compose(composite)
            current = branch(current)
        steps += period
        if composite.is_identity():
            break
        if steps >= 8 * period:
            raise AssertionError(f"itinerary of {x} does not close as an isometry")
    return clip_polygon(_box(x, CLIP_HALF_WIDTH), planes)


def match_in_y(
    polygon: Polygon, rd: RenormalizationData, depth: int = MATCH_DEPTH
) -> Optional[str]:
    """
    Census address of ``polygon`` when it is a component of ``Y``
    (``"necklace"`` for gamma^2), else ``None``.
    """
    if polygon.same_shape(rd.necklace_octagon):
        return NECKLACE_BASE
    q = polygon.vertex_centroid()
    if not rd.ia.quad_oklm.contains(q):
        return None
    address = ""
    for _ in range(depth + 1):
        comp = rd.component(address)
        if comp.polygon.contains(q):
            return address if comp.polygon.same_shape(polygon) else None
        for letter in "012":
            if rd.cell(address + letter).contains(q, closed=True):
                address += letter
                break
        else:
            return None
    return None


@dataclass(frozen=True)
class LiftMatch:
    base: str
    n: int
    m: int


def match_component(
    polygon: Polygon, ia: InducedAtlas, rd: RenormalizationData
) -> Optional[LiftMatch]:
    """Find ``(C_0, n, m)`` with ``polygon = T'^m(H^n(C_0))``."""
    h_inverse = rd.h_map.inverse()
    current = polygon
    for m in range(MAX_LIFT_STEPS + 1):
        if m:
            branch = inverse_branch_map(current.vertex_centroid(), ia)
            if branch is None:
                return None
            current = current.transformed(branch)
        shifted = current
        for n in range(MAX_SHIFTS + 1):
            base = match_in_y(shifted, rd)
            if base is not None:
                return LiftMatch(base, n, m)
            shifted = shifted.transformed(h_inverse)
            if not ia.in_wedge(shifted.vertex_centroid()):
                break
    return None


@dataclass
class SweepReport:
    points: int = 0
    covered: int = 0
    matched: int = 0
    singular: int = 0
    unresolved: int = 0
    components: List[Tuple[Polygon, LiftMatch]] = field(default_factory=list)
    unmatched: List[Point2] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.unmatched


def default_window(ia: InducedAtlas) -> Polygon:
    """Triangle of the wedge cut by the line ``y = y_K + 4``."""
    top = ia.K.y + 4
    left = ia.O.x + ia.O.y - top
    return Polygon.counterclockwise(
        (ia.O, Point2(ia.O.x, top), Point2(left, top))
    )


def window_grid(window: Polygon, step: QSqrt2, origin: Point2) -> List[Point2]:
    """Grid points ``origin + (i, j) * step`` strictly inside ``window``."""
    xs = [v.x for v in window.vertices]
    ys = [v.y for v in window.vertices]
    x_lo, x_hi, y_lo, y_hi = min(xs), max(xs), min(ys), max(ys)
    i_lo = int((x_lo - origin.x).to_float() / step.to_float()) - 1
    i_hi = int((x_hi - origin.x).to_float() / step.to_float()) + 1
    j_lo = int((y_lo - origin.y).to_float() / step.to_float()) - 1
    j_hi = int((y_hi - origin.y).to_float() / step.to_float()) + 1
    points = []
    for j in range(j_lo, j_hi + 1):
        for i in range(i_lo, i_hi + 1):
            p = Point2(origin.x + step * i, origin.y + step * j)
            if window.contains(p):
                points.append(p)
    return points


def window_sweep(
    ia: InducedAtlas,
    rd: RenormalizationData,
    budget: int,
    window: Optional[Polygon] = None,
    step: Optional[QSqrt2] = None,
) -> SweepReport:
    """
    Sweep a grid of the wedge and match every periodic component found.

    Points already covered by a found component are skipped; points whose
    orbit hits the singular set or does not close within ``budget`` are
    counted apart from unmatched components.
    """
    window = window or default_window(ia)
    step = step or rd.h0 * Fraction(1, 4)
    origin = ia.O + Point2(-step * Fraction(1, 3), step * Fraction(1, 7))
    report = SweepReport()
    found: List[Polygon] = []
    for p in window_grid(window, step, origin):
        report.points += 1
        if any(poly.contains(p, closed=True) for poly in found):
            report.covered += 1
            continue
        try:
            outcome = run_orbit(p, lambda q: wedge_step(q, ia), budget)
        except OutsideDomainError:
            report.singular += 1
            continue
        if isinstance(outcome, HitSingular):
            report.singular += 1
            continue
        if not isinstance(outcome, Periodic):
            report.unresolved += 1
            continue
        polygon = component_from_point(p, ia, outcome.period)
        if polygon is None:
            report.singular += 1
            continue
        found.append(polygon)
        match = match_component(polygon, ia, rd)
        if match is None:
            logger.warning("no lift found for the component at %s", p)
            report.unmatched.append(p)
            continue
        report.matched += 1
        report.components.append((polygon, match))
    logger.info(
        "window sweep: %d points, %d components, %d unmatched",
        report.points,
        len(found),
        len(report.unmatched),
    )
    return report
