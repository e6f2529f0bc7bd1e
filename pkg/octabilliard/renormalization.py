"""
Self-similar structure of the induced map.

Removing the periodic octagon inscribed in PQRK splits OKLM into three
copies of itself scaled by ``lambda = sqrt2 - 1``; each copy is the image of
OKLM under a direct similarity fixing one of the tips O, K, M. Repeating
the split gives the census tree: a cell for every word over ``{0, 1, 2}``,
and in each cell one periodic octagon.
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Iterator, List, Optional, Set, Tuple

from .billiard import TableAtlas, orbit, run_orbit
from .entities.geometry import (
    AffineMap,
    Point2,
    Polygon,
    octagon_area,
    regular_octagon,
)
from .entities.orbit import Periodic
from .entities.qsqrt2 import ONE, SQRT2, QSqrt2
from .induced import InducedAtlas, t_prime
from .settings import CENSUS_DEPTH_CAP

logger = logging.getLogger(__name__)

ALPHABET = "012"
APERIODIC_ADDRESS = "1101"
# components bounding the cell of APERIODIC_ADDRESS, relative to its start
SPIRAL_OFFSETS = ("", "11", "110")


class CensusDepthError(ValueError):
    """Raised when a census is requested beyond the depth cap."""


class ComponentMeasurementError(RuntimeError):
    """Raised when a component's probe orbit is singular or too long."""


@dataclass(frozen=True)
class PeriodicComponent:
    level: int
    address: str
    center: Point2
    side: QSqrt2
    polygon: Polygon
    period: Optional[int] = None
    t_prime_period: Optional[int] = None

    def probe(self) -> Point2:
        """
        Off-centre point used for period measurement; the centre itself can
        have a proper divisor of the component's period.
        """
        return self.center + Point2(
            self.side * Fraction(1, 8), self.side * Fraction(1, 24)
        )

    def area(self) -> QSqrt2:
        return self.polygon.area()


@dataclass(frozen=True)
class RenormalizationData:
    """
    Exact renormalization data built on top of an :class:`InducedAtlas`.

    ``children[i]`` maps OKLM onto its ``i``-th sub-quadrilateral;
    ``gamma_map`` is the homothety at O carrying OKLM onto OK'L'M' and the
    necklace octagon onto the octagon inscribed in OPQ.
    """

    ia: InducedAtlas
    lam: QSqrt2
    h0: QSqrt2
    h_minus_1: QSqrt2
    level0: Polygon
    u1: Polygon
    children: Tuple[AffineMap, AffineMap, AffineMap]
    gamma_map: AffineMap
    quad_image: Polygon
    g_map: AffineMap
    h_map: AffineMap
    necklace_octagon: Polygon

    def h(self, level: int) -> QSqrt2:
        """Side ``h_n = h_0 * lambda^n`` of the level-``n`` octagons."""
        return self.h0 * self.lam**level

    def cell_similarity(self, address: str) -> AffineMap:
        return reduce(
            lambda acc, letter: acc.compose(self.children[int(letter)]),
            address,
            AffineMap.identity(),
        )

    def cell(self, address: str) -> Polygon:
        return self.ia.quad_oklm.transformed(self.cell_similarity(address))

    def component(self, address: str) -> PeriodicComponent:
        similarity = self.cell_similarity(address)
        center = similarity(self.ia.V)
        side = self.h(len(address))
        return PeriodicComponent(
            level=len(address),
            address=address,
            center=center,
            side=side,
            polygon=regular_octagon(center, side),
        )

    def in_region_y(self, p: Point2, closed: bool = False) -> bool:
        """Membership in ``Y = OKLM u gamma^2``."""
        return self.ia.quad_oklm.contains(p, closed) or self.necklace_octagon.contains(
            p, closed
        )


def _inscribed_octagon(center: Point2, tangent_x: QSqrt2) -> Polygon:
    """
    Regular octagon centred at ``center`` whose vertical side lies on the
    line ``x = tangent_x``; the apothem ``a`` gives side ``2a / (1 + sqrt2)``.
    """
    apothem = abs(tangent_x - center.x)
    return regular_octagon(center, apothem * 2 / (ONE + SQRT2))


def build_renormalization(ia: InducedAtlas) -> RenormalizationData:
    """
    Build the level-0 octagon, ``lambda``, the census children, ``Gamma``,
    the spiral contraction ``g`` and the translation ``H``.
    """
    atlas = ia.atlas
    necklace_octagon = atlas.necklace[2]
    h_minus_1 = _axis_side(necklace_octagon)
    level0 = _inscribed_octagon(ia.V, ia.O.x)
    u1 = _inscribed_octagon(ia.U, ia.O.x)
    h0 = _axis_side(level0)
    lam = h0 / h_minus_1
    children = (
        AffineMap.octant_similarity(0, lam, ia.O, ia.O),
        AffineMap.octant_similarity(3, lam, ia.O, ia.K),
        AffineMap.octant_similarity(-3, lam, ia.O, ia.M),
    )
    gamma_map = children[0].compose(children[0])
    g_map = reduce(
        lambda acc, letter: acc.compose(children[int(letter)]),
        APERIODIC_ADDRESS,
        AffineMap.identity(),
    )
    rd = RenormalizationData(
        ia=ia,
        lam=lam,
        h0=h0,
        h_minus_1=h_minus_1,
        level0=level0,
        u1=u1,
        children=children,
        gamma_map=gamma_map,
        quad_image=ia.quad_oklm.transformed(gamma_map),
        g_map=g_map,
        h_map=ia.h_map,
        necklace_octagon=necklace_octagon,
    )
    logger.info("renormalization built: lambda = %s, h0 = %s", lam, h0)
    return rd


def _axis_side(octagon: Polygon) -> QSqrt2:
    first, second = octagon.vertices[0], octagon.vertices[1]
    return abs(second.y - first.y) + abs(second.x - first.x)


def census_addresses(level: int) -> Iterator[str]:
    for letters in product(ALPHABET, repeat=level):
        yield "".join(letters)


def enumerate_components(
    depth: int, rd: RenormalizationData, depth_cap: int = CENSUS_DEPTH_CAP
) -> List[PeriodicComponent]:
    """
    All census components of level at most ``depth``, level by level.

    Raises:
        ValueError: If ``depth`` is negative
        CensusDepthError: If ``depth`` exceeds ``depth_cap``
    """
    if depth < 0:
        raise ValueError(f"census depth must be non-negative, got {depth}")
    if depth > depth_cap:
        raise CensusDepthError(f"census depth {depth} exceeds the cap {depth_cap}")
    components = [
        rd.component(address)
        for level in range(depth + 1)
        for address in census_addresses(level)
    ]
    logger.info("census to depth %d: %d components", depth, len(components))
    return components


def measure_component_period(
    comp: PeriodicComponent, atlas: TableAtlas, budget: int
) -> int:
    """
    Billiard period of the component, measured at its probe point.

    Raises:
        ComponentMeasurementError: If the probe orbit is singular or does not
            close within ``budget`` steps
    """
    outcome = orbit(comp.probe(), atlas, budget)
    if not isinstance(outcome, Periodic):
        raise ComponentMeasurementError(
            f"component {comp.address!r} did not close: {outcome}"
        )
    logger.debug("component %r has period %d", comp.address, outcome.period)
    return outcome.period


def measure_t_prime_period(
    comp: PeriodicComponent, ia: InducedAtlas, budget: int
) -> int:
    outcome = run_orbit(comp.probe(), lambda p: t_prime(p, ia), budget)
    if not isinstance(outcome, Periodic):
        raise ComponentMeasurementError(
            f"component {comp.address!r} did not close under T': {outcome}"
        )
    return outcome.period


def measure_census(
    components: List[PeriodicComponent],
    atlas: TableAtlas,
    ia: InducedAtlas,
    budget: int,
) -> List[PeriodicComponent]:
    """Copies of ``components`` with both periods filled in."""
    measured = []
    for comp in components:
        measured.append(
            replace(
                comp,
                period=measure_component_period(comp, atlas, budget),
                t_prime_period=measure_t_prime_period(comp, ia, budget),
            )
        )
    return measured


def transport_polygon(polygon: Polygon, ia: InducedAtlas) -> Optional[Polygon]:
    """
    Image of a polygon lying in the closure of a single piece of ``T'``, or
    ``None`` when it straddles a piece boundary.
    """
    piece = ia.piece_of(polygon.vertex_centroid())
    if piece is None:
        return None
    if not all(piece.polygon.contains(v, closed=True) for v in polygon.vertices):
        return None
    return polygon.transformed(piece.rotation)


def t_prime_invariant_steps(
    polygon: Polygon, ia: InducedAtlas, budget: int
) -> Optional[int]:
    """
    Number of polygon-wise ``T'`` steps after which the polygon is mapped
    onto itself, or ``None`` if it straddles a singular segment first.
    """
    current = polygon
    for n in range(1, budget + 1):
        image = transport_polygon(current, ia)
        if image is None:
            return None
        if image.same_shape(polygon):
            return n
        current = image
    return None


def period_families(n_max: int, k_max: int) -> Set[int]:
    """
    Union of the four closed-form period families of the octagon, for
    ``0 <= n <= n_max`` and ``2 <= k <= k_max``.
    """
    if n_max < 0 or k_max < 0:
        raise ValueError("family bounds must be non-negative")
    periods: Set[int] = {8}
    for n in range(n_max + 1):
        nine, minus_three = 9**n, (-3) ** n
        periods.update(
            {12 * nine - 4 * minus_three, 12 * nine + 4 * minus_three, 4 * nine}
        )
        for k in range(2, k_max + 1):
            periods.add(8 * k)
            periods.add(8 * k * nine)
            periods.add(24 * k * nine - 4 * minus_three + 12 * nine)
            periods.add(24 * k * nine + 4 * minus_three - 4 * nine)
    return periods


def aperiodic_point(rd: RenormalizationData) -> Point2:
    """Fixed point of the spiral contraction ``g``."""
    return rd.g_map.fixed_point()


def nested_quadrilaterals(rd: RenormalizationData, count: int) -> List[Polygon]:
    """``G_0 = g(OKLM)``, ``G_{i+1} = g(G_i)``."""
    quads = []
    current = rd.ia.quad_oklm
    for _ in range(count):
        current = current.transformed(rd.g_map)
        quads.append(current)
    return quads


def spiral_addresses(rounds: int) -> List[str]:
    """Addresses of the components ``C_0, C_1, ...`` bounding the cells ``G_i``."""
    return [
        APERIODIC_ADDRESS * i + offset
        for i in range(rounds)
        for offset in SPIRAL_OFFSETS
    ]


def residual_measure(k: int, rd: RenormalizationData) -> QSqrt2:
    """
    Area of OKLM not covered by census components of level at most ``k``.
    """
    if k < 0:
        raise ValueError(f"level must be non-negative, got {k}")
    covered = sum(
        (octagon_area(rd.h(level)) * 3**level for level in range(k + 1)),
        QSqrt2(0),
    )
    return rd.ia.quad_oklm.area() - covered


def residual_ratio(rd: RenormalizationData) -> QSqrt2:
    """``3 lambda^2``, the shrink factor of the uncovered area per level."""
    return rd.lam * rd.lam * 3
