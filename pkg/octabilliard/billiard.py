"""
The outer billiard map T outside the regular octagon.

Each exterior point sees a contiguous run of table edges from outside. The
run ends at the edge before vertex ``A_j`` where ``j`` is the right tangent
vertex, and ``T`` reflects the point through ``A_j``. A zero sign at that
end of the run means the tangency is along an edge and ``T`` is undefined.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional, Tuple, Union

from statemachine import StateMachine
from statemachine.states import States

from .entities.geometry import (
    CANONICAL_OCTAGON,
    ORIGIN,
    AffineMap,
    HalfPlane,
    Point2,
    Polygon,
    line_intersection,
    reflect_point,
)
from .entities.orbit import (
    SINGULAR,
    BudgetExceeded,
    Direction,
    HitSingular,
    OrbitEvent,
    OrbitOutcome,
    OrbitState,
    Periodic,
    PointClass,
    StepResult,
)
from .utils.events import Events

logger = logging.getLogger(__name__)

TABLE_ORDER = 8


class OutsideTableError(ValueError):
    """Raised when a billiard point is inside or on the table."""


@dataclass(frozen=True)
class TableAtlas:
    """
    The table, its edge lines and the necklace of reflected tables.

    ``edge_planes[i]`` is the closed inner side of the line ``l_i`` through
    ``A_i`` and ``A_{i+1}``. ``necklace[i]`` is the table reflected through
    ``corner_points[i]``; ``region_z`` is the star polygon bounded by the
    inner sides of the necklace.
    """

    table: Polygon
    edge_lines: Tuple[Tuple[Point2, Point2], ...]
    edge_planes: Tuple[HalfPlane, ...]
    corner_points: Tuple[Point2, ...]
    necklace: Tuple[Polygon, ...]
    region_z: Polygon
    center: Point2 = ORIGIN

    @property
    def vertices(self) -> Tuple[Point2, ...]:
        return self.table.vertices

    def vertex(self, j: int) -> Point2:
        return self.table.vertices[j % TABLE_ORDER]

    def necklace_vertex(self, i: int, j: int) -> Point2:
        """``A^i_j``: vertex ``j`` of the necklace octagon ``i``."""
        return self.necklace[i % TABLE_ORDER].vertices[j % TABLE_ORDER]

    def necklace_center(self, i: int) -> Point2:
        c = self.corner_points[i % TABLE_ORDER]
        return Point2(c.x + c.x, c.y + c.y)

    def edge_signs(self, p: Point2) -> List[int]:
        return [plane.side(p) for plane in self.edge_planes]

    def is_exterior(self, p: Point2) -> bool:
        return any(s < 0 for s in self.edge_signs(p))

    def in_ring(self, p: Point2) -> bool:
        """Closed membership in Z minus the open table."""
        return self.is_exterior(p) and self.region_z.contains(p, closed=True)


def _necklace_z_cycle(necklace: Tuple[Polygon, ...]) -> Tuple[Point2, ...]:
    cycle: List[Point2] = []
    for i, octagon in enumerate(necklace):
        for offset in (2, 1, 0):
            cycle.append(octagon.vertices[(i + offset) % TABLE_ORDER])
    return tuple(cycle)


@lru_cache(maxsize=1)
def build_table_atlas() -> TableAtlas:
    """
    Construct the canonical table, its edge lines, the corner points
    ``C_i = l_{i-1} x l_{i+1}``, the necklace and the region Z.
    """
    table = Polygon(CANONICAL_OCTAGON)
    n = TABLE_ORDER
    edge_lines = tuple(
        (table.vertices[i], table.vertices[(i + 1) % n]) for i in range(n)
    )
    edge_planes = tuple(HalfPlane.left_of(p, q).normalized() for p, q in edge_lines)
    corner_points = tuple(
        line_intersection(*edge_lines[(i - 1) % n], *edge_lines[(i + 1) % n])
        for i in range(n)
    )
    necklace = tuple(
        table.transformed(AffineMap.point_reflection(c)) for c in corner_points
    )
    region_z = Polygon(_necklace_z_cycle(necklace), convex=False)
    logger.debug("built table atlas with area(Z) = %s", region_z.area())
    return TableAtlas(table, edge_lines, edge_planes, corner_points, necklace, region_z)


def tangent_vertex(
    p: Point2,
    atlas: TableAtlas,
    direction: Direction = Direction.FORWARD,
) -> Union[int, object]:
    """
    Index of the vertex ``p`` is reflected through, or ``SINGULAR``.

    Args:
        p: A point strictly outside the table
        atlas: The table atlas
        direction: ``FORWARD`` for the right tangent of ``T``, ``BACKWARD``
            for the left tangent of ``T^-1``

    Returns:
        The vertex index, or ``SINGULAR`` when ``p`` lies on an edge-line
        extension bounding its tangent cone

    Raises:
        OutsideTableError: If ``p`` is inside or on the table
    """
    signs = atlas.edge_signs(p)
    if all(s >= 0 for s in signs):
        raise OutsideTableError(f"{p} is not strictly outside the table")
    before_sign, after_sign = (-1, 1) if direction is Direction.FORWARD else (1, -1)
    for j in range(TABLE_ORDER):
        if signs[j - 1] == before_sign and signs[j] == after_sign:
            return j
    return SINGULAR


def cone_half_planes(
    j: int, atlas: TableAtlas, direction: Direction = Direction.FORWARD
) -> Tuple[HalfPlane, HalfPlane]:
    """Closed half-planes whose interiors make up the tangent cone of ``A_j``."""
    before = atlas.edge_planes[(j - 1) % TABLE_ORDER]
    after = atlas.edge_planes[j % TABLE_ORDER]
    if direction is Direction.FORWARD:
        return before.flipped(), after
    return before, after.flipped()


def reflection_branch(j: int, atlas: TableAtlas) -> AffineMap:
    return AffineMap.point_reflection(atlas.vertex(j))


def billiard_step(p: Point2, atlas: TableAtlas) -> StepResult:
    j = tangent_vertex(p, atlas)
    if j is SINGULAR:
        return SINGULAR
    return reflect_point(p, atlas.vertex(j))


def billiard_step_inv(p: Point2, atlas: TableAtlas) -> StepResult:
    j = tangent_vertex(p, atlas, Direction.BACKWARD)
    if j is SINGULAR:
        return SINGULAR
    return reflect_point(p, atlas.vertex(j))


def step_function(direction: Direction) -> Callable[[Point2, TableAtlas], StepResult]:
    return billiard_step if direction is Direction.FORWARD else billiard_step_inv


def map_polygon(
    polygon: Polygon, atlas: TableAtlas, direction: Direction = Direction.FORWARD
) -> Optional[Polygon]:
    """
    Image of a polygon lying in a single tangent cone, or ``None`` when the
    polygon straddles a cone boundary.

    The cone is chosen from an interior point; vertices may sit on the cone
    boundary, where the branch extends continuously.
    """
    j = tangent_vertex(polygon.vertex_centroid(), atlas, direction)
    if j is SINGULAR:
        return None
    planes = cone_half_planes(j, atlas, direction)
    if any(plane.side(v) < 0 for plane in planes for v in polygon.vertices):
        return None
    return polygon.transformed(reflection_branch(j, atlas))


class OrbitStateMachine(StateMachine):
    """
    Lifecycle of one orbit. Every iterate is fed to :meth:`advance`, which
    sends ``STEPPED`` while the orbit runs and a terminal event when it
    returns, hits a singular point or runs out of budget.
    """

    _states = States.from_enum(
        OrbitState,
        initial=OrbitState.RUNNING,
        final={OrbitState.PERIODIC, OrbitState.SINGULAR, OrbitState.BUDGET_EXCEEDED},
    )
    _events = Events.from_enum(OrbitEvent)

    _states.RUNNING.to(_states.RUNNING, event=_events.STEPPED)
    _states.RUNNING.to(_states.PERIODIC, event=_events.RETURNED)
    _states.RUNNING.to(_states.SINGULAR, event=_events.HIT_SINGULAR)
    _states.RUNNING.to(_states.BUDGET_EXCEEDED, event=_events.EXHAUSTED)

    def __init__(
        self, origin: Optional[Point2] = None, step_budget: Optional[int] = None, **kwargs
    ):
        super().__init__(**kwargs)
        self.origin = origin
        self.step_budget = step_budget
        self.step_count = 0
        self.iterate = origin

    def record(self, event: OrbitEvent) -> None:
        self.send(event.name)

    def advance(self, point: StepResult) -> OrbitState:
        """Feed the next iterate and return the resulting state."""
        self.step_count += 1
        if point is SINGULAR:
            self.record(OrbitEvent.HIT_SINGULAR)
        elif point == self.origin:
            self.iterate = point
            self.record(OrbitEvent.RETURNED)
        else:
            self.iterate = point
            if self.step_budget is not None and self.step_count >= self.step_budget:
                self.record(OrbitEvent.EXHAUSTED)
            else:
                self.record(OrbitEvent.STEPPED)
        return self.orbit_state

    @property
    def orbit_state(self) -> OrbitState:
        return OrbitState.__members__[self.current_state.name.upper().replace(" ", "_")]

    @property
    def outcome(self) -> OrbitOutcome:
        """
        Raises:
            RuntimeError: While the orbit is still running
        """
        state = self.orbit_state
        if state is OrbitState.PERIODIC:
            return Periodic(self.step_count)
        if state is OrbitState.SINGULAR:
            return HitSingular(self.step_count - 1)
        if state is OrbitState.BUDGET_EXCEEDED:
            return BudgetExceeded(self.step_budget)
        raise RuntimeError("the orbit is still running")


def run_orbit(
    start: Point2,
    step: Callable[[Point2], StepResult],
    budget: int,
    on_point: Optional[Callable[[Point2], None]] = None,
) -> OrbitOutcome:
    """
    Iterate ``step`` from ``start`` until the first exact return, a singular
    iterate or ``budget`` steps.

    Shared by the billiard map and the induced maps.
    """
    if budget <= 0:
        raise ValueError(f"orbit budget must be positive, got {budget}")
    machine = OrbitStateMachine(start, budget, allow_event_without_transition=False)
    while machine.advance(step(machine.iterate)) is OrbitState.RUNNING:
        if on_point is not None:
            on_point(machine.iterate)
        if machine.step_count % 100_000 == 0:
            logger.debug("orbit still running after %d steps", machine.step_count)
    if on_point is not None and machine.orbit_state is not OrbitState.SINGULAR:
        on_point(machine.iterate)
    logger.debug("orbit of %s ended %s", start, machine.orbit_state)
    return machine.outcome


def orbit(
    p: Point2,
    atlas: TableAtlas,
    budget: int,
    direction: Direction = Direction.FORWARD,
) -> OrbitOutcome:
    """
    Classify the orbit of ``p`` under ``T`` (or ``T^-1``).

    Args:
        p: Seed strictly outside the table
        atlas: The table atlas
        budget: Maximal number of steps
        direction: Iterate forward or backward in time

    Returns:
        ``Periodic`` at the first exact return, ``HitSingular`` with the index
        of the first undefined iterate, or ``BudgetExceeded``

    Raises:
        OutsideTableError: If ``p`` is inside or on the table
        ValueError: If ``budget`` is not positive
    """
    if not atlas.is_exterior(p):
        raise OutsideTableError(f"{p} is not strictly outside the table")
    step = step_function(direction)
    return run_orbit(p, lambda q: step(q, atlas), budget)


def trajectory(p: Point2, atlas: TableAtlas, steps: int) -> List[Point2]:
    """The first ``steps`` forward iterates of ``p``, stopping at a singular one."""
    points = [p]
    current = p
    for _ in range(steps):
        current = billiard_step(current, atlas)
        if current is SINGULAR or current == p:
            break
        points.append(current)
    return points


@dataclass(frozen=True)
class PointReport:
    kind: PointClass
    forward: OrbitOutcome
    backward: Optional[OrbitOutcome]


def classify_point(p: Point2, atlas: TableAtlas, budget: int) -> PointReport:
    """
    Two-sided classification: periodic, boundary (undefined in some time
    direction) or undetermined within ``budget``.
    """
    forward = orbit(p, atlas, budget)
    if isinstance(forward, Periodic):
        return PointReport(PointClass.PERIODIC, forward, None)
    if isinstance(forward, HitSingular):
        return PointReport(PointClass.BOUNDARY, forward, None)
    backward = orbit(p, atlas, budget, Direction.BACKWARD)
    if isinstance(backward, HitSingular):
        return PointReport(PointClass.BOUNDARY, forward, backward)
    return PointReport(PointClass.UNDETERMINED, forward, backward)


def necklace_image_index(i: int) -> int:
    return (i + 3) % TABLE_ORDER
