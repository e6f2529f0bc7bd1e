"""
Quotient dynamics on the fundamental region.

The exterior of the table is folded by its 8-fold rotation onto the wedge
at ``O = A_1`` between the rays ``OK`` and ``OM`` (points whose left tangent
vertex is ``A_1``). On the invariant quadrilateral ``OKLM`` inside the wedge
the folded map ``T'`` is a rotation on each of three pieces.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Protocol, Tuple

from .billiard import (
    TABLE_ORDER,
    TableAtlas,
    billiard_step,
    billiard_step_inv,
    tangent_vertex,
)
from .entities.geometry import (
    AffineMap,
    HalfPlane,
    Location,
    Point2,
    Polygon,
    angle_bisector,
    line_intersection,
    perpendicular_bisector,
    rotate_octant,
)
from .entities.orbit import (
    SINGULAR,
    BudgetExceeded,
    Direction,
    HitSingular,
    ReturnOutcome,
    ReturnRecord,
    StepResult,
)
from .settings import FIRST_RETURN_PREFIX_CAP

logger = logging.getLogger(__name__)

RegionPredicate = Callable[[Point2], bool]
StepMap = Callable[[Point2], StepResult]


class OutsideDomainError(ValueError):
    """Raised when an induced-map input lies outside the map's domain."""


@dataclass(frozen=True)
class Piece:
    """One continuity piece of ``T'`` on OKLM and the rotation acting on it."""

    name: str
    polygon: Polygon
    center: Point2
    octant: int
    rotation: AffineMap


@dataclass(frozen=True)
class InducedAtlas:
    atlas: TableAtlas
    quad_oklm: Polygon
    pieces: Tuple[Piece, Piece, Piece]
    O: Point2
    K: Point2
    L: Point2
    M: Point2
    P: Point2
    Q: Point2
    R: Point2
    S: Point2
    U: Point2
    V: Point2
    W: Point2
    wedge_planes: Tuple[HalfPlane, HalfPlane]
    h_map: AffineMap
    sector_planes: Tuple[HalfPlane, HalfPlane]
    singular_segments: Tuple[Tuple[Point2, Point2], ...] = field(default=())

    def named_points(self) -> dict[str, Point2]:
        return {
            name: getattr(self, name)
            for name in ("O", "K", "L", "M", "P", "Q", "R", "S", "U", "V", "W")
        }

    def in_wedge(self, p: Point2) -> bool:
        """Open wedge angle KOM."""
        return all(plane.side(p) > 0 for plane in self.wedge_planes)

    def in_sector(self, p: Point2) -> bool:
        """Open sector at ``A^2_1``, the domain of ``T_4``."""
        return all(plane.side(p) > 0 for plane in self.sector_planes)

    def in_quad(self, p: Point2) -> bool:
        return self.quad_oklm.contains(p)

    def piece_of(self, p: Point2) -> Optional[Piece]:
        for piece in self.pieces:
            if piece.polygon.contains(p):
                return piece
        return None


def _wedge_planes(atlas: TableAtlas) -> Tuple[HalfPlane, HalfPlane]:
    # inside l_0, outside l_1
    return atlas.edge_planes[0], atlas.edge_planes[1].flipped()


def build_induced_atlas(atlas: TableAtlas) -> InducedAtlas:
    """
    Name the points of the fundamental region and build the three pieces of
    ``T'`` with their rotation centres.

    ``U``, ``V`` and ``W`` are found as intersections of bisectors, and each
    piece rotation is the rotation about that centre by ``3pi/4``, ``pi/2``
    and ``pi/4`` respectively.
    """
    O = atlas.vertex(1)
    K = atlas.necklace_vertex(2, 4)
    L = atlas.necklace_vertex(2, 3)
    M = atlas.necklace_vertex(2, 2)
    R = atlas.corner_points[2]
    Q = atlas.vertex(2)
    P = line_intersection(O, K, atlas.vertex(3), atlas.vertex(2))
    # R, M and O all lie on l_1, so the line RM meets OK at O
    S = line_intersection(O, K, R, M)
    bisector_kom = angle_bisector(O, K, M)
    U = line_intersection(*bisector_kom, *perpendicular_bisector(O, Q))
    V = line_intersection(*bisector_kom, *angle_bisector(R, L, Q))
    W = line_intersection(*bisector_kom, *perpendicular_bisector(L, M))

    quad = Polygon.counterclockwise((O, K, L, M), convex=False)
    pieces = (
        _piece("W1", (O, P, Q), U, 3),
        _piece("W2", (P, K, R, Q), V, 2),
        _piece("W3", (L, M, R), W, 1),
    )
    wedge = _wedge_planes(atlas)
    h_map = AffineMap.translation(atlas.necklace_vertex(2, 1) - O)
    apex = atlas.necklace_vertex(2, 1)
    sector = (
        HalfPlane.left_of(apex, atlas.necklace_vertex(2, 0)).normalized(),
        HalfPlane.left_of(apex, atlas.necklace_vertex(3, 6)).normalized().flipped(),
    )
    ia = InducedAtlas(
        atlas=atlas,
        quad_oklm=quad,
        pieces=pieces,
        O=O,
        K=K,
        L=L,
        M=M,
        P=P,
        Q=Q,
        R=R,
        S=S,
        U=U,
        V=V,
        W=W,
        wedge_planes=wedge,
        h_map=h_map,
        sector_planes=sector,
        singular_segments=((P, Q), (K, R)),
    )
    logger.debug("induced atlas: U=%s V=%s W=%s", U, V, W)
    return ia


def _piece(name: str, points, center: Point2, octant: int) -> Piece:
    return Piece(
        name=name,
        polygon=Polygon.counterclockwise(points),
        center=center,
        octant=octant,
        rotation=AffineMap.rotation_octant(octant, center),
    )


def t_prime(x: Point2, ia: InducedAtlas) -> StepResult:
    """
    The induced map on closure(OKLM).

    Points outside every open piece (the segments PQ and KR and the outer
    boundary) are singular.

    Raises:
        OutsideDomainError: If ``x`` is outside closure(OKLM)
    """
    if not ia.quad_oklm.contains(x, closed=True):
        raise OutsideDomainError(f"{x} is outside OKLM")
    piece = ia.piece_of(x)
    if piece is None:
        return SINGULAR
    return piece.rotation(x)


def _fold(z: Point2, atlas: TableAtlas) -> StepResult:
    """Rotate ``z`` about the table centre into the wedge."""
    j = tangent_vertex(z, atlas, Direction.BACKWARD)
    if j is SINGULAR:
        return SINGULAR
    return rotate_octant(z, atlas.center, 1 - j)


def t_prime_oracle(x: Point2, atlas: TableAtlas, ia: InducedAtlas) -> StepResult:
    """
    ``T'`` computed from ``T``: step once, then apply the unique rotation by
    a multiple of pi/4 that brings the image back into closure(OKLM).
    Boundary landings are singular.
    """
    if not ia.quad_oklm.contains(x):
        raise OutsideDomainError(f"{x} is not interior to OKLM")
    y = billiard_step(x, atlas)
    if y is SINGULAR:
        return SINGULAR
    for k in range(TABLE_ORDER):
        candidate = rotate_octant(y, atlas.center, k)
        location = ia.quad_oklm.locate(candidate)
        if location is Location.INTERIOR:
            return candidate
        if location is Location.BOUNDARY:
            return SINGULAR
    raise AssertionError(f"no rotation of T({x}) lands in OKLM")


def wedge_step(x: Point2, ia: InducedAtlas) -> StepResult:
    """``T'`` on the whole wedge: step with ``T`` and fold back."""
    if not ia.in_wedge(x):
        raise OutsideDomainError(f"{x} is outside the wedge")
    y = billiard_step(x, ia.atlas)
    if y is SINGULAR:
        return SINGULAR
    return _fold(y, ia.atlas)


def t_prime_inverse(y: Point2, ia: InducedAtlas) -> StepResult:
    """Inverse of :func:`wedge_step`."""
    if not ia.in_wedge(y):
        raise OutsideDomainError(f"{y} is outside the wedge")
    z = billiard_step_inv(y, ia.atlas)
    if z is SINGULAR:
        return SINGULAR
    return _fold(z, ia.atlas)


def wedge_branch(x: Point2, ia: InducedAtlas) -> Optional[Tuple[int, AffineMap]]:
    """
    Tangent vertex ``j`` of a wedge point and the affine branch
    ``x -> R_(5-j) x + 2 A_1`` of ``T'`` acting near it.
    """
    j = tangent_vertex(x, ia.atlas)
    if j is SINGULAR:
        return None
    return j, wedge_branch_map(j, ia)


def wedge_branch_map(j: int, ia: InducedAtlas) -> AffineMap:
    atlas = ia.atlas
    reflection = AffineMap.point_reflection(atlas.vertex(j))
    return AffineMap.rotation_octant(1 - j, atlas.center).compose(reflection)


def inverse_branch_map(x: Point2, ia: InducedAtlas) -> Optional[AffineMap]:
    """The affine branch of ``T'^-1`` acting near ``x``."""
    preimage = t_prime_inverse(x, ia)
    if preimage is SINGULAR:
        return None
    k = tangent_vertex(preimage, ia.atlas)
    if k is SINGULAR:
        return None
    return wedge_branch_map(k, ia).inverse()


def first_return(
    step: StepMap,
    target: RegionPredicate,
    x: Point2,
    budget: int,
    strict: bool = True,
    prefix_cap: int = FIRST_RETURN_PREFIX_CAP,
) -> ReturnOutcome:
    """
    Iterate ``step`` from ``x`` until an iterate lies in ``target``.

    Args:
        step: The piecewise map, returning ``SINGULAR`` where undefined
        target: Open region predicate
        x: Start point
        budget: Maximal number of steps
        strict: Require ``x`` itself to lie in ``target`` (first return);
            with ``False`` this is a first entry time
        prefix_cap: Number of intermediate iterates retained

    Returns:
        ``ReturnRecord``, ``HitSingular`` or ``BudgetExceeded``
    """
    if budget <= 0:
        raise ValueError(f"first-return budget must be positive, got {budget}")
    if strict and not target(x):
        raise OutsideDomainError(f"{x} is not in the target region")
    prefix: List[Point2] = []
    current = x
    for n in range(1, budget + 1):
        current = step(current)
        if current is SINGULAR:
            return HitSingular(n - 1)
        if target(current):
            return ReturnRecord(current, n, tuple(prefix))
        if len(prefix) < prefix_cap:
            prefix.append(current)
    return BudgetExceeded(budget)


def is_minimal_return(record: ReturnRecord, target: RegionPredicate) -> bool:
    """No retained intermediate iterate lies in the target."""
    return not any(target(p) for p in record.prefix)


def t4(x: Point2, ia: InducedAtlas, budget: int) -> ReturnOutcome:
    """First return of the wedge map to the sector ``A^2_0 A^2_1 A^3_6``."""
    return first_return(lambda p: wedge_step(p, ia), ia.in_sector, x, budget)


class Renormalizer(Protocol):
    gamma_map: AffineMap
    quad_image: Polygon


def t_double_prime(
    x: Point2, ia: InducedAtlas, ren: Renormalizer, budget: int
) -> ReturnOutcome:
    """First return of ``T'`` to the interior of OK'L'M'."""
    return first_return(lambda p: t_prime(p, ia), ren.quad_image.contains, x, budget)


@dataclass(frozen=True)
class ConjugacyFailure:
    x: Point2
    lhs: object
    rhs: object


@dataclass(frozen=True)
class ConjugacyReport:
    name: str
    samples: int
    failures: Tuple[ConjugacyFailure, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def _compare(
    x: Point2, lhs: StepResult, rhs: ReturnOutcome, target: RegionPredicate
) -> Optional[ConjugacyFailure]:
    if lhs is SINGULAR:
        if isinstance(rhs, HitSingular):
            return None
        return ConjugacyFailure(x, lhs, rhs)
    if (
        isinstance(rhs, ReturnRecord)
        and rhs.image == lhs
        and is_minimal_return(rhs, target)
    ):
        return None
    return ConjugacyFailure(x, lhs, rhs)


def conjugacy_check_gamma(
    samples: List[Point2], ia: InducedAtlas, ren: Renormalizer, budget: int
) -> ConjugacyReport:
    """
    Check ``Gamma(T'(x)) = T''(Gamma(x))`` and that both sides are defined
    together, for every sample of int(OKLM).
    """
    gamma = ren.gamma_map
    failures = []
    for x in samples:
        image = t_prime(x, ia)
        lhs = SINGULAR if image is SINGULAR else gamma(image)
        rhs = t_double_prime(gamma(x), ia, ren, budget)
        failure = _compare(x, lhs, rhs, ren.quad_image.contains)
        if failure is not None:
            logger.info("gamma conjugacy fails at %s", x)
            failures.append(failure)
    return ConjugacyReport("gamma_conjugacy", len(samples), tuple(failures))


def conjugacy_check_h(
    samples: List[Point2], ia: InducedAtlas, budget: int
) -> ConjugacyReport:
    """Check ``H(T'(x)) = T_4(H(x))`` on samples of int(OKLM)."""
    h = ia.h_map
    failures = []
    for x in samples:
        image = t_prime(x, ia)
        lhs = SINGULAR if image is SINGULAR else h(image)
        rhs = t4(h(x), ia, budget)
        failure = _compare(x, lhs, rhs, ia.in_sector)
        if failure is not None:
            logger.info("H conjugacy fails at %s", x)
            failures.append(failure)
    return ConjugacyReport("h_conjugacy", len(samples), tuple(failures))
