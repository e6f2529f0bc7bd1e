"""
Exact planar primitives over Q(sqrt2): points, affine maps, half-planes and
polygons, plus the predicates every dynamical decision is built on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .qsqrt2 import HALF_SQRT2, ONE, SQRT2, ZERO, QSqrt2, Rational


class DegenerateGeometryError(ValueError):
    """Raised for parallel lines, singular systems and invalid polygons."""


class Location(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


def _q(value: QSqrt2 | Rational) -> QSqrt2:
    return QSqrt2.coerce(value)


@dataclass(frozen=True)
class Point2:
    x: QSqrt2
    y: QSqrt2

    @classmethod
    def of(cls, x: QSqrt2 | Rational, y: QSqrt2 | Rational) -> "Point2":
        return cls(_q(x), _q(y))

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Point2":
        return Point2(-self.x, -self.y)

    def scale(self, factor: QSqrt2 | Rational) -> "Point2":
        return Point2(self.x * factor, self.y * factor)

    def cross(self, other: "Point2") -> QSqrt2:
        return self.x * other.y - self.y * other.x

    def dot(self, other: "Point2") -> QSqrt2:
        return self.x * other.x + self.y * other.y

    def to_floats(self) -> Tuple[float, float]:
        return self.x.to_float(), self.y.to_float()

    def __repr__(self) -> str:
        return f"Point2({self.x}, {self.y})"


ORIGIN = Point2(ZERO, ZERO)

# (cos, sin) of k*pi/4, k = 0..7
_OCTANT_TRIG: Tuple[Tuple[QSqrt2, QSqrt2], ...] = (
    (ONE, ZERO),
    (HALF_SQRT2, HALF_SQRT2),
    (ZERO, ONE),
    (-HALF_SQRT2, HALF_SQRT2),
    (-ONE, ZERO),
    (-HALF_SQRT2, -HALF_SQRT2),
    (ZERO, -ONE),
    (HALF_SQRT2, -HALF_SQRT2),
)


def octant_trig(k: int) -> Tuple[QSqrt2, QSqrt2]:
    return _OCTANT_TRIG[k % 8]


@dataclass(frozen=True)
class AffineMap:
    """
    The map ``x -> M x + t`` with exact matrix ``M`` and translation ``t``.

    Point reflections, rotations by multiples of pi/4, homotheties and the
    census similarities are all instances of this one class.
    """

    m00: QSqrt2
    m01: QSqrt2
    m10: QSqrt2
    m11: QSqrt2
    t0: QSqrt2 = ZERO
    t1: QSqrt2 = ZERO

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(ONE, ZERO, ZERO, ONE)

    @classmethod
    def translation(cls, vector: Point2) -> "AffineMap":
        return cls(ONE, ZERO, ZERO, ONE, vector.x, vector.y)

    @classmethod
    def rotation_octant(cls, k: int, center: Point2 = ORIGIN) -> "AffineMap":
        """Rotation by ``k*pi/4`` about ``center``."""
        return cls.octant_similarity(k, ONE, center, center)

    @classmethod
    def point_reflection(cls, center: Point2) -> "AffineMap":
        return cls(-ONE, ZERO, ZERO, -ONE, center.x + center.x, center.y + center.y)

    @classmethod
    def homothety(cls, center: Point2, ratio: QSqrt2 | Rational) -> "AffineMap":
        return cls.octant_similarity(0, ratio, center, center)

    @classmethod
    def octant_similarity(
        cls,
        k: int,
        ratio: QSqrt2 | Rational,
        source: Point2,
        target: Point2,
    ) -> "AffineMap":
        """The direct similarity ``x -> target + ratio * R_k (x - source)``."""
        cos, sin = octant_trig(k)
        ratio = _q(ratio)
        m00, m01, m10, m11 = ratio * cos, -(ratio * sin), ratio * sin, ratio * cos
        t0 = target.x - (m00 * source.x + m01 * source.y)
        t1 = target.y - (m10 * source.x + m11 * source.y)
        return cls(m00, m01, m10, m11, t0, t1)

    def apply(self, p: Point2) -> Point2:
        return Point2(
            self.m00 * p.x + self.m01 * p.y + self.t0,
            self.m10 * p.x + self.m11 * p.y + self.t1,
        )

    __call__ = apply

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """Return ``self o inner`` (apply ``inner`` first)."""
        return AffineMap(
            self.m00 * inner.m00 + self.m01 * inner.m10,
            self.m00 * inner.m01 + self.m01 * inner.m11,
            self.m10 * inner.m00 + self.m11 * inner.m10,
            self.m10 * inner.m01 + self.m11 * inner.m11,
            self.m00 * inner.t0 + self.m01 * inner.t1 + self.t0,
            self.m10 * inner.t0 + self.m11 * inner.t1 + self.t1,
        )

    def power(self, exponent: int) -> "AffineMap":
        if exponent < 0:
            return self.inverse().power(-exponent)
        result = AffineMap.identity()
        for _ in range(exponent):
            result = self.compose(result)
        return result

    @property
    def determinant(self) -> QSqrt2:
        return self.m00 * self.m11 - self.m01 * self.m10

    def inverse(self) -> "AffineMap":
        det = self.determinant
        if det.is_zero():
            raise DegenerateGeometryError("affine map is not invertible")
        i00, i01 = self.m11 / det, -self.m01 / det
        i10, i11 = -self.m10 / det, self.m00 / det
        return AffineMap(
            i00,
            i01,
            i10,
            i11,
            -(i00 * self.t0 + i01 * self.t1),
            -(i10 * self.t0 + i11 * self.t1),
        )

    def fixed_point(self) -> Point2:
        """Solve ``(I - M) x = t`` exactly."""
        a00, a01 = ONE - self.m00, -self.m01
        a10, a11 = -self.m10, ONE - self.m11
        det = a00 * a11 - a01 * a10
        if det.is_zero():
            raise DegenerateGeometryError("map has no unique fixed point")
        return Point2(
            (self.t0 * a11 - a01 * self.t1) / det,
            (a00 * self.t1 - a10 * self.t0) / det,
        )

    def is_isometry(self) -> bool:
        """Orthogonal matrix check: unit, perpendicular columns."""
        return (
            self.m00 * self.m00 + self.m10 * self.m10 == ONE
            and self.m01 * self.m01 + self.m11 * self.m11 == ONE
            and (self.m00 * self.m01 + self.m10 * self.m11).is_zero()
        )

    def is_similarity(self) -> bool:
        """Direct similarity: ``M = [[p, -q], [q, p]]`` with ``M != 0``."""
        return (
            self.m00 == self.m11
            and self.m01 == -self.m10
            and not (self.m00.is_zero() and self.m10.is_zero())
        )

    def similarity_ratio(self) -> QSqrt2:
        """
        Scale factor of a direct similarity whose rotation angle is a
        multiple of pi/4 (the only ones the engine builds).
        """
        if not self.is_similarity():
            raise DegenerateGeometryError("map is not a direct similarity")
        p, q = abs(self.m00), abs(self.m10)
        if q.is_zero():
            return p
        if p.is_zero():
            return q
        if p == q:
            return p * SQRT2
        raise DegenerateGeometryError("rotation angle is not a multiple of pi/4")

    def rotation_octant_index(self) -> int:
        """The ``k`` with ``M = ratio * R_k``."""
        ratio = self.similarity_ratio()
        for k in range(8):
            cos, sin = octant_trig(k)
            if self.m00 == ratio * cos and self.m10 == ratio * sin:
                return k
        raise DegenerateGeometryError("rotation angle is not a multiple of pi/4")

    def is_identity(self) -> bool:
        return self == AffineMap.identity()


def affine_compose(f: AffineMap, g: AffineMap) -> AffineMap:
    return f.compose(g)


def affine_apply(f: AffineMap, p: Point2) -> Point2:
    return f.apply(p)


def affine_fixed_point(f: AffineMap) -> Point2:
    return f.fixed_point()


def orientation(p: Point2, q: Point2, r: Point2) -> int:
    """Exact sign of ``(q - p) x (r - p)``."""
    return ((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)).sign()


def rotate_octant(p: Point2, center: Point2, k: int) -> Point2:
    cos, sin = octant_trig(k)
    dx, dy = p.x - center.x, p.y - center.y
    return Point2(center.x + cos * dx - sin * dy, center.y + sin * dx + cos * dy)


def reflect_point(p: Point2, c: Point2) -> Point2:
    return Point2(c.x + c.x - p.x, c.y + c.y - p.y)


def midpoint(p: Point2, q: Point2) -> Point2:
    half = Fraction(1, 2)
    return Point2((p.x + q.x) * half, (p.y + q.y) * half)


def line_intersection(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> Point2:
    """Intersection of line ``p1 p2`` with line ``q1 q2``."""
    d1 = p2 - p1
    d2 = q2 - q1
    denominator = d1.cross(d2)
    if denominator.is_zero():
        raise DegenerateGeometryError("lines are parallel")
    t = (q1 - p1).cross(d2) / denominator
    return p1 + d1.scale(t)


def on_segment(p: Point2, a: Point2, b: Point2) -> bool:
    """Closed-segment membership."""
    if orientation(a, b, p) != 0:
        return False
    return (p - a).dot(p - b).sign() <= 0


def segments_cross(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool:
    """Proper crossing: the segments meet in one point interior to both."""
    return (
        orientation(p1, p2, q1) * orientation(p1, p2, q2) < 0
        and orientation(q1, q2, p1) * orientation(q1, q2, p2) < 0
    )


def perpendicular_bisector(p: Point2, q: Point2) -> Tuple[Point2, Point2]:
    """Two points spanning the perpendicular bisector of ``pq``."""
    m = midpoint(p, q)
    d = q - p
    return m, Point2(m.x - d.y, m.y + d.x)


def angle_bisector(vertex: Point2, ray1: Point2, ray2: Point2) -> Tuple[Point2, Point2]:
    """
    Two points spanning the bisector of the angle at ``vertex`` between the
    rays through ``ray1`` and ``ray2``.

    Direction lengths are normalised exactly by noticing that every
    direction the engine bisects is axis-parallel or diagonal.
    """
    u = _unit_octant_direction(ray1 - vertex)
    v = _unit_octant_direction(ray2 - vertex)
    return vertex, vertex + u + v


def _unit_octant_direction(d: Point2) -> Point2:
    if d.x.is_zero() or d.y.is_zero():
        length = abs(d.x) + abs(d.y)
    elif abs(d.x) == abs(d.y):
        length = abs(d.x) * SQRT2
    else:
        raise DegenerateGeometryError("direction is not a multiple of pi/4")
    return d.scale(ONE / length)


_MINUS_ONE = -ONE


def _times(coefficient: QSqrt2, value: QSqrt2) -> QSqrt2:
    # table edge normals are mostly 0 and +-1 after normalisation
    if coefficient.is_zero():
        return ZERO
    if coefficient == ONE:
        return value
    if coefficient == _MINUS_ONE:
        return -value
    return coefficient * value


@dataclass(frozen=True)
class HalfPlane:
    """The closed set ``{p : a*x + b*y + c >= 0}``."""

    a: QSqrt2
    b: QSqrt2
    c: QSqrt2

    @classmethod
    def left_of(cls, p: Point2, q: Point2) -> "HalfPlane":
        """Points ``r`` with ``orientation(p, q, r) >= 0``."""
        d = q - p
        return cls(-d.y, d.x, d.y * p.x - d.x * p.y)

    def normalized(self) -> "HalfPlane":
        """Same half-plane scaled so the leading nonzero coefficient is +-1."""
        lead = self.a if not self.a.is_zero() else self.b
        if lead.is_zero():
            raise DegenerateGeometryError("half-plane has a zero normal")
        scale = ONE / abs(lead)
        return HalfPlane(self.a * scale, self.b * scale, self.c * scale)

    def flipped(self) -> "HalfPlane":
        """The closure of the complement."""
        return HalfPlane(-self.a, -self.b, -self.c)

    def value(self, p: Point2) -> QSqrt2:
        return _times(self.a, p.x) + _times(self.b, p.y) + self.c

    def side(self, p: Point2) -> int:
        return self.value(p).sign()

    def pullback(self, f: AffineMap) -> "HalfPlane":
        """The half-plane ``{y : f(y) in self}``."""
        return HalfPlane(
            self.a * f.m00 + self.b * f.m10,
            self.a * f.m01 + self.b * f.m11,
            self.a * f.t0 + self.b * f.t1 + self.c,
        )


def clip_convex(vertices: Sequence[Point2], plane: HalfPlane) -> List[Point2]:
    """
    Sutherland-Hodgman clip of a convex vertex cycle by one closed
    half-plane. Returns fewer than three vertices when the result has no
    interior.
    """
    result: List[Point2] = []
    n = len(vertices)
    for i in range(n):
        current = vertices[i]
        following = vertices[(i + 1) % n]
        vc = plane.value(current)
        vf = plane.value(following)
        sc, sf = vc.sign(), vf.sign()
        if sc >= 0:
            result.append(current)
        if sc * sf < 0:
            t = vc / (vc - vf)
            result.append(current + (following - current).scale(t))
    return _simplify_cycle(result)


def _simplify_cycle(vertices: List[Point2]) -> List[Point2]:
    cycle: List[Point2] = []
    for p in vertices:
        if not cycle or cycle[-1] != p:
            cycle.append(p)
    while len(cycle) > 1 and cycle[0] == cycle[-1]:
        cycle.pop()
    changed = True
    while changed and len(cycle) >= 3:
        changed = False
        for i in range(len(cycle)):
            prev_p = cycle[i - 1]
            next_p = cycle[(i + 1) % len(cycle)]
            if orientation(prev_p, cycle[i], next_p) == 0:
                del cycle[i]
                changed = True
                break
    return cycle if len(cycle) >= 3 else []


@dataclass(frozen=True)
class Polygon:
    """
    A simple polygon given by its counterclockwise vertex cycle.

    With ``convex=True`` (the default) every consecutive vertex triple must
    turn left. Non-convex polygons (the region Z, the dart OKLM) only need
    positive area.
    """

    vertices: Tuple[Point2, ...]
    convex: bool = True
    _edges: Tuple[HalfPlane, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        n = len(self.vertices)
        if n < 3:
            raise DegenerateGeometryError("a polygon needs at least 3 vertices")
        if len(set(self.vertices)) != n:
            raise DegenerateGeometryError("polygon has repeated vertices")
        if self.convex:
            for i in range(n):
                turn = orientation(
                    self.vertices[i - 1], self.vertices[i], self.vertices[(i + 1) % n]
                )
                if turn != 1:
                    raise DegenerateGeometryError(
                        "vertex cycle is not strictly convex and counterclockwise"
                    )
        elif self.area().sign() <= 0:
            raise DegenerateGeometryError("vertex cycle is not counterclockwise")
        object.__setattr__(
            self,
            "_edges",
            tuple(
                HalfPlane.left_of(
                    self.vertices[i], self.vertices[(i + 1) % n]
                ).normalized()
                for i in range(n)
            ),
        )

    @classmethod
    def of(cls, points: Iterable[Point2], convex: bool = True) -> "Polygon":
        return cls(tuple(points), convex)

    @classmethod
    def counterclockwise(cls, points: Iterable[Point2], convex: bool = True) -> "Polygon":
        """Build from a vertex cycle given in either orientation."""
        cycle = list(points)
        total = ZERO
        for i in range(len(cycle)):
            total = total + cycle[i].cross(cycle[(i + 1) % len(cycle)])
        if total.sign() < 0:
            cycle.reverse()
        return cls(tuple(cycle), convex)

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> List[Tuple[Point2, Point2]]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def half_planes(self) -> Tuple[HalfPlane, ...]:
        return self._edges

    def area(self) -> QSqrt2:
        total = ZERO
        n = len(self.vertices)
        for i in range(n):
            total = total + self.vertices[i].cross(self.vertices[(i + 1) % n])
        return total * Fraction(1, 2)

    def vertex_centroid(self) -> Point2:
        """Average of the vertices; an interior point for convex polygons."""
        n = len(self.vertices)
        sx, sy = ZERO, ZERO
        for p in self.vertices:
            sx, sy = sx + p.x, sy + p.y
        return Point2(sx * Fraction(1, n), sy * Fraction(1, n))

    def locate(self, p: Point2) -> Location:
        if self.convex:
            on_edge = False
            for plane in self._edges:
                s = plane.side(p)
                if s < 0:
                    return Location.EXTERIOR
                if s == 0:
                    on_edge = True
            return Location.BOUNDARY if on_edge else Location.INTERIOR
        return self._locate_simple(p)

    def _locate_simple(self, p: Point2) -> Location:
        winding = 0
        for u, v in self.edges():
            if on_segment(p, u, v):
                return Location.BOUNDARY
            if u.y <= p.y:
                if v.y > p.y and orientation(u, v, p) > 0:
                    winding += 1
            elif v.y <= p.y and orientation(u, v, p) < 0:
                winding -= 1
        return Location.INTERIOR if winding else Location.EXTERIOR

    def contains(self, p: Point2, closed: bool = False) -> bool:
        location = self.locate(p)
        if closed:
            return location is not Location.EXTERIOR
        return location is Location.INTERIOR

    def contains_polygon(self, other: "Polygon") -> bool:
        """
        Closed containment of a convex polygon in this one.

        For a non-convex container every edge of ``other`` is also cut at the
        container vertices lying on it; it must cross no container edge and
        each cut piece must have its midpoint inside.
        """
        if not all(self.contains(p, closed=True) for p in other.vertices):
            return False
        if not self.contains(other.vertex_centroid(), closed=True):
            return False
        if self.convex:
            return True
        for u, w in other.edges():
            if any(segments_cross(u, w, a, b) for a, b in self.edges()):
                return False
            cuts = sorted(
                (v for v in self.vertices if on_segment(v, u, w) and v not in (u, w)),
                key=lambda v: (v - u).dot(w - u),
            )
            stops = [u, *cuts, w]
            for p, q in zip(stops, stops[1:]):
                if not self.contains(midpoint(p, q), closed=True):
                    return False
        return True

    def transformed(self, f: AffineMap) -> "Polygon":
        if f.determinant.sign() <= 0:
            raise DegenerateGeometryError("only orientation-preserving maps keep the cycle")
        return Polygon(tuple(f.apply(p) for p in self.vertices), self.convex)

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def same_shape(self, other: "Polygon") -> bool:
        return self.vertex_set() == other.vertex_set()

    def interiors_disjoint(self, other: "Polygon") -> bool:
        """Exact separating-axis test for two convex polygons."""
        if not (self.convex and other.convex):
            raise DegenerateGeometryError("separation test needs convex polygons")
        for plane in self._edges + other._edges:
            flipped = HalfPlane(-plane.a, -plane.b, -plane.c)
            owner_inside = self if plane in self._edges else other
            other_poly = other if owner_inside is self else self
            if all(flipped.side(p) >= 0 for p in other_poly.vertices):
                return True
        return False

    def to_floats(self) -> List[Tuple[float, float]]:
        return [p.to_floats() for p in self.vertices]


def locate_point(p: Point2, poly: Polygon) -> Location:
    return poly.locate(p)


def polygon_area(poly: Polygon) -> QSqrt2:
    return poly.area()


# Vertices of the canonical table: side 2, A_0 = (1+sqrt2, -1), counterclockwise.
_R = ONE + SQRT2
CANONICAL_OCTAGON: Tuple[Point2, ...] = (
    Point2(_R, -ONE),
    Point2(_R, ONE),
    Point2(ONE, _R),
    Point2(-ONE, _R),
    Point2(-_R, ONE),
    Point2(-_R, -ONE),
    Point2(-ONE, -_R),
    Point2(ONE, -_R),
)


def regular_octagon(center: Point2, side: QSqrt2 | Rational) -> Polygon:
    """Regular octagon of the given side with sides parallel to the table's."""
    half = _q(side) * Fraction(1, 2)
    return Polygon(tuple(center + v.scale(half) for v in CANONICAL_OCTAGON))


def octagon_area(side: QSqrt2 | Rational) -> QSqrt2:
    """``2 (1 + sqrt2) s^2``."""
    s = _q(side)
    return (ONE + SQRT2) * s * s * 2


def clip_polygon(polygon: Polygon, planes: Iterable[HalfPlane]) -> Optional[Polygon]:
    vertices: List[Point2] = list(polygon.vertices)
    for plane in planes:
        vertices = clip_convex(vertices, plane)
        if not vertices:
            return None
    return Polygon(tuple(vertices))
