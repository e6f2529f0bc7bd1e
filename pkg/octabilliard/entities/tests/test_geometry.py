import unittest
from fractions import Fraction

from ..geometry import (
    CANONICAL_OCTAGON,
    ORIGIN,
    AffineMap,
    DegenerateGeometryError,
    HalfPlane,
    Location,
    Point2,
    Polygon,
    angle_bisector,
    clip_polygon,
    line_intersection,
    locate_point,
    midpoint,
    octagon_area,
    on_segment,
    orientation,
    perpendicular_bisector,
    polygon_area,
    reflect_point,
    regular_octagon,
    rotate_octant,
)
from ..qsqrt2 import ONE, SQRT2, QSqrt2

R = ONE + SQRT2


def unit_square() -> Polygon:
    return Polygon.of(
        [Point2.of(0, 0), Point2.of(1, 0), Point2.of(1, 1), Point2.of(0, 1)]
    )


class TestPrimitives(unittest.TestCase):
    """Points, orientation, lines."""

    def test_orientation(self):
        """Left turn, right turn and collinear triples."""
        a, b = Point2.of(0, 0), Point2.of(1, 0)
        self.assertEqual(orientation(a, b, Point2.of(0, 1)), 1)
        self.assertEqual(orientation(a, b, Point2.of(0, -1)), -1)
        self.assertEqual(orientation(a, b, Point2.of(5, 0)), 0)

    def test_rotate_octant(self):
        """Rotating (1, 0) by pi/4 gives (sqrt2/2, sqrt2/2)."""
        p = rotate_octant(Point2.of(1, 0), ORIGIN, 1)
        half = SQRT2 * Fraction(1, 2)
        self.assertEqual(p, Point2(half, half))
        self.assertEqual(rotate_octant(Point2.of(1, 0), ORIGIN, 8), Point2.of(1, 0))

    def test_reflect_and_midpoint(self):
        """Reflection through c and the midpoint of p and its image agree."""
        p, c = Point2.of(3, 1), Point2(SQRT2, ONE)
        image = reflect_point(p, c)
        self.assertEqual(midpoint(p, image), c)

    def test_line_intersection(self):
        """The diagonals of the unit square meet at its centre."""
        hit = line_intersection(
            Point2.of(0, 0), Point2.of(1, 1), Point2.of(1, 0), Point2.of(0, 1)
        )
        self.assertEqual(hit, Point2.of(Fraction(1, 2), Fraction(1, 2)))

    def test_parallel_lines(self):
        """Parallel lines raise DegenerateGeometryError."""
        with self.assertRaises(DegenerateGeometryError):
            line_intersection(
                Point2.of(0, 0), Point2.of(1, 0), Point2.of(0, 1), Point2.of(1, 1)
            )

    def test_on_segment(self):
        """Closed segment membership."""
        a, b = Point2.of(0, 0), Point2.of(2, 2)
        self.assertTrue(on_segment(Point2.of(1, 1), a, b))
        self.assertTrue(on_segment(b, a, b))
        self.assertFalse(on_segment(Point2.of(3, 3), a, b))
        self.assertFalse(on_segment(Point2.of(1, 0), a, b))

    def test_bisectors(self):
        """Perpendicular and angle bisectors of simple configurations."""
        m, other = perpendicular_bisector(Point2.of(0, 0), Point2.of(2, 0))
        self.assertEqual(m, Point2.of(1, 0))
        self.assertEqual(other.x, QSqrt2(1))
        vertex, through = angle_bisector(ORIGIN, Point2.of(3, 0), Point2.of(0, 5))
        self.assertEqual(vertex, ORIGIN)
        self.assertEqual(through, Point2.of(1, 1))


class TestAffineMap(unittest.TestCase):
    """Exact affine maps."""

    def test_rotation_power(self):
        """Eight eighth-turns are the identity."""
        rotation = AffineMap.rotation_octant(1, Point2.of(2, 3))
        self.assertTrue(rotation.power(8).is_identity())
        self.assertFalse(rotation.power(4).is_identity())

    def test_point_reflection_is_involution(self):
        """A point reflection composed with itself is the identity."""
        f = AffineMap.point_reflection(Point2(R, ONE))
        self.assertTrue(f.compose(f).is_identity())
        self.assertEqual(f.fixed_point(), Point2(R, ONE))

    def test_compose_order(self):
        """``f.compose(g)`` applies ``g`` first."""
        f = AffineMap.translation(Point2.of(1, 0))
        g = AffineMap.rotation_octant(2)
        p = Point2.of(1, 0)
        self.assertEqual(f.compose(g)(p), f(g(p)))
        self.assertEqual(f.compose(g)(p), Point2.of(1, 1))

    def test_inverse(self):
        """``f.inverse()`` undoes ``f``."""
        f = AffineMap.octant_similarity(3, SQRT2 - 1, ORIGIN, Point2.of(1, 2))
        p = Point2(SQRT2, Fraction(1, 3))
        self.assertEqual(f.inverse()(f(p)), p)

    def test_similarity_ratio_and_octant(self):
        """Ratio and rotation index of an octant similarity are recovered."""
        lam = SQRT2 - 1
        for k in range(8):
            f = AffineMap.octant_similarity(k, lam, ORIGIN, Point2.of(1, 1))
            self.assertTrue(f.is_similarity())
            self.assertEqual(f.similarity_ratio(), lam)
            self.assertEqual(f.rotation_octant_index(), k)

    def test_homothety_fixed_point(self):
        """A homothety fixes its centre."""
        centre = Point2.of(3, -2)
        self.assertEqual(AffineMap.homothety(centre, 3).fixed_point(), centre)

    def test_translation_has_no_fixed_point(self):
        """A nonzero translation has no fixed point."""
        with self.assertRaises(DegenerateGeometryError):
            AffineMap.translation(Point2.of(1, 0)).fixed_point()

    def test_isometry(self):
        """Rotations are isometries, homotheties are not."""
        self.assertTrue(AffineMap.rotation_octant(3).is_isometry())
        self.assertFalse(AffineMap.homothety(ORIGIN, 2).is_isometry())


class TestHalfPlane(unittest.TestCase):
    """Closed half-planes."""

    def test_left_of(self):
        """The left side of a directed line is non-negative."""
        plane = HalfPlane.left_of(Point2.of(0, 0), Point2.of(1, 0))
        self.assertEqual(plane.side(Point2.of(0, 1)), 1)
        self.assertEqual(plane.side(Point2.of(7, 0)), 0)
        self.assertEqual(plane.flipped().side(Point2.of(0, 1)), -1)

    def test_normalized_keeps_sides(self):
        """Normalising keeps the sign of every point."""
        plane = HalfPlane(QSqrt2(0, 2), QSqrt2(4), QSqrt2(-1))
        normal = plane.normalized()
        self.assertEqual(normal.a, ONE)
        for p in (Point2.of(1, 1), Point2.of(-3, 0), Point2.of(0, 0)):
            self.assertEqual(plane.side(p), normal.side(p))

    def test_pullback(self):
        """``p`` is in the pullback iff ``f(p)`` is in the plane."""
        plane = HalfPlane.left_of(Point2.of(0, 0), Point2.of(1, 0))
        f = AffineMap.rotation_octant(4)
        pulled = plane.pullback(f)
        self.assertEqual(pulled.side(Point2.of(0, -1)), 1)
        self.assertEqual(pulled.side(Point2.of(0, 1)), -1)


class TestPolygon(unittest.TestCase):
    """Polygons, membership and octagons."""

    def test_rejects_clockwise(self):
        """Clockwise or degenerate cycles are rejected."""
        with self.assertRaises(DegenerateGeometryError):
            Polygon.of(
                [Point2.of(0, 0), Point2.of(0, 1), Point2.of(1, 1), Point2.of(1, 0)]
            )
        with self.assertRaises(DegenerateGeometryError):
            Polygon.of([Point2.of(0, 0), Point2.of(1, 0), Point2.of(2, 0)])

    def test_counterclockwise_reorders(self):
        """``counterclockwise`` accepts either orientation."""
        poly = Polygon.counterclockwise(
            [Point2.of(0, 0), Point2.of(0, 1), Point2.of(1, 1), Point2.of(1, 0)]
        )
        self.assertEqual(poly.area(), QSqrt2(1))

    def test_locate(self):
        """Interior, boundary and exterior of the unit square."""
        square = unit_square()
        half = Fraction(1, 2)
        self.assertIs(locate_point(Point2.of(half, half), square), Location.INTERIOR)
        self.assertIs(square.locate(Point2.of(1, half)), Location.BOUNDARY)
        self.assertIs(square.locate(Point2.of(2, half)), Location.EXTERIOR)
        self.assertFalse(square.contains(Point2.of(0, 0)))
        self.assertTrue(square.contains(Point2.of(0, 0), closed=True))

    def test_non_convex_membership(self):
        """Winding membership in a dart."""
        dart = Polygon.of(
            [Point2.of(0, 0), Point2.of(4, 2), Point2.of(0, 4), Point2.of(1, 2)],
            convex=False,
        )
        self.assertTrue(dart.contains(Point2.of(2, 2)))
        self.assertFalse(dart.contains(Point2.of(Fraction(1, 2), 2)))
        self.assertIs(dart.locate(Point2.of(1, 2)), Location.BOUNDARY)
        self.assertEqual(polygon_area(dart), QSqrt2(6))

    def test_canonical_octagon(self):
        """The table has side 2 and area 8(1+sqrt2)."""
        table = Polygon.of(CANONICAL_OCTAGON)
        self.assertEqual(table.area(), octagon_area(2))
        self.assertEqual(table.area(), QSqrt2(8, 8))
        self.assertEqual(regular_octagon(ORIGIN, 2).vertex_set(), table.vertex_set())

    def test_transformed(self):
        """Images under similarities keep the shape; reflections are refused."""
        square = unit_square()
        moved = square.transformed(AffineMap.rotation_octant(2))
        self.assertEqual(moved.area(), square.area())
        with self.assertRaises(DegenerateGeometryError):
            square.transformed(AffineMap(ONE, QSqrt2(0), QSqrt2(0), -ONE))

    def test_interiors_disjoint(self):
        """Squares sharing an edge have disjoint interiors; overlapping ones do not."""
        square = unit_square()
        right = square.transformed(AffineMap.translation(Point2.of(1, 0)))
        shifted = square.transformed(
            AffineMap.translation(Point2.of(Fraction(1, 2), 0))
        )
        self.assertTrue(square.interiors_disjoint(right))
        self.assertFalse(square.interiors_disjoint(shifted))

    def test_clip_polygon(self):
        """Clipping the square by x <= 1/2 halves it; clipping it away gives None."""
        square = unit_square()
        half = HalfPlane(-ONE, QSqrt2(0), QSqrt2(Fraction(1, 2)))
        clipped = clip_polygon(square, [half])
        self.assertEqual(clipped.area(), QSqrt2(Fraction(1, 2)))
        away = HalfPlane(-ONE, QSqrt2(0), QSqrt2(-2))
        self.assertIsNone(clip_polygon(square, [away]))

    def test_contains_polygon(self):
        """Closed containment."""
        big = regular_octagon(ORIGIN, 4)
        self.assertTrue(big.contains_polygon(regular_octagon(ORIGIN, 2)))
        self.assertFalse(regular_octagon(ORIGIN, 2).contains_polygon(big))

    def test_contains_polygon_notched(self):
        """An edge leaving a notched container is caught even with all vertices inside."""
        q = Fraction(1, 4)
        notched = Polygon.of(
            [Point2.of(0, 0), Point2.of(4, 0), Point2.of(4, 4), Point2.of(2, 1), Point2.of(0, 4)],
            convex=False,
        )
        across = Polygon.of([Point2.of(2, q), Point2.of(3, 1 + q), Point2.of(1, 1 + q)])
        self.assertTrue(all(notched.contains(p) for p in across.vertices))
        self.assertTrue(notched.contains(across.vertex_centroid()))
        self.assertFalse(notched.contains_polygon(across))

        below = Polygon.of([Point2.of(2, q), Point2.of(3, 1), Point2.of(1, 1)])
        self.assertTrue(notched.contains_polygon(below))


if __name__ == "__main__":
    unittest.main()
