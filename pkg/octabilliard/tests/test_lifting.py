import unittest
from fractions import Fraction

from ..billiard import build_table_atlas
from ..entities.geometry import Point2, Polygon
from ..entities.qsqrt2 import QSqrt2
from ..induced import build_induced_atlas, inverse_branch_map
from ..lifting import (
    NECKLACE_BASE,
    component_from_point,
    default_window,
    lift_component,
    match_component,
    match_in_y,
    window_grid,
    window_sweep,
)
from ..renormalization import build_renormalization


class TestLifting(unittest.TestCase):
    """Lifting components of Y into the wedge and back."""

    @classmethod
    def setUpClass(cls):
        cls.ia = build_induced_atlas(build_table_atlas())
        cls.rd = build_renormalization(cls.ia)
        cls.level0 = cls.rd.level0

    def base_polygon(self, base: str) -> Polygon:
        if base == NECKLACE_BASE:
            return self.rd.necklace_octagon
        return self.rd.component(base).polygon

    def test_trivial_lift(self):
        """``n = m = 0`` is the identity; one step maps the root octagon to itself."""
        self.assertTrue(lift_component(self.level0, 0, 0, self.ia, self.rd).same_shape(self.level0))
        self.assertTrue(lift_component(self.level0, 0, 1, self.ia, self.rd).same_shape(self.level0))

    def test_lift_ranges(self):
        """Out-of-range lifts and bases outside Y are rejected."""
        with self.assertRaises(ValueError):
            lift_component(self.level0, -1, 0, self.ia, self.rd)
        with self.assertRaises(ValueError):
            lift_component(self.level0, 0, 4, self.ia, self.rd)
        shifted = self.level0.transformed(self.rd.h_map)
        with self.assertRaises(ValueError):
            lift_component(shifted, 0, 0, self.ia, self.rd)

    def test_match_in_y(self):
        """Census addresses and the necklace octagon are recognised."""
        self.assertEqual(match_in_y(self.level0, self.rd), "")
        self.assertEqual(match_in_y(self.rd.necklace_octagon, self.rd), NECKLACE_BASE)
        self.assertEqual(match_in_y(self.rd.component("12").polygon, self.rd), "12")
        self.assertIsNone(match_in_y(self.level0.transformed(self.rd.h_map), self.rd))

    def test_match_translated_component(self):
        """``H(C)`` is matched back to ``C`` with one translation."""
        lifted = lift_component(self.level0, 1, 0, self.ia, self.rd)
        match = match_component(lifted, self.ia, self.rd)
        self.assertIsNotNone(match)
        self.assertEqual((match.base, match.n, match.m), ("", 1, 0))

    def test_match_stepped_component(self):
        """A stepped lift is reproduced from its match."""
        lifted = lift_component(self.level0, 1, 1, self.ia, self.rd)
        match = match_component(lifted, self.ia, self.rd)
        self.assertIsNotNone(match)
        rebuilt = lift_component(
            self.base_polygon(match.base), match.n, match.m, self.ia, self.rd
        )
        self.assertTrue(rebuilt.same_shape(lifted))

    def test_deep_lifts_round_trip(self):
        """Two and three wedge steps are undone by the inverse branches and matched."""
        for base in ("", "2"):
            c0 = self.base_polygon(base)
            for n in (1, 2):
                shifted = c0.transformed(self.rd.h_map.power(n))
                for m in (2, 3):
                    lifted = lift_component(c0, n, m, self.ia, self.rd)
                    current = lifted
                    for _ in range(m):
                        branch = inverse_branch_map(current.vertex_centroid(), self.ia)
                        self.assertIsNotNone(branch)
                        current = current.transformed(branch)
                    self.assertTrue(current.same_shape(shifted))

                    match = match_component(lifted, self.ia, self.rd)
                    self.assertIsNotNone(match)
                    self.assertLessEqual(match.m, m)
                    rebuilt = lift_component(
                        self.base_polygon(match.base), match.n, match.m, self.ia, self.rd
                    )
                    self.assertTrue(rebuilt.same_shape(lifted))

    def test_component_from_point(self):
        """The itinerary domain of a point near V is the root octagon."""
        x = self.ia.V + Point2.of(Fraction(1, 10), 0)
        polygon = component_from_point(x, self.ia, 4)
        self.assertIsNotNone(polygon)
        self.assertTrue(polygon.same_shape(self.level0))


class TestWindowSweep(unittest.TestCase):
    """Grid sweeps of the wedge."""

    @classmethod
    def setUpClass(cls):
        cls.ia = build_induced_atlas(build_table_atlas())
        cls.rd = build_renormalization(cls.ia)

    def test_default_window(self):
        """The default window is a triangle at O inside the wedge."""
        window = default_window(self.ia)
        self.assertEqual(len(window), 3)
        self.assertIn(self.ia.O, window.vertices)
        grid = window_grid(window, QSqrt2(1), self.ia.O + Point2.of(Fraction(-1, 3), Fraction(1, 7)))
        self.assertTrue(grid)
        self.assertTrue(all(window.contains(p) for p in grid))

    def test_sweep_inside_root_octagon(self):
        """A window inside the root octagon yields one matched component."""
        half = Fraction(1, 2)
        v = self.ia.V
        window = Polygon.of(
            [
                v + Point2.of(-half, -half),
                v + Point2.of(half, -half),
                v + Point2.of(half, half),
                v + Point2.of(-half, half),
            ]
        )
        report = window_sweep(self.ia, self.rd, 1000, window=window)
        self.assertGreater(report.points, 1)
        self.assertEqual(report.matched, 1)
        self.assertEqual(report.covered, report.points - 1)
        self.assertTrue(report.passed)
        polygon, match = report.components[0]
        self.assertTrue(polygon.same_shape(self.rd.level0))
        self.assertEqual(match.base, "")


if __name__ == "__main__":
    unittest.main()
