import os
import tempfile
import unittest
from fractions import Fraction

from ..billiard import build_table_atlas, trajectory
from ..entities.geometry import Point2
from ..induced import build_induced_atlas
from ..renormalization import build_renormalization, enumerate_components
from ..visualizers import (
    GRAPHVIZ_AVAILABLE,
    CensusTreeGraphvizVisualizer,
    ComponentsFigure,
    FirstReturnFigure,
    InducedFigure,
    NecklaceFigure,
    OrbitFigure,
    Viewport,
)


class TestSvgFigures(unittest.TestCase):
    """Element counts and determinism of the SVG figures."""

    @classmethod
    def setUpClass(cls):
        cls.atlas = build_table_atlas()
        cls.ia = build_induced_atlas(cls.atlas)
        cls.rd = build_renormalization(cls.ia)

    def test_necklace(self):
        """The table and eight necklace octagons, plus the outline of Z."""
        svg = NecklaceFigure(self.atlas).visualize()
        self.assertTrue(svg.startswith("<svg "))
        self.assertEqual(svg.count('class="octagon"'), 9)
        self.assertEqual(svg.count('class="region"'), 1)

    def test_induced(self):
        """Three pieces and the centres U, V, W."""
        svg = InducedFigure(self.ia).visualize()
        self.assertEqual(svg.count('class="piece"'), 3)
        self.assertEqual(svg.count('class="center"'), 3)
        for label in ("U", "V", "W"):
            self.assertIn(f">{label}</text>", svg)

    def test_components(self):
        """Depth 3 draws 1 + 3 + 9 + 27 octagons."""
        components = enumerate_components(3, self.rd)
        svg = ComponentsFigure(self.rd, components).visualize()
        self.assertEqual(svg.count('class="octagon"'), 40)

    def test_first_return(self):
        """The trajectory starts at the seed and ends back in OK'L'M' or at a singular point."""
        seed = self.rd.gamma_map(self.ia.V + Point2.of(Fraction(1, 10), 0))
        figure = FirstReturnFigure(self.rd, seed, 10**4)
        points = figure.trajectory()
        self.assertEqual(points[0], seed)
        self.assertGreater(len(points), 1)
        self.assertTrue(self.rd.quad_image.contains(points[-1]))
        self.assertEqual(figure.visualize().count('class="orbit"'), 1)

    def test_orbit(self):
        """An orbit figure draws the table and one polyline."""
        points = trajectory(self.atlas.necklace_center(2), self.atlas, 20)
        svg = OrbitFigure(self.atlas, points).visualize()
        self.assertEqual(svg.count('class="table"'), 1)
        self.assertEqual(svg.count('class="orbit"'), 1)

    def test_deterministic(self):
        """Identical inputs give identical bytes."""
        first = NecklaceFigure(self.atlas).visualize()
        second = NecklaceFigure(build_table_atlas()).visualize()
        self.assertEqual(first, second)

    def test_figures_share_the_region_frame(self):
        """Every fixed figure is framed on the bounding box of Z."""
        components = enumerate_components(1, self.rd)
        seed = self.rd.gamma_map(self.ia.V + Point2.of(Fraction(1, 10), 0))
        figures = [
            NecklaceFigure(self.atlas),
            InducedFigure(self.ia),
            FirstReturnFigure(self.rd, seed, 10**4),
            ComponentsFigure(self.rd, components),
        ]
        headers = {figure.visualize().split("\n", 1)[0] for figure in figures}
        self.assertEqual(len(headers), 1)
        expected = Viewport(self.atlas.region_z.vertices)
        self.assertIn(f'width="{expected.width}" height="{expected.height}"', headers.pop())

    def test_viewport_flips_y(self):
        """Larger world y maps to smaller canvas y."""
        viewport = Viewport([Point2.of(0, 0), Point2.of(10, 10)])
        _, low = viewport.xy(Point2.of(5, 0))
        _, high = viewport.xy(Point2.of(5, 10))
        self.assertGreater(float(low), float(high))

    def test_save(self):
        """``save`` writes the SVG text."""
        figure = InducedFigure(self.ia)
        with tempfile.TemporaryDirectory() as directory:
            path = figure.save(os.path.join(directory, "induced.svg"))
            with open(path, encoding="utf-8") as fid:
                self.assertEqual(fid.read(), figure.visualize())


class TestCensusTree(unittest.TestCase):
    """The Graphviz census tree."""

    def test_dot_source(self):
        """One node per component and one edge per non-root component."""
        if not GRAPHVIZ_AVAILABLE:
            self.skipTest("graphviz is not installed")
        rd = build_renormalization(build_induced_atlas(build_table_atlas()))
        components = enumerate_components(2, rd)
        source = CensusTreeGraphvizVisualizer(components).visualize()
        self.assertIn("rankdir=TB", source)
        self.assertEqual(source.count("->"), 12)
        self.assertIn("root -> 0", source)
        self.assertIn("1 -> 12", source)


if __name__ == "__main__":
    unittest.main()
