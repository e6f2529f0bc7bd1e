"""
Deterministic SVG figures and the Graphviz census tree.

Exact coordinates are converted to floats only here, and every number is
written with a fixed precision so identical inputs give identical bytes.
"""

import importlib.util
from abc import ABC, abstractmethod
from typing import Iterable, List, Optional, Sequence, Tuple

from .billiard import TableAtlas
from .entities.geometry import Point2
from .entities.orbit import SINGULAR
from .i18n import _
from .induced import InducedAtlas, t_prime
from .renormalization import PeriodicComponent, RenormalizationData

GRAPHVIZ_AVAILABLE = importlib.util.find_spec("graphviz") is not None

CANVAS_SIZE = 800
MARGIN = 0.05
PRECISION = 4

STYLE = (
    ".table{fill:#d9d9d9;stroke:#000;stroke-width:1}"
    ".octagon{fill:#9ecae1;stroke:#08519c;stroke-width:0.6}"
    ".region{fill:none;stroke:#a50f15;stroke-width:1}"
    ".piece{fill-opacity:0.35;stroke:#000;stroke-width:0.8}"
    ".center{fill:#000}"
    ".orbit{fill:none;stroke:#e6550d;stroke-width:0.6}"
)
PIECE_COLORS = ("#fdae6b", "#74c476", "#9e9ac8")


def _fmt(value: float) -> str:
    text = f"{value:.{PRECISION}f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


class Viewport:
    """Maps a world rectangle (y up) onto the SVG canvas (y down)."""

    def __init__(self, frame: Iterable[Point2], margin: float = MARGIN):
        xs, ys = zip(*(p.to_floats() for p in frame))
        width, height = max(xs) - min(xs), max(ys) - min(ys)
        self.x_min = min(xs) - margin * width
        self.y_max = max(ys) + margin * height
        span = max(width, height) * (1 + 2 * margin)
        self.scale = CANVAS_SIZE / span
        self.width = round((width * (1 + 2 * margin)) * self.scale)
        self.height = round((height * (1 + 2 * margin)) * self.scale)

    def xy(self, p: Point2) -> Tuple[str, str]:
        x, y = p.to_floats()
        return _fmt((x - self.x_min) * self.scale), _fmt((self.y_max - y) * self.scale)


class FigureVisualizer(ABC):
    """Base class for SVG figures framed on the region Z."""

    title: str = ""
    atlas: TableAtlas

    def frame(self) -> Sequence[Point2]:
        """Points whose bounding box is the figure viewport."""
        return self.atlas.region_z.vertices

    @abstractmethod
    def elements(self, viewport: Viewport) -> List[str]:
        pass

    def visualize(self) -> str:
        viewport = Viewport(self.frame())
        body = "\n".join(self.elements(viewport))
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" '
            f'width="{viewport.width}" height="{viewport.height}" '
            f'viewBox="0 0 {viewport.width} {viewport.height}">\n'
            f"<title>{self.title}</title>\n"
            f"<style>{STYLE}</style>\n"
            f"{body}\n"
            f"</svg>\n"
        )

    def save(self, path: str) -> str:
        with open(path, "w", encoding="utf-8", newline="\n") as fid:
            fid.write(self.visualize())
        return path


def path_element(
    points: Sequence[Point2], viewport: Viewport, css_class: str, closed: bool = True,
    fill: Optional[str] = None,
) -> str:
    coords = [",".join(viewport.xy(p)) for p in points]
    d = "M" + " L".join(coords) + (" Z" if closed else "")
    fill_attr = f' fill="{fill}"' if fill else ""
    return f'<path class="{css_class}"{fill_attr} d="{d}"/>'


def marker_element(p: Point2, viewport: Viewport, label: str) -> str:
    x, y = viewport.xy(p)
    return (
        f'<circle class="center" cx="{x}" cy="{y}" r="3"/>'
        f'<text x="{x}" y="{y}" dx="5" dy="-5" font-size="14">{label}</text>'
    )


class NecklaceFigure(FigureVisualizer):
    """The table, the eight necklace octagons and the region Z."""

    def __init__(self, atlas: TableAtlas):
        self.atlas = atlas
        self.title = _("Table, necklace and region Z")

    def elements(self, viewport: Viewport) -> List[str]:
        items = [
            path_element(self.atlas.table.vertices, viewport, "octagon", fill="#d9d9d9")
        ]
        items += [
            path_element(octagon.vertices, viewport, "octagon")
            for octagon in self.atlas.necklace
        ]
        items.append(path_element(self.atlas.region_z.vertices, viewport, "region"))
        return items


class InducedFigure(FigureVisualizer):
    """The three pieces of ``T'`` and their rotation centres."""

    def __init__(self, ia: InducedAtlas):
        self.ia = ia
        self.atlas = ia.atlas
        self.title = _("Induced map on OKLM")

    def elements(self, viewport: Viewport) -> List[str]:
        items = [
            path_element(piece.polygon.vertices, viewport, "piece", fill=color)
            for piece, color in zip(self.ia.pieces, PIECE_COLORS)
        ]
        items += [
            marker_element(piece.center, viewport, name)
            for piece, name in zip(self.ia.pieces, ("U", "V", "W"))
        ]
        return items


class FirstReturnFigure(FigureVisualizer):
    """A ``T'`` trajectory from a point of OK'L'M' until its first return."""

    def __init__(self, rd: RenormalizationData, seed: Point2, budget: int):
        self.rd = rd
        self.atlas = rd.ia.atlas
        self.seed = seed
        self.budget = budget
        self.title = _("First return to OK'L'M'")

    def trajectory(self) -> List[Point2]:
        points = [self.seed]
        current = self.seed
        for _step in range(self.budget):
            current = t_prime(current, self.rd.ia)
            if current is SINGULAR:
                break
            points.append(current)
            if self.rd.quad_image.contains(current):
                break
        return points

    def elements(self, viewport: Viewport) -> List[str]:
        return [
            path_element(self.rd.ia.quad_oklm.vertices, viewport, "region"),
            path_element(self.rd.quad_image.vertices, viewport, "region"),
            path_element(self.trajectory(), viewport, "orbit", closed=False),
            marker_element(self.seed, viewport, "x"),
        ]


class ComponentsFigure(FigureVisualizer):
    """Census octagons inside OKLM, with the necklace octagon above it."""

    def __init__(self, rd: RenormalizationData, components: List[PeriodicComponent]):
        self.rd = rd
        self.atlas = rd.ia.atlas
        self.components = components
        self.title = _("Periodic components")

    def elements(self, viewport: Viewport) -> List[str]:
        items = [path_element(self.rd.ia.quad_oklm.vertices, viewport, "region")]
        items += [
            path_element(comp.polygon.vertices, viewport, "octagon")
            for comp in self.components
        ]
        return items


class OrbitFigure(FigureVisualizer):
    """The table and a billiard trajectory."""

    def __init__(self, atlas: TableAtlas, points: List[Point2]):
        self.atlas = atlas
        self.points = points
        self.title = _("Billiard orbit")

    def frame(self) -> Sequence[Point2]:
        return list(super().frame()) + list(self.points)

    def elements(self, viewport: Viewport) -> List[str]:
        return [
            path_element(self.atlas.table.vertices, viewport, "table"),
            path_element(self.points, viewport, "orbit", closed=False),
        ]


class CensusTreeGraphvizVisualizer:
    """The census tree as Graphviz DOT, one node per component."""

    def __init__(self, components: List[PeriodicComponent]):
        self.components = components

    def _digraph(self):
        if not GRAPHVIZ_AVAILABLE:
            raise ImportError(_("Graphviz is not installed."))
        Digraph = importlib.import_module("graphviz").Digraph
        dot = Digraph(comment=_("Census tree"), strict=True)
        dot.attr(rankdir="TB")
        for comp in self.components:
            node = comp.address or "root"
            label = f"{node}\\nh = {comp.side}"
            if comp.period is not None:
                label += f"\\n{_('period')} {comp.period}"
            dot.node(node, label=label, shape="octagon")
            if comp.address:
                dot.edge(comp.address[:-1] or "root", node, label=comp.address[-1])
        return dot

    def visualize(self) -> str:
        return self._digraph().source
