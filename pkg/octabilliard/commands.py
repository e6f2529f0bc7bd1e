"""
The commands behind ``main.py``.

Each ``cmd_*`` function takes a :class:`CommandConfig` and returns a
:class:`CommandResult` holding the exit status and the text for stdout.
All computation is exact; floats only appear inside SVG attributes.
"""

import logging
import os
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional

from .billiard import (
    TableAtlas,
    build_table_atlas,
    classify_point,
    orbit,
    trajectory,
)
from .entities.geometry import Point2
from .entities.orbit import Periodic
from .i18n import _, ngettext
from .induced import InducedAtlas, build_induced_atlas
from .renormalization import (
    RenormalizationData,
    aperiodic_point,
    build_renormalization,
    enumerate_components,
    measure_census,
)
from .sampling import make_rng, sample_points
from .serialization import (
    component_to_json,
    dumps,
    format_seed,
    outcome_to_json,
    point_to_json,
    polygon_to_json,
)
from .settings import Settings
from .verification import check_period_families, run_suite
from .visualizers import (
    GRAPHVIZ_AVAILABLE,
    CensusTreeGraphvizVisualizer,
    ComponentsFigure,
    FigureVisualizer,
    FirstReturnFigure,
    InducedFigure,
    NecklaceFigure,
    OrbitFigure,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

TRAJECTORY_CAP = 4096


class UsageError(ValueError):
    """Invalid command-line input; maps to exit status 2."""


class CommandName(Enum):
    ORBIT = "orbit"
    ATLAS = "atlas"
    COMPONENTS = "components"
    PERIODS = "periods"
    VERIFY = "verify"
    APERIODIC = "aperiodic"
    RENDER = "render"

    def __repr__(self):
        return self.name


class OutputFormat(Enum):
    JSON = "json"
    SVG = "svg"

    def __repr__(self):
        return self.name


class FigureName(Enum):
    NECKLACE = "necklace"
    INDUCED = "induced"
    FIRST_RETURN = "first_return"
    COMPONENTS = "components"

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class CommandConfig:
    command: CommandName
    seed: Optional[Point2] = None
    depth: Optional[int] = None
    budget: Optional[int] = None
    samples: Optional[int] = None
    output_path: Optional[str] = None
    format: OutputFormat = OutputFormat.JSON
    figure: Optional[FigureName] = None
    include_window: bool = False

    def __post_init__(self):
        if self.budget is not None and self.budget < 1:
            raise UsageError(_("Budget must be at least 1, got {budget}.", budget=self.budget))
        if self.samples is not None and self.samples < 1:
            raise UsageError(
                _("Sample count must be at least 1, got {samples}.", samples=self.samples)
            )
        if self.depth is not None and self.depth < 0:
            raise UsageError(_("Depth must be non-negative, got {depth}.", depth=self.depth))

    def settings(self, base: Settings) -> Settings:
        """``base`` with the flags of this config applied."""
        settings = base.with_overrides(depth=self.depth, samples=self.samples)
        if settings.depth > settings.depth_cap:
            raise UsageError(
                _(
                    "Depth {depth} exceeds the cap {cap}.",
                    depth=settings.depth,
                    cap=settings.depth_cap,
                )
            )
        if self.budget is None:
            return settings
        return settings.with_overrides(
            orbit_budget=self.budget,
            first_return_budget=self.budget,
            aperiodic_budget=self.budget,
            lift_budget=self.budget,
        )


@dataclass
class CommandResult:
    exit_code: int
    text: str
    files: List[str] = field(default_factory=list)
    notice: str = ""


class Workspace:
    """Builds the exact atlases once per command run."""

    def __init__(self, settings: Settings):
        self.settings = settings

    @cached_property
    def atlas(self) -> TableAtlas:
        return build_table_atlas()

    @cached_property
    def ia(self) -> InducedAtlas:
        return build_induced_atlas(self.atlas)

    @cached_property
    def rd(self) -> RenormalizationData:
        return build_renormalization(self.ia)


def _write(path: str, text: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fid:
        fid.write(text)
    logger.info("wrote %s", path)
    return path


def _emit(config: CommandConfig, payload: Dict[str, Any], exit_code: int = EXIT_OK):
    text = dumps(payload)
    if config.output_path:
        return CommandResult(exit_code, "", [_write(config.output_path, text)])
    return CommandResult(exit_code, text)


def _emit_svg(config: CommandConfig, figure: FigureVisualizer) -> CommandResult:
    text = figure.visualize()
    if config.output_path:
        return CommandResult(EXIT_OK, "", [_write(config.output_path, text)])
    return CommandResult(EXIT_OK, text)


def cmd_orbit(config: CommandConfig, ws: Workspace) -> CommandResult:
    """
    Classify the billiard orbit of ``--seed``.

    Raises:
        UsageError: If no seed is given or the seed is not outside the table
    """
    if config.seed is None:
        raise UsageError(_("The orbit command needs --seed."))
    if not ws.atlas.is_exterior(config.seed):
        raise UsageError(
            _("Seed {seed} is not outside the table.", seed=format_seed(config.seed))
        )
    report = classify_point(config.seed, ws.atlas, ws.settings.orbit_budget)
    outcome = report.forward
    logger.info("orbit of %s: %s (%s)", format_seed(config.seed), outcome, report.kind.value)
    if config.format is OutputFormat.SVG:
        steps = outcome.period if isinstance(outcome, Periodic) else TRAJECTORY_CAP
        points = trajectory(config.seed, ws.atlas, min(steps, TRAJECTORY_CAP))
        return _emit_svg(config, OrbitFigure(ws.atlas, points))
    payload = {
        "seed": point_to_json(config.seed),
        "classification": report.kind.value,
        **outcome_to_json(outcome),
    }
    if report.backward is not None:
        payload["backward"] = outcome_to_json(report.backward)
    return _emit(config, payload)


def cmd_atlas(config: CommandConfig, ws: Workspace) -> CommandResult:
    """Every named point of the construction, for golden-file comparison."""
    atlas, ia = ws.atlas, ws.ia
    points: Dict[str, Any] = {}
    for j, vertex in enumerate(atlas.vertices):
        points[f"A_{j}"] = point_to_json(vertex)
    for i, corner in enumerate(atlas.corner_points):
        points[f"C_{i}"] = point_to_json(corner)
        for j in range(len(atlas.vertices)):
            points[f"A^{i}_{j}"] = point_to_json(atlas.necklace_vertex(i, j))
    for name, point in ia.named_points().items():
        points[name] = point_to_json(point)
    payload = {
        "points": points,
        "region_z": polygon_to_json(atlas.region_z),
        "quad_oklm": polygon_to_json(ia.quad_oklm),
        "pieces": {
            piece.name: {
                "polygon": polygon_to_json(piece.polygon),
                "center": point_to_json(piece.center),
                "octant": piece.octant,
            }
            for piece in ia.pieces
        },
    }
    return _emit(config, payload)


def _census(ws: Workspace):
    components = enumerate_components(
        ws.settings.depth, ws.rd, depth_cap=ws.settings.depth_cap
    )
    return measure_census(components, ws.atlas, ws.ia, ws.settings.orbit_budget)


def cmd_components(config: CommandConfig, ws: Workspace) -> CommandResult:
    """The census of periodic octagons up to ``--depth`` with both periods."""
    if config.format is OutputFormat.SVG:
        components = enumerate_components(
            ws.settings.depth, ws.rd, depth_cap=ws.settings.depth_cap
        )
        return _emit_svg(config, ComponentsFigure(ws.rd, components))
    census = _census(ws)
    return _emit(
        config,
        {"depth": ws.settings.depth, "components": [component_to_json(c) for c in census]},
    )


def cmd_periods(config: CommandConfig, ws: Workspace) -> CommandResult:
    """Measured periods checked against the closed-form families."""
    result = check_period_families(
        ws.rd, ws.atlas, ws.settings.depth, ws.settings.orbit_budget
    )
    code = EXIT_OK if result.passed else EXIT_CHECK_FAILED
    return _emit(config, result.to_json(), code)


def cmd_verify(config: CommandConfig, ws: Workspace) -> CommandResult:
    """Run the property suite; exit 1 if any check fails."""
    results = run_suite(
        ws.settings, ws.atlas, ws.ia, ws.rd, include_window=config.include_window
    )
    failed = [r.name for r in results if not r.passed]
    passed = not failed
    payload = {
        "passed": passed,
        "samples": ws.settings.samples,
        "seed": ws.settings.seed,
        "checks": [r.to_json() for r in results],
    }
    result = _emit(config, payload, EXIT_OK if passed else EXIT_CHECK_FAILED)
    if failed:
        result.notice = ngettext(
            "{n} check failed: {names}",
            "{n} checks failed: {names}",
            len(failed),
            names=", ".join(failed),
        )
    return result


def cmd_aperiodic(config: CommandConfig, ws: Workspace) -> CommandResult:
    """The fixed point of the spiral map and its (non-closing) orbit."""
    c = aperiodic_point(ws.rd)
    outcome = orbit(c, ws.atlas, ws.settings.aperiodic_budget)
    payload = {
        "point": point_to_json(c),
        "seed": format_seed(c),
        "orbit": outcome_to_json(outcome),
    }
    return _emit(config, payload)


def _first_return_seed(config: CommandConfig, ws: Workspace) -> Point2:
    if config.seed is not None:
        if not ws.rd.quad_image.contains(config.seed):
            raise UsageError(
                _(
                    "Seed {seed} is not inside OK'L'M'.",
                    seed=format_seed(config.seed),
                )
            )
        return config.seed
    rng = make_rng(ws.settings.seed)
    return sample_points(ws.rd.quad_image, 1, rng, denominator=97)[0]


def figure_for(name: FigureName, config: CommandConfig, ws: Workspace) -> FigureVisualizer:
    if name is FigureName.NECKLACE:
        return NecklaceFigure(ws.atlas)
    if name is FigureName.INDUCED:
        return InducedFigure(ws.ia)
    if name is FigureName.FIRST_RETURN:
        return FirstReturnFigure(
            ws.rd, _first_return_seed(config, ws), ws.settings.first_return_budget
        )
    components = enumerate_components(
        ws.settings.depth, ws.rd, depth_cap=ws.settings.depth_cap
    )
    return ComponentsFigure(ws.rd, components)


def cmd_render(config: CommandConfig, ws: Workspace) -> CommandResult:
    """
    Write SVG figures. With ``--figure`` a single figure goes to ``--out``
    (or stdout); otherwise every figure is written into the ``--out``
    directory, together with the census tree in DOT format when graphviz
    is installed.
    """
    if config.figure is not None:
        return _emit_svg(config, figure_for(config.figure, config, ws))
    directory = config.output_path or "figures"
    files = [
        _write(
            os.path.join(directory, f"{name.value}.svg"),
            figure_for(name, config, ws).visualize(),
        )
        for name in FigureName
    ]
    if GRAPHVIZ_AVAILABLE:
        components = enumerate_components(
            ws.settings.depth, ws.rd, depth_cap=ws.settings.depth_cap
        )
        files.append(
            _write(
                os.path.join(directory, "census_tree.dot"),
                CensusTreeGraphvizVisualizer(components).visualize(),
            )
        )
    else:
        logger.warning("graphviz is not installed; skipping the census tree")
    return CommandResult(EXIT_OK, dumps({"files": files}), files)


COMMANDS: Dict[CommandName, Callable[[CommandConfig, Workspace], CommandResult]] = {
    CommandName.ORBIT: cmd_orbit,
    CommandName.ATLAS: cmd_atlas,
    CommandName.COMPONENTS: cmd_components,
    CommandName.PERIODS: cmd_periods,
    CommandName.VERIFY: cmd_verify,
    CommandName.APERIODIC: cmd_aperiodic,
    CommandName.RENDER: cmd_render,
}


def run_command(config: CommandConfig, settings: Optional[Settings] = None) -> CommandResult:
    """
    Dispatch ``config`` to its command.

    Raises:
        UsageError: For invalid flags or seeds
    """
    ws = Workspace(config.settings(settings or Settings.from_env()))
    logger.debug("running %r with %s", config.command, ws.settings)
    return COMMANDS[config.command](config, ws)
