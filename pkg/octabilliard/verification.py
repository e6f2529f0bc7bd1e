"""
The property suite behind ``--command verify``.

Every check returns a :class:`CheckResult`; a failed check carries its
counterexamples instead of raising.
"""

import logging
import random
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional

from .billiard import (
    TABLE_ORDER,
    TableAtlas,
    billiard_step,
    billiard_step_inv,
    map_polygon,
    necklace_image_index,
    orbit,
    tangent_vertex,
)
from .entities.geometry import octagon_area, rotate_octant
from .entities.orbit import SINGULAR, BudgetExceeded, Periodic
from .entities.qsqrt2 import ONE, QSqrt2
from .induced import (
    InducedAtlas,
    conjugacy_check_gamma,
    conjugacy_check_h,
    first_return,
    t_prime,
    t_prime_oracle,
)
from .lifting import window_sweep
from .renormalization import (
    ComponentMeasurementError,
    RenormalizationData,
    aperiodic_point,
    enumerate_components,
    measure_component_period,
    measure_t_prime_period,
    nested_quadrilaterals,
    period_families,
    residual_measure,
    residual_ratio,
    spiral_addresses,
    t_prime_invariant_steps,
)
from .sampling import make_rng, sample_points
from .serialization import outcome_to_json, point_to_json
from .settings import SAMPLE_DENOMINATOR, Settings

logger = logging.getLogger(__name__)

FAMILY_N_MAX = 4
FAMILY_K_MAX = 64
NESTED_QUADS = 7
MEASURE_LEVELS = 4


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    counterexamples: List[Any] = field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
            "counterexamples": self.counterexamples,
        }


def _result(name: str, counterexamples: List[Any], **details) -> CheckResult:
    return CheckResult(name, not counterexamples, details, counterexamples)


def _json_step(value) -> Any:
    return "singular" if value is SINGULAR else point_to_json(value)


def check_necklace_images(atlas: TableAtlas) -> CheckResult:
    """``T`` maps the vertex set of gamma^i onto that of gamma^(i+3)."""
    failures = []
    for i, octagon in enumerate(atlas.necklace):
        image = map_polygon(octagon, atlas)
        target = atlas.necklace[necklace_image_index(i)]
        if image is None or not image.same_shape(target):
            failures.append(i)
    return _result("necklace_images", failures, octagons=TABLE_ORDER)


def ring_samples(atlas: TableAtlas, count: int, rng: random.Random):
    return sample_points(
        atlas.region_z, count, rng, SAMPLE_DENOMINATOR, accept=atlas.is_exterior
    )


def check_z_invariance(atlas: TableAtlas, count: int, rng: random.Random) -> CheckResult:
    failures = []
    for p in ring_samples(atlas, count, rng):
        for step in (billiard_step, billiard_step_inv):
            image = step(p, atlas)
            if image is SINGULAR:
                continue
            if not atlas.region_z.contains(image, closed=True):
                failures.append(point_to_json(p))
                break
    return _result("z_invariance", failures, samples=count)


def check_equivariance(atlas: TableAtlas, count: int, rng: random.Random) -> CheckResult:
    """``T`` commutes with the rotation by pi/4 about the table centre."""
    failures = []
    for p in ring_samples(atlas, count, rng):
        rotated = rotate_octant(p, atlas.center, 1)
        j, k = tangent_vertex(p, atlas), tangent_vertex(rotated, atlas)
        if j is SINGULAR or k is SINGULAR:
            if j is not k:
                failures.append(point_to_json(p))
            continue
        image = billiard_step(p, atlas)
        if (j + 1) % TABLE_ORDER != k or billiard_step(
            rotated, atlas
        ) != rotate_octant(image, atlas.center, 1):
            failures.append(point_to_json(p))
    return _result("equivariance", failures, samples=count)


def quad_samples(ia: InducedAtlas, count: int, rng: random.Random):
    return sample_points(ia.quad_oklm, count, rng, SAMPLE_DENOMINATOR)


def check_oracle_equivalence(
    ia: InducedAtlas, count: int, rng: random.Random
) -> CheckResult:
    failures = []
    for x in quad_samples(ia, count, rng):
        lhs, rhs = t_prime(x, ia), t_prime_oracle(x, ia.atlas, ia)
        if lhs != rhs:
            failures.append(
                {"x": point_to_json(x), "lhs": _json_step(lhs), "rhs": _json_step(rhs)}
            )
    return _result("oracle_equivalence", failures, samples=count)


def _conjugacy_result(report) -> CheckResult:
    failures = [
        {
            "x": point_to_json(f.x),
            "lhs": _json_step(f.lhs),
            "rhs": outcome_to_json(f.rhs),
        }
        for f in report.failures
    ]
    return _result(report.name, failures, samples=report.samples)


def check_gamma_conjugacy(
    ia: InducedAtlas, rd: RenormalizationData, count: int, budget: int, rng
) -> CheckResult:
    samples = quad_samples(ia, count, rng)
    return _conjugacy_result(conjugacy_check_gamma(samples, ia, rd, budget))


def check_h_conjugacy(ia: InducedAtlas, count: int, budget: int, rng) -> CheckResult:
    samples = quad_samples(ia, count, rng)
    return _conjugacy_result(conjugacy_check_h(samples, ia, budget))


def check_census(rd: RenormalizationData, depth: int, budget: int) -> CheckResult:
    """
    ``3^k`` components per level, pairwise disjoint, inside their cells,
    mapped onto themselves by ``T'`` and transported by ``Gamma``.
    """
    components = enumerate_components(depth, rd)
    failures: List[Any] = []
    counts = []
    for level in range(depth + 1):
        same_level = [c for c in components if c.level == level]
        counts.append(len(same_level))
        if len(same_level) != 3**level:
            failures.append({"level": level, "count": len(same_level)})
        for a, b in combinations(same_level, 2):
            if not a.polygon.interiors_disjoint(b.polygon):
                failures.append({"overlap": [a.address, b.address]})
    by_address = {c.address: c for c in components}
    for comp in components:
        if comp.polygon.area() != octagon_area(rd.h(comp.level)):
            failures.append({"area": comp.address})
        if not rd.cell(comp.address).contains_polygon(comp.polygon):
            failures.append({"outside_cell": comp.address})
        if t_prime_invariant_steps(comp.polygon, rd.ia, budget) is None:
            failures.append({"not_invariant": comp.address})
        image = by_address.get("00" + comp.address)
        if image is not None and not comp.polygon.transformed(
            rd.gamma_map
        ).same_shape(image.polygon):
            failures.append({"gamma_transport": comp.address})
    return _result("census", failures, depth=depth, counts=counts)


def check_period_families(
    rd: RenormalizationData, atlas: TableAtlas, depth: int, budget: int
) -> CheckResult:
    families = period_families(FAMILY_N_MAX, FAMILY_K_MAX)
    failures: List[Any] = []
    periods: Dict[str, Any] = {}
    necklace = orbit(atlas.necklace_center(2), atlas, budget)
    periods["necklace"] = outcome_to_json(necklace)
    if not isinstance(necklace, Periodic) or necklace.period not in families:
        failures.append({"necklace": periods["necklace"]})
    for comp in enumerate_components(depth, rd):
        try:
            period = measure_component_period(comp, atlas, budget)
        except ComponentMeasurementError as exc:
            failures.append({"address": comp.address, "error": str(exc)})
            continue
        periods[comp.address or "root"] = period
        if period not in families:
            failures.append({"address": comp.address, "period": period})
    return _result("period_families", failures, periods=periods)


def check_measure_identity(
    rd: RenormalizationData, levels: int = MEASURE_LEVELS, lam: Optional[QSqrt2] = None
) -> CheckResult:
    """
    ``residual(k+1) = 3 lambda^2 residual(k)``, the base identity and
    ``3 lambda^2 < 1``; ``lam`` replaces lambda for negative controls.
    """
    if lam is not None:
        rd = replace(rd, lam=lam)
    ratio = residual_ratio(rd)
    area = rd.ia.quad_oklm.area()
    failures: List[Any] = []
    base = area - octagon_area(rd.h(0))
    if base != ratio * area:
        failures.append({"base_identity": str(base)})
    for k in range(levels + 1):
        if residual_measure(k + 1, rd) != ratio * residual_measure(k, rd):
            failures.append({"level": k})
    if (ONE - ratio).sign() != 1:
        failures.append({"ratio": str(ratio)})
    return _result(
        "measure_identity",
        failures,
        ratio=ratio.to_json(),
        residuals=[residual_measure(k, rd).to_json() for k in range(levels + 1)],
    )


def check_aperiodic_point(
    rd: RenormalizationData, atlas: TableAtlas, budget: int
) -> CheckResult:
    c = aperiodic_point(rd)
    failures: List[Any] = []
    if rd.g_map(c) != c:
        failures.append("not_fixed")
    for i, quad in enumerate(nested_quadrilaterals(rd, NESTED_QUADS)):
        if not quad.contains(c, closed=True):
            failures.append({"outside_G": i})
    outcome = orbit(c, atlas, budget)
    if not isinstance(outcome, BudgetExceeded):
        failures.append(outcome_to_json(outcome))
    return _result(
        "aperiodic_point", failures, point=point_to_json(c), outcome=outcome_to_json(outcome)
    )


def check_spiral_growth(
    rd: RenormalizationData, budget: int, rounds: int = 2
) -> CheckResult:
    """``T'``-periods of the spiral components grow from one round to the next."""
    addresses = spiral_addresses(rounds)
    failures: List[Any] = []
    periods: Dict[str, int] = {}
    for address in addresses:
        try:
            periods[address or "root"] = measure_t_prime_period(
                rd.component(address), rd.ia, budget
            )
        except ComponentMeasurementError as exc:
            failures.append({"address": address, "error": str(exc)})
    if not failures:
        values = [periods[a or "root"] for a in addresses]
        for i in range(3, len(values)):
            if values[i] <= values[i - 3]:
                failures.append({"index": i})
    return _result("spiral_growth", failures, periods=periods)


def check_non_returning(
    rd: RenormalizationData, atlas: TableAtlas, entry_budget: int, orbit_budget: int
) -> CheckResult:
    """
    The four octagons of level at most one never enter OK'L'M' and are
    periodic under ``T``.
    """
    failures: List[Any] = []
    for comp in enumerate_components(1, rd):
        x = comp.probe()
        entry = first_return(
            lambda p: t_prime(p, rd.ia), rd.quad_image.contains, x, entry_budget, strict=False
        )
        if not isinstance(entry, BudgetExceeded):
            failures.append({"address": comp.address, "entry": outcome_to_json(entry)})
        if not isinstance(orbit(x, atlas, orbit_budget), Periodic):
            failures.append({"address": comp.address, "aperiodic": True})
    return _result("non_returning_octagons", failures)


def check_window(ia: InducedAtlas, rd: RenormalizationData, budget: int) -> CheckResult:
    report = window_sweep(ia, rd, budget)
    return _result(
        "lifting_window",
        [point_to_json(p) for p in report.unmatched],
        points=report.points,
        components=len(report.components),
        covered=report.covered,
        singular=report.singular,
        unresolved=report.unresolved,
    )


def run_suite(
    settings: Settings,
    atlas: TableAtlas,
    ia: InducedAtlas,
    rd: RenormalizationData,
    include_window: bool = False,
) -> List[CheckResult]:
    """Run every check in a fixed order with one seeded generator."""
    rng = make_rng(settings.seed)
    n = settings.samples
    checks: List[Callable[[], CheckResult]] = [
        lambda: check_necklace_images(atlas),
        lambda: check_z_invariance(atlas, n, rng),
        lambda: check_equivariance(atlas, n, rng),
        lambda: check_oracle_equivalence(ia, n, rng),
        lambda: check_gamma_conjugacy(ia, rd, n, settings.first_return_budget, rng),
        lambda: check_h_conjugacy(ia, n, settings.first_return_budget, rng),
        lambda: check_census(rd, settings.depth, settings.first_return_budget),
        lambda: check_period_families(rd, atlas, settings.depth, settings.orbit_budget),
        lambda: check_measure_identity(rd),
        lambda: check_aperiodic_point(rd, atlas, settings.aperiodic_budget),
        lambda: check_spiral_growth(rd, settings.first_return_budget),
        lambda: check_non_returning(rd, atlas, 100, settings.orbit_budget),
    ]
    if include_window:
        checks.append(lambda: check_window(ia, rd, settings.lift_budget))
    results = []
    for check in checks:
        result = check()
        logger.info("check %s: %s", result.name, "pass" if result.passed else "FAIL")
        results.append(result)
    failed = [r for r in results if not r.passed]
    if failed:
        logger.warning("%d checks failed: %s", len(failed), [r.name for r in failed])
    return results
