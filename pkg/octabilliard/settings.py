"""
Default budgets and limits, overridable from the environment and the CLI.
"""

import os
from dataclasses import dataclass, replace

ORBIT_BUDGET = 10**6
FIRST_RETURN_BUDGET = 10**4
FIRST_RETURN_PREFIX_CAP = 10**4
CENSUS_DEPTH = 3
CENSUS_DEPTH_CAP = 6
SAMPLE_COUNT = 10**3
SAMPLE_DENOMINATOR = 997
RNG_SEED = 20170203
APERIODIC_BUDGET = 10**5
LIFT_WINDOW_BUDGET = 2 * 10**4
LOG_LEVEL = "WARNING"
LANGUAGE = "en"

ENV_PREFIX = "OCTABILLIARD_"


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_PREFIX}{name} must be an integer, got {raw!r}") from exc


@dataclass(frozen=True)
class Settings:
    orbit_budget: int = ORBIT_BUDGET
    first_return_budget: int = FIRST_RETURN_BUDGET
    prefix_cap: int = FIRST_RETURN_PREFIX_CAP
    depth: int = CENSUS_DEPTH
    depth_cap: int = CENSUS_DEPTH_CAP
    samples: int = SAMPLE_COUNT
    seed: int = RNG_SEED
    aperiodic_budget: int = APERIODIC_BUDGET
    lift_budget: int = LIFT_WINDOW_BUDGET
    log_level: str = LOG_LEVEL
    language: str = LANGUAGE

    @classmethod
    def from_env(cls) -> "Settings":
        """Defaults with ``OCTABILLIARD_*`` environment overrides applied."""
        return cls(
            seed=_env_int("SEED", RNG_SEED),
            log_level=os.environ.get(ENV_PREFIX + "LOG_LEVEL", LOG_LEVEL).upper(),
            language=os.environ.get(ENV_PREFIX + "LANGUAGE", LANGUAGE),
        )

    def with_overrides(self, **overrides) -> "Settings":
        """Copy with every non-``None`` override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})
