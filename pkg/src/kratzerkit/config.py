"""Run configuration: unit presets, grid overrides, output format.

The solver only ever sees one number from the unit system, the kinetic
coefficient k in E = -k u'' + V u (k = hbar**2 / (2 mu) in whatever units
the potential uses).  Presets:

  atomic         k = 1 / (2 mu), mass in electron masses (default mu = 1)
  spectroscopic  k = 16.857629206 / mu, mass in amu, energies in 1/cm,
                 lengths in Angstrom
  custom         kinetic_coefficient given explicitly
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import DomainError, SpecLoadError
from .solver import RadialGrid, default_grid

ATOMIC = "atomic"
SPECTROSCOPIC = "spectroscopic"
CUSTOM = "custom"
UNIT_PRESETS = (ATOMIC, SPECTROSCOPIC, CUSTOM)

JSON = "json"
CSV = "csv"
OUTPUT_FORMATS = (JSON, CSV)

# hbar**2 / 2 in (1/cm) * Angstrom**2 * amu
_SPECTROSCOPIC_K = 16.857629206


@dataclass(frozen=True)
class RunConfig:
    """Everything a command run needs beyond the potential spec itself."""

    unit_preset: str = ATOMIC
    mass: float = 1.0
    kinetic_coefficient: float | None = None
    r_min: float | None = None
    r_max: float | None = None
    n_points: int | None = None
    output_format: str = JSON

    def __post_init__(self):
        if self.unit_preset not in UNIT_PRESETS:
            raise DomainError(
                f"unknown unit preset {self.unit_preset!r}; "
                f"choose one of {', '.join(UNIT_PRESETS)}"
            )
        if self.output_format not in OUTPUT_FORMATS:
            raise DomainError(
                f"unknown output format {self.output_format!r}"
            )
        if not (self.mass > 0.0) or not math.isfinite(self.mass):
            raise DomainError("mass must be positive and finite")
        if self.unit_preset == CUSTOM and self.kinetic_coefficient is None:
            raise DomainError(
                "the custom unit preset requires an explicit "
                "kinetic coefficient"
            )
        if self.kinetic_coefficient is not None:
            k = self.kinetic_coefficient
            if not (k > 0.0) or not math.isfinite(k):
                raise DomainError(
                    "kinetic coefficient must be positive and finite"
                )
        if self.n_points is not None and self.n_points < 200:
            raise DomainError("n_points must be at least 200")

    @property
    def kinetic(self) -> float:
        """The kinetic coefficient implied by the preset and mass."""
        if self.kinetic_coefficient is not None:
            return self.kinetic_coefficient
        if self.unit_preset == ATOMIC:
            return 1.0 / (2.0 * self.mass)
        return _SPECTROSCOPIC_K / self.mass

    def grid_for(self, re: float) -> RadialGrid:
        """The radial grid, starting from the family default for ``re``."""
        base = default_grid(re)
        r_min = self.r_min if self.r_min is not None else base.r_min
        r_max = self.r_max if self.r_max is not None else base.r_max
        n = self.n_points if self.n_points is not None else base.n_points
        return RadialGrid(r_min, r_max, n)


_CONFIG_KEYS = {
    "unit_preset", "mass", "kinetic_coefficient",
    "r_min", "r_max", "n_points", "output_format",
}


def config_from_dict(record: dict) -> RunConfig:
    if not isinstance(record, dict):
        raise SpecLoadError("run config must be a JSON object")
    unknown = set(record) - _CONFIG_KEYS
    if unknown:
        raise SpecLoadError(
            f"unknown config keys: {', '.join(sorted(unknown))}"
        )
    try:
        return RunConfig(**record)
    except TypeError as exc:
        raise SpecLoadError(f"bad run config: {exc}") from exc


def load_config(path: str) -> RunConfig:
    """Read a RunConfig from a JSON file."""
    try:
        with open(path, "r") as fh:
            record = json.load(fh)
    except OSError as exc:
        raise SpecLoadError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecLoadError(f"config file is not valid JSON: {exc}") from exc
    return config_from_dict(record)
