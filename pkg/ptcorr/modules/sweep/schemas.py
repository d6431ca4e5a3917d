from __future__ import annotations

import math
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ...core.errors import ConfigError, InvalidRange

SWEEP_VARS = ("T", "J", "B", "gamma", "t", "phi")
# variables that only make sense with the PT operation applied
PT_VARS = ("t", "phi")

MEASURES = ("concurrence", "bell_max", "min_hs", "min_trace", "fidelity")
CORRELATION_MEASURES = MEASURES[:4]

# extra column emitted next to min_hs: the value on the x4 normalization
PAPER_SCALE_COLUMN = "min_hs_paper_scale"
MIN_HS_SCALE = "definition"


def parse_measures(text: str | None) -> tuple[str, ...]:
    """'concurrence, bell_max' -> ('concurrence', 'bell_max'); None -> all four correlations."""
    if text is None:
        return CORRELATION_MEASURES
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    return names


class SweepConfig(BaseModel):
    """One-variable sweep over the thermal (optionally PT-evolved) state."""

    model_config = ConfigDict(frozen=True)

    # fixed parameters
    J: float = 4.5
    gamma: float = 0.05
    B: float = 1.5
    T: float = 1.0
    f: float = 1.0
    phi: float = math.pi / 6
    t: float = 0.0
    evolve: bool = False

    # sweep
    var: str
    vmin: float
    vmax: float
    steps: int
    measures: tuple[str, ...] = CORRELATION_MEASURES
    input_state: str | None = None
    # parameters the user set explicitly; the sweep variable must not be among them
    pinned: tuple[str, ...] = ()

    # runtime
    workers: int = Field(0, ge=0)
    oracle_grid: int = Field(10_000, ge=100)

    @model_validator(mode="after")
    def _check(self):
        if self.var not in SWEEP_VARS:
            raise ConfigError(f"unknown sweep variable '{self.var}', expected one of {SWEEP_VARS}")
        if self.var in self.pinned:
            raise ConfigError(f"'{self.var}' is both swept and fixed")
        if not self.measures:
            raise ConfigError("no measures requested")
        unknown = [m for m in self.measures if m not in MEASURES]
        if unknown:
            raise ConfigError(f"unknown measures {unknown}, expected a subset of {MEASURES}")
        if len(set(self.measures)) != len(self.measures):
            raise ConfigError(f"duplicate measures in {self.measures}")
        if not (math.isfinite(self.vmin) and math.isfinite(self.vmax)) or not self.vmin < self.vmax:
            raise InvalidRange(f"need min < max, got [{self.vmin}, {self.vmax}]")
        if self.steps < 2:
            raise InvalidRange(f"need steps >= 2, got {self.steps}")
        return self

    @property
    def applies_pt(self) -> bool:
        return self.evolve or self.var in PT_VARS

    def grid(self) -> np.ndarray:
        return np.linspace(self.vmin, self.vmax, self.steps)

    def columns(self) -> list[str]:
        cols = [self.var]
        for m in self.measures:
            cols.append(m)
            if m == "min_hs":
                cols.append(PAPER_SCALE_COLUMN)
        return cols

    def fixed_parameters(self) -> dict[str, Any]:
        names = ["J", "gamma", "B", "T"]
        if self.applies_pt:
            names += ["f", "phi", "t"]
        return {n: getattr(self, n) for n in names if n != self.var}


class SweepTable(BaseModel):
    """Rectangular result table; first column is the strictly increasing sweep variable."""

    model_config = ConfigDict(frozen=True)

    columns: list[str]
    rows: list[list[float]]
    metadata: dict[str, str] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _rectangular(self):
        width = len(self.columns)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(f"row {i} has {len(row)} values, expected {width}")
        first = [r[0] for r in self.rows]
        if any(b <= a for a, b in zip(first, first[1:])):
            raise ValueError(f"first column '{self.columns[0]}' is not strictly increasing")
        return self

    def column(self, name: str) -> np.ndarray:
        idx = self.columns.index(name)
        return np.array([r[idx] for r in self.rows])
