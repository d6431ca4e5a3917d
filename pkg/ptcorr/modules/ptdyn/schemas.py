from __future__ import annotations

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ...core.errors import BrokenPhase
from ..qmat.schemas import DensityMatrix


def check_unbroken(phi: float) -> None:
    if not abs(phi) < math.pi / 2:
        raise BrokenPhase(f"|phi| = {abs(phi)!r} is not below pi/2 (broken PT phase)")


class PTParams(BaseModel):
    """Local PT-symmetric operation: energy scale f, non-Hermiticity phi, time t."""

    model_config = ConfigDict(frozen=True)

    f: float = Field(..., gt=0)
    phi: float
    t: float = Field(0.0, ge=0)

    @model_validator(mode="after")
    def _unbroken(self):
        check_unbroken(self.phi)
        return self

    @property
    def psi(self) -> float:
        return self.f * self.t * math.cos(self.phi)

    @property
    def period(self) -> float:
        return math.pi / (self.f * math.cos(self.phi))

    def at(self, t: float) -> PTParams:
        return self.model_copy(update={"t": t})


class EvolvedState(BaseModel):
    model_config = ConfigDict(frozen=True)

    state: DensityMatrix
    # Tr[(U (x) 1) rho (U^dag (x) 1)]
    denominator: float = Field(..., gt=0)
    # closed-form common denominator; only for thermal inputs
    M1: float | None = None


class EntryStatus(str, Enum):
    CONFIRMED = "confirmed"
    CORRECTED = "corrected"
    MISMATCH = "mismatch"


class EntryFinding(BaseModel):
    """Comparison of one printed closed-form entry against the numerical evolution."""

    model_config = ConfigDict(frozen=True)

    entry: str
    status: EntryStatus
    printed_form: str
    corrected_form: str | None = None
    printed_deviation: float  # inf when the printed form is singular on the grid
    corrected_deviation: float | None = None
    samples: int
