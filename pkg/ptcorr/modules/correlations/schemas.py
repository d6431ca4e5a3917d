import math
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

_SLACK = 1e-9


class Metric(str, Enum):
    HS = "hs"
    TRACE = "trace"


class MeasurementDirection(BaseModel):
    """Bloch axis n of the projective measurement {(1 +- n.s)/2} on subsystem a."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: np.ndarray

    @field_validator("n")
    @classmethod
    def _unit(cls, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.shape != (3,) or abs(np.linalg.norm(v) - 1.0) > 1e-12:
            raise ValueError("measurement direction must be a unit 3-vector")
        return v

    @classmethod
    def from_angles(cls, theta: float, azimuth: float) -> "MeasurementDirection":
        return cls(
            n=np.array(
                [
                    math.sin(theta) * math.cos(azimuth),
                    math.sin(theta) * math.sin(azimuth),
                    math.cos(theta),
                ]
            )
        )


class CorrelationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    concurrence: float = Field(..., ge=0.0, le=1.0 + _SLACK)
    bell_max: float = Field(..., ge=0.0, le=2 * math.sqrt(2) + _SLACK)
    min_hs: float = Field(..., ge=0.0)
    min_trace: float = Field(..., ge=0.0)

    @property
    def violates_bell(self) -> bool:
        return self.bell_max > 2.0

    @model_validator(mode="after")
    def _violation_implies_entanglement(self):
        if self.bell_max > 2.0 + _SLACK and self.concurrence <= 0.0:
            raise ValueError("Bell violation reported for a separable state")
        return self
