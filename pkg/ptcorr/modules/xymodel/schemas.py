from __future__ import annotations

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class XYParams(BaseModel):
    """Two-spin XY model: H = 1/2 [J((1+g) sx sx + (1-g) sy sy) + B (sz_1 + sz_2)]."""

    model_config = ConfigDict(frozen=True)

    J: float = Field(..., description="exchange coupling (energy)")
    gamma: float = Field(..., description="xy-plane anisotropy")
    B: float = Field(..., description="field along z (energy)")

    @property
    def j_gamma(self) -> float:
        return self.J * self.gamma

    @property
    def eta(self) -> float:
        return self.B**2 + self.j_gamma**2

    @property
    def sqrt_eta(self) -> float:
        return math.sqrt(self.eta)


class ThermalElements(BaseModel):
    """Entries of Z rho(T) and the partition function.

    With log_scale s != 0 every entry (and Z) is multiplied by e^{-s}; the
    normalized state is unaffected.
    """

    model_config = ConfigDict(frozen=True)

    mu_minus: float
    mu_plus: float
    kappa: float
    omega: float
    nu: float
    Z: float
    beta: float
    log_scale: float = 0.0

    @property
    def mu_bar(self) -> float:
        return (self.mu_minus + self.mu_plus) / 2

    def matrix(self) -> np.ndarray:
        """Z rho(T) in the basis {|00>, |01>, |10>, |11>}."""
        return np.array(
            [
                [self.mu_minus, 0, 0, self.nu],
                [0, self.kappa, self.omega, 0],
                [0, self.omega, self.kappa, 0],
                [self.nu, 0, 0, self.mu_plus],
            ],
            dtype=np.complex128,
        )


class Eigenpair(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    label: str
    energy: float
    vector: np.ndarray
