from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from ..qmat.pauli import PHI_MINUS, PHI_PLUS, PSI_MINUS, PSI_PLUS, projector

_WEIGHT_SUM_TOL = 1e-12


class BellBasis(BaseModel):
    """Projectors E^0..E^3 onto |Psi->, |Phi->, |Phi+>, |Psi+>.

    The index m of E^m pairs with sigma_m in the channel sum, so the order is fixed.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    labels: tuple[str, ...] = ("Psi-", "Phi-", "Phi+", "Psi+")
    projectors: np.ndarray

    @classmethod
    def standard(cls) -> BellBasis:
        stack = np.stack([projector(k) for k in (PSI_MINUS, PHI_MINUS, PHI_PLUS, PSI_PLUS)])
        stack.flags.writeable = False
        return cls(projectors=stack)


BELL_BASIS = BellBasis.standard()


class ChannelWeights(BaseModel):
    """p_mn = Tr(E^m rho_ch) Tr(E^n rho_ch)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    q: np.ndarray  # Bell-diagonal weights Tr(E^m rho_ch)
    p: np.ndarray

    @model_validator(mode="after")
    def _check(self):
        if np.any(self.q < -_WEIGHT_SUM_TOL):
            raise ValueError(f"negative Bell weight {self.q.min():.3e}")
        total = float(np.sum(self.p))
        if abs(total - 1.0) > _WEIGHT_SUM_TOL:
            raise ValueError(f"channel weights sum to {total!r}")
        return self

    @classmethod
    def from_bell_weights(cls, q: np.ndarray) -> ChannelWeights:
        q = np.clip(np.asarray(q, dtype=float), 0.0, None)
        p = np.outer(q, q)
        q.flags.writeable = False
        p.flags.writeable = False
        return cls(q=q, p=p)
