from __future__ import annotations

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict

from ...core.config import TOL, Tolerances
from ...core.errors import InvalidState
from .pauli import PAULIS, projector

CMat2 = NDArray[np.complex128]
CMat4 = NDArray[np.complex128]


def _frozen(a: np.ndarray, dtype) -> np.ndarray:
    out = np.array(a, dtype=dtype, copy=True)
    out.flags.writeable = False
    return out


class DensityMatrix(BaseModel):
    """A validated two-qubit state in the basis {|00>, |01>, |10>, |11>}."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: np.ndarray
    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float

    @classmethod
    def from_matrix(cls, m: np.ndarray, tol: Tolerances = TOL) -> DensityMatrix:
        m = np.asarray(m, dtype=np.complex128)
        if m.shape != (4, 4):
            raise InvalidState(f"expected a 4x4 matrix, got shape {m.shape}")

        herm = float(np.max(np.abs(m - m.conj().T)))
        trace_def = float(abs(np.trace(m) - 1.0))
        # eigenvalues of the Hermitian part; the defect is reported separately
        min_eig = float(np.linalg.eigvalsh((m + m.conj().T) / 2)[0])

        if herm > tol.hermitian:
            raise InvalidState(f"not Hermitian (defect {herm:.3e})")
        if trace_def > tol.trace:
            raise InvalidState(f"trace differs from 1 by {trace_def:.3e}")
        if min_eig < -tol.min_eigenvalue:
            raise InvalidState(f"negative eigenvalue {min_eig:.3e}")

        return cls(
            matrix=_frozen(m, np.complex128),
            hermiticity_defect=herm,
            trace_defect=trace_def,
            min_eigenvalue=min_eig,
        )

    @classmethod
    def from_ket(cls, psi: np.ndarray) -> DensityMatrix:
        psi = np.asarray(psi, dtype=np.complex128)
        return cls.from_matrix(projector(psi / np.linalg.norm(psi)))

    @property
    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


MAXIMALLY_MIXED = DensityMatrix.from_matrix(np.eye(4) / 4)


class BlochForm(BaseModel):
    """rho = 1/4 [1 + x.s (x) 1 + 1 (x) y.s + sum_ij r_ij s_i (x) s_j]."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x: np.ndarray
    y: np.ndarray
    R: np.ndarray

    @classmethod
    def from_arrays(cls, x, y, R) -> BlochForm:
        return cls(
            x=_frozen(x, float),
            y=_frozen(y, float),
            R=_frozen(R, float),
        )

    def coefficients(self) -> np.ndarray:
        """4x4 real table t_mn = Tr(rho s_m (x) s_n), m, n = 0..3."""
        t = np.zeros((4, 4))
        t[0, 0] = 1.0
        t[1:, 0] = self.x
        t[0, 1:] = self.y
        t[1:, 1:] = self.R
        return t

    def reconstruct(self) -> CMat4:
        t = self.coefficients()
        basis = np.einsum("mab,ncd->mnacbd", PAULIS, PAULIS).reshape(4, 4, 4, 4)
        return np.einsum("mn,mnij->ij", t, basis) / 4

    def has_diagonal_R(self, tol: float = TOL.closed_form) -> bool:
        off = self.R - np.diag(np.diag(self.R))
        return bool(np.max(np.abs(off)) <= tol)

    def is_x_structure(self, tol: float = TOL.closed_form) -> bool:
        """True when x, y lie along z and R is diagonal (X-state Bloch pattern)."""
        off = self.R - np.diag(np.diag(self.R))
        return bool(
            np.max(np.abs(off)) <= tol
            and np.max(np.abs(self.x[:2])) <= tol
            and np.max(np.abs(self.y[:2])) <= tol
        )
