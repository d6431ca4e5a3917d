"""Fixed-size complex linear algebra on 2x2 / 4x4 matrices."""

import math

import numpy as np

from ...core.config import TOL, Tolerances
from ...core.errors import NonHermitianInput, NonSymmetric, NotPSD
from ...core.logging import get_logger
from .pauli import PAULIS, SY_SY
from .schemas import BlochForm, CMat4, DensityMatrix

logger = get_logger(__name__)


def as_array(m) -> np.ndarray:
    """Accept a DensityMatrix or anything array-like."""
    if isinstance(m, DensityMatrix):
        return m.matrix
    return np.asarray(m, dtype=np.complex128)


def hermiticity_defect(m) -> float:
    m = as_array(m)
    return float(np.max(np.abs(m - m.conj().T)))


# ===== Spectral tools =====


def hermitian_eig(m, tol: Tolerances = TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvectors as columns). The input is
    symmetrized before the LAPACK call once its defect is within tolerance.
    """
    m = as_array(m)
    defect = hermiticity_defect(m)
    if defect > tol.hermitian_eig_input:
        raise NonHermitianInput(f"Hermiticity defect {defect:.3e}")
    return np.linalg.eigh((m + m.conj().T) / 2)


def psd_sqrt(m, tol: Tolerances = TOL) -> CMat4:
    """Principal square root of a positive semidefinite Hermitian matrix."""
    w, v = hermitian_eig(m, tol)
    if w[0] < -tol.psd_reject:
        raise NotPSD(f"minimum eigenvalue {w[0]:.3e}")
    if w[0] < -tol.min_eigenvalue:
        logger.warning(f"clamping eigenvalue {w[0]:.3e} beyond roundoff level")
    w = np.where(w < tol.sqrt_floor, 0.0, w)
    return (v * np.sqrt(w)) @ v.conj().T


def sym3_eig(s, tol: Tolerances = TOL) -> np.ndarray:
    """Eigenvalues (ascending) of a real symmetric 3x3 matrix.

    Roots of the characteristic cubic, trigonometric form.
    """
    s = np.asarray(s, dtype=float)
    if s.shape != (3, 3):
        raise NonSymmetric(f"expected 3x3, got {s.shape}")
    asym = float(np.max(np.abs(s - s.T)))
    if asym > tol.symmetric_input:
        raise NonSymmetric(f"symmetry defect {asym:.3e}")
    s = (s + s.T) / 2

    p1 = s[0, 1] ** 2 + s[0, 2] ** 2 + s[1, 2] ** 2
    if p1 == 0.0:
        return np.sort(np.diag(s))

    q = np.trace(s) / 3
    p2 = (s[0, 0] - q) ** 2 + (s[1, 1] - q) ** 2 + (s[2, 2] - q) ** 2 + 2 * p1
    p = math.sqrt(p2 / 6)
    b = (s - q * np.eye(3)) / p
    r = np.clip(np.linalg.det(b) / 2, -1.0, 1.0)
    theta = math.acos(r) / 3

    largest = q + 2 * p * math.cos(theta)
    smallest = q + 2 * p * math.cos(theta + 2 * math.pi / 3)
    middle = 3 * q - largest - smallest
    return np.array([smallest, middle, largest])


# ===== Norms =====


def _scalar_or_batch(value: np.ndarray) -> float | np.ndarray:
    return float(value) if np.ndim(value) == 0 else value


def trace_norm(m) -> float | np.ndarray:
    """Sum of singular values, Tr sqrt(M^dag M). Stacks (..., n, n) give one value per matrix."""
    return _scalar_or_batch(np.sum(np.linalg.svd(as_array(m), compute_uv=False), axis=-1))


def hs_norm_sq(m) -> float | np.ndarray:
    """Tr(M M^dag), per matrix for stacks."""
    return _scalar_or_batch(np.sum(np.abs(as_array(m)) ** 2, axis=(-2, -1)))


# ===== Two-qubit structure =====


def bloch_decompose(rho) -> BlochForm:
    """x_i = Tr(rho s_i (x) 1), y_i = Tr(rho 1 (x) s_i), r_ij = Tr(rho s_i (x) s_j)."""
    r4 = as_array(rho).reshape(2, 2, 2, 2)
    # t_mn = sum rho[a,b,a',b'] P_m[a',a] P_n[b',b]
    t = np.einsum("abcd,mca,ndb->mn", r4, PAULIS, PAULIS).real
    return BlochForm.from_arrays(x=t[1:, 0], y=t[0, 1:], R=t[1:, 1:])


def spin_flip(rho) -> CMat4:
    """(s_y (x) s_y) rho* (s_y (x) s_y)."""
    return SY_SY @ as_array(rho).conj() @ SY_SY
