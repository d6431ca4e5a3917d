import math

import numpy as np
from scipy.linalg import expm

from ...core.errors import NonpositiveTemperature
from ...core.logging import get_logger
from ..qmat.linalg import hermitian_eig
from ..qmat.pauli import I2, SX, SY, SZ
from ..qmat.schemas import DensityMatrix
from .schemas import Eigenpair, ThermalElements, XYParams

logger = get_logger(__name__)

_SINHC_SERIES_BELOW = 1e-6


def sinhc(x: float) -> float:
    """sinh(x)/x, continuous at 0."""
    if abs(x) < _SINHC_SERIES_BELOW:
        return 1.0 + x * x / 6
    return math.sinh(x) / x


def inverse_temperature(T: float) -> float:
    """beta = 1/T with k_B = 1."""
    if not T > 0:
        raise NonpositiveTemperature(f"T must be > 0, got {T}")
    return 1.0 / T


# ===== Hamiltonian and spectrum =====


def build_hamiltonian(p: XYParams) -> np.ndarray:
    """Pauli-sum form of the XY Hamiltonian (4x4, Hermitian)."""
    xx = np.kron(SX, SX)
    yy = np.kron(SY, SY)
    z_total = np.kron(SZ, I2) + np.kron(I2, SZ)
    return 0.5 * (p.J * ((1 + p.gamma) * xx + (1 - p.gamma) * yy) + p.B * z_total)


def _field_block_vector(p: XYParams, sign: int) -> np.ndarray:
    """Eigenvector of the {|00>,|11>} block with energy sign*sqrt(eta)."""
    root = p.sqrt_eta
    # two proportional forms; the first vanishes when J*gamma = 0 and sign*B < 0
    a = np.array([p.B + sign * root, p.j_gamma])
    b = np.array([p.j_gamma, sign * root - p.B])
    amp = a if np.linalg.norm(a) >= np.linalg.norm(b) else b
    norm = np.linalg.norm(amp)
    if norm == 0.0:
        # eta = 0: the block is zero, any basis diagonalizes it
        amp, norm = (np.array([1.0, 0.0]) if sign > 0 else np.array([0.0, 1.0])), 1.0
    v = np.zeros(4, dtype=np.complex128)
    v[0], v[3] = amp / norm
    return v


def spectrum(p: XYParams) -> tuple[Eigenpair, ...]:
    """Closed-form eigenpairs E_1,2 = +-J, E_3,4 = +-sqrt(eta)."""
    s = 1 / math.sqrt(2)
    return (
        Eigenpair(label="E1", energy=p.J, vector=np.array([0, s, s, 0], dtype=np.complex128)),
        Eigenpair(label="E2", energy=-p.J, vector=np.array([0, s, -s, 0], dtype=np.complex128)),
        Eigenpair(label="E3", energy=p.sqrt_eta, vector=_field_block_vector(p, +1)),
        Eigenpair(label="E4", energy=-p.sqrt_eta, vector=_field_block_vector(p, -1)),
    )


# ===== Thermal state =====


def thermal_elements(p: XYParams, T: float, scaled: bool = False) -> ThermalElements:
    """Closed-form entries of Z rho(T).

    scaled=True divides every entry by exp(beta * max(|J|, sqrt(eta))) so that
    low temperatures do not overflow.
    """
    beta = inverse_temperature(T)
    x = beta * p.sqrt_eta
    y = beta * p.J
    s = beta * max(abs(p.J), p.sqrt_eta) if scaled else 0.0

    def ch(a: float) -> float:
        return 0.5 * (math.exp(a - s) + math.exp(-a - s))

    def sh(a: float) -> float:
        return 0.5 * (math.exp(a - s) - math.exp(-a - s))

    # (B/sqrt(eta)) sinh(x) = beta B sinhc(x), no 0/0 at eta = 0
    sinhc_x = sh(x) / x if abs(x) >= _SINHC_SERIES_BELOW else math.exp(-s) * (1 + x * x / 6)
    field_term = beta * p.B * sinhc_x

    mu_minus = ch(x) - field_term
    mu_plus = ch(x) + field_term
    kappa = ch(y)
    omega = -sh(y)
    nu = -beta * p.j_gamma * sinhc_x
    Z = 2 * (ch(x) + ch(y))

    if not math.isfinite(Z):
        raise OverflowError(
            f"thermal elements overflow at T={T}; use scaled=True for low temperatures"
        )

    return ThermalElements(
        mu_minus=mu_minus,
        mu_plus=mu_plus,
        kappa=kappa,
        omega=omega,
        nu=nu,
        Z=Z,
        beta=beta,
        log_scale=s,
    )


def thermal_matrix(e: ThermalElements) -> np.ndarray:
    """rho(T) assembled from its elements."""
    return e.matrix() / e.Z


def thermal_state(p: XYParams, T: float) -> DensityMatrix:
    """rho(T) = exp(-beta H)/Z from the closed-form element formulas."""
    return DensityMatrix.from_matrix(thermal_matrix(thermal_elements(p, T, scaled=True)))


def thermal_state_spectral(p: XYParams, T: float) -> np.ndarray:
    """(1/Z) sum_i exp(-beta E_i)|E_i><E_i| from a numerical eigendecomposition."""
    beta = inverse_temperature(T)
    energies, vectors = hermitian_eig(build_hamiltonian(p))
    weights = np.exp(-beta * (energies - energies[0]))
    rho = (vectors * weights) @ vectors.conj().T
    return rho / np.sum(weights)


def thermal_state_expm(p: XYParams, T: float) -> np.ndarray:
    """exp(-beta (H - E_0)) / Tr via scipy's matrix exponential."""
    beta = inverse_temperature(T)
    h = build_hamiltonian(p)
    e0 = -max(abs(p.J), p.sqrt_eta)
    g = expm(-beta * (h - e0 * np.eye(4)))
    return g / np.trace(g).real
