import cmath
import math

import numpy as np

from ...core.config import TOL, Tolerances, parse_angle
from ...core.errors import InternalConsistencyError
from ..qmat.linalg import as_array, psd_sqrt
from ..qmat.pauli import KET_00, KET_11, PAULIS, PHI_PLUS, projector
from ..qmat.schemas import DensityMatrix
from .schemas import BELL_BASIS, ChannelWeights

# sigma_m (x) sigma_n for m, n = 0..3, shape (4, 4, 4, 4)
_PAULI_PAIRS = np.einsum("mab,ncd->mnacbd", PAULIS, PAULIS).reshape(4, 4, 4, 4)

_PURE_PURITY = 1 - 1e-10

DEFAULT_INPUT = DensityMatrix.from_ket(PHI_PLUS)


def channel_weights(rho_ch) -> ChannelWeights:
    m = as_array(rho_ch)
    q = np.einsum("kab,ba->k", BELL_BASIS.projectors, m).real
    return ChannelWeights.from_bell_weights(q)


def teleport_output(rho_in, rho_ch) -> DensityMatrix:
    """sum_mn p_mn (s_m (x) s_n) rho_in (s_m (x) s_n)."""
    p = channel_weights(rho_ch).p
    r = as_array(rho_in)
    terms = _PAULI_PAIRS @ r @ _PAULI_PAIRS
    return DensityMatrix.from_matrix(np.einsum("mn,mnij->ij", p, terms))


def fidelity_general(a: np.ndarray, b: np.ndarray, tol: Tolerances) -> float:
    # Tr sqrt(sqrt(a) b sqrt(a)) = sum of singular values of sqrt(a) sqrt(b)
    s = np.linalg.svd(psd_sqrt(a, tol) @ psd_sqrt(b, tol), compute_uv=False)
    return float(np.sum(s)) ** 2


def fidelity(rho_in, rho_out, tol: Tolerances = TOL) -> float:
    """Uhlmann fidelity {Tr sqrt(rho_in^1/2 rho_out rho_in^1/2)}^2.

    When either state is pure the overlap Tr(rho_in rho_out) is evaluated as
    well and the two must agree.
    """
    a, b = as_array(rho_in), as_array(rho_out)
    value = fidelity_general(a, b, tol)

    if max(np.trace(a @ a).real, np.trace(b @ b).real) > _PURE_PURITY:
        overlap = float(np.trace(a @ b).real)
        if abs(overlap - value) > tol.fidelity_routes:
            raise InternalConsistencyError(
                f"fidelity routes disagree: general {value!r}, pure overlap {overlap!r}"
            )

    return float(np.clip(value, 0.0, 1.0))


def teleport_fidelity(rho_ch, rho_in=None, tol: Tolerances = TOL) -> float:
    """Fidelity between the input and its image through the channel rho_ch.

    The input defaults to (|00> + |11>)/sqrt(2).
    """
    rho_in = DEFAULT_INPUT if rho_in is None else rho_in
    return fidelity(rho_in, teleport_output(rho_in, rho_ch), tol)


def input_state(a: complex, b: complex, phase: float = 0.0) -> DensityMatrix:
    """Pure input a|00> + b e^{i phase}|11> (normalized)."""
    psi = complex(a) * KET_00 + complex(b) * cmath.exp(1j * phase) * KET_11
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise ValueError("input state amplitudes are both zero")
    return DensityMatrix.from_matrix(projector(psi / norm))


def parse_input_state(text: str) -> DensityMatrix:
    """Parse 'a,b,phase' (phase optional, radians or pi fractions)."""
    parts = [s.strip() for s in text.split(",")]
    if len(parts) not in (2, 3):
        raise ValueError(f"expected 'a,b[,phase]', got '{text}'")
    try:
        a, b = complex(parts[0].replace(" ", "")), complex(parts[1].replace(" ", ""))
    except ValueError:
        raise ValueError(f"cannot parse amplitudes in '{text}'") from None
    phase = parse_angle(parts[2]) if len(parts) == 3 else 0.0
    if not (math.isfinite(abs(a)) and math.isfinite(abs(b))):
        raise ValueError(f"non-finite amplitude in '{text}'")
    return input_state(a, b, phase)
