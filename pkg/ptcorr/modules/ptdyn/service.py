import math

import numpy as np
from scipy.linalg import expm

from ...core.config import TOL, Tolerances
from ...core.errors import DegenerateNormalization
from ..qmat.linalg import as_array
from ..qmat.pauli import local_op_a
from ..qmat.schemas import DensityMatrix
from ..xymodel.schemas import ThermalElements
from .schemas import EvolvedState, PTParams, check_unbroken


def pt_hamiltonian(f: float, phi: float) -> np.ndarray:
    """[[i f sin(phi), f], [f, -i f sin(phi)]]; eigenvalues +-f cos(phi)."""
    check_unbroken(phi)
    g = 1j * f * math.sin(phi)
    return np.array([[g, f], [f, -g]], dtype=np.complex128)


def period(f: float, phi: float) -> float:
    """Period pi/(f cos(phi)) of the normalized evolution."""
    check_unbroken(phi)
    return math.pi / (f * math.cos(phi))


def time_grid(
    f: float,
    phi: float,
    t_min: float = 0.0,
    t_max: float | None = None,
    points_per_period: int = 500,
) -> np.ndarray:
    """Uniform grid with spacing period/points_per_period; t_max defaults to two periods."""
    tau = period(f, phi)
    t_max = t_min + 2 * tau if t_max is None else t_max
    dt = tau / points_per_period
    n = max(2, int(round((t_max - t_min) / dt)) + 1)
    return t_min + dt * np.arange(n)


def _trig(p: PTParams) -> tuple[float, float, float, float]:
    psi = p.psi
    return (
        math.cos(psi - p.phi),
        math.cos(psi + p.phi),
        math.sin(psi),
        math.cos(p.phi),
    )


def evolution_operator(p: PTParams) -> np.ndarray:
    """U(t) = sec(phi) [[cos(psi - phi), -i sin(psi)], [-i sin(psi), cos(psi + phi)]]."""
    a, b, s, c = _trig(p)
    return np.array([[a, -1j * s], [-1j * s, b]], dtype=np.complex128) / c


def evolution_operator_expm(p: PTParams) -> np.ndarray:
    """exp(-i H t) via scipy."""
    return expm(-1j * p.t * pt_hamiltonian(p.f, p.phi))


# ===== Evolution =====


def closed_form_m1(e: ThermalElements, p: PTParams) -> float:
    """Common denominator of the closed-form evolved entries."""
    psi, phi = p.psi, p.phi
    sec, tan = 1 / math.cos(phi), math.tan(phi)
    return sec * (e.mu_minus + 2 * e.kappa + e.mu_plus) - tan * (
        (e.mu_minus + e.kappa) * math.sin(phi - 2 * psi)
        + (e.kappa + e.mu_plus) * math.sin(phi + 2 * psi)
    )


def evolve_state(
    rho,
    p: PTParams,
    elements: ThermalElements | None = None,
    tol: Tolerances = TOL,
) -> EvolvedState:
    """(U(t) (x) 1) rho (U(t)^dag (x) 1), normalized by its trace.

    Pass the thermal elements of rho to have M1 filled in.
    """
    ua = local_op_a(evolution_operator(p))
    raw = ua @ as_array(rho) @ ua.conj().T
    denom = float(np.trace(raw).real)
    if denom < tol.normalization_floor:
        raise DegenerateNormalization(f"evolved trace {denom!r} at t={p.t!r}")

    out = raw / denom
    # restore exact Hermiticity lost to roundoff
    out = (out + out.conj().T) / 2
    return EvolvedState(
        state=DensityMatrix.from_matrix(out, tol),
        denominator=denom,
        M1=closed_form_m1(e=elements, p=p) if elements is not None else None,
    )


def closed_form_entries(e: ThermalElements, p: PTParams, printed: bool = False) -> dict[str, complex]:
    """The ten independent entries of sec(phi) Z c^2 rho'(t), unnormalized.

    printed=True evaluates rho'_12 in its cot(psi) form, which is singular at
    psi = n pi; the default uses the regular form.
    """
    a, b, s, c = _trig(p)
    sec = 1 / c
    mm, mp, k, w, v = e.mu_minus, e.mu_plus, e.kappa, e.omega, e.nu

    if printed:
        with np.errstate(divide="ignore", invalid="ignore"):
            cot = np.float64(math.cos(p.psi)) / np.float64(s)
            r12 = -1j * s**2 * (w - v) * (math.tan(p.phi) + cot)
    else:
        r12 = 1j * sec * s * a * (v - w)

    return {
        "rho11": sec * (mm * a**2 + k * s**2),
        "rho13": 1j * sec * s * (mm * a - k * b),
        "rho33": sec * (mm * s**2 + k * b**2),
        "rho22": sec * (k * a**2 + mp * s**2),
        "rho24": 1j * sec * s * (k * a - mp * b),
        "rho44": sec * (k * s**2 + mp * b**2),
        "rho12": complex(r12),
        "rho14": sec * (w * s**2 + v * a * b),
        "rho23": sec * (w * a * b + v * s**2),
        "rho34": 1j * sec * s * (w - v) * b,
    }


ENTRY_INDEX = {
    "rho11": (0, 0),
    "rho12": (0, 1),
    "rho13": (0, 2),
    "rho14": (0, 3),
    "rho22": (1, 1),
    "rho23": (1, 2),
    "rho24": (1, 3),
    "rho33": (2, 2),
    "rho34": (2, 3),
    "rho44": (3, 3),
}


def closed_form_state(e: ThermalElements, p: PTParams, printed: bool = False) -> tuple[np.ndarray, float]:
    """Evolved thermal state assembled from the closed-form entries divided by M1.

    The lower triangle follows from rho'_ij = conj(rho'_ji). Returns (matrix, M1).
    """
    m1 = closed_form_m1(e, p)
    m = np.zeros((4, 4), dtype=np.complex128)
    for name, value in closed_form_entries(e, p, printed).items():
        i, j = ENTRY_INDEX[name]
        m[i, j] = value / m1
        m[j, i] = np.conj(value) / m1
    return m, m1
