"""Closed-form correlation quantifiers of a two-qubit state."""

import math
from typing import Literal

import numpy as np

from ...core.config import TOL, Tolerances
from ...core.errors import NonXState
from ..qmat.linalg import as_array, bloch_decompose, psd_sqrt, spin_flip, sym3_eig
from .oracle import min_oracle
from .schemas import CorrelationReport, Metric

TSIRELSON = 2 * math.sqrt(2)

NormReading = Literal["euclidean", "l1"]


# ===== Entanglement =====


def concurrence(rho, tol: Tolerances = TOL) -> float:
    """Wootters concurrence max{0, l1 - l2 - l3 - l4}.

    The l_i (square roots of the eigenvalues of sqrt(rho) rho~ sqrt(rho)) are
    taken as singular values of sqrt(rho) sqrt(rho~), which avoids square roots
    of roundoff-negative eigenvalues.
    """
    m = as_array(rho)
    lam = np.linalg.svd(psd_sqrt(m, tol) @ psd_sqrt(spin_flip(m), tol), compute_uv=False)
    lam = np.where(lam < tol.concurrence_clamp, 0.0, lam)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence_x_state(rho) -> float:
    """2 max{0, |r14| - sqrt(r22 r33), |r23| - sqrt(r11 r44)} for X-shaped states."""
    m = as_array(rho)
    d = np.clip(np.diag(m).real, 0.0, None)
    a = abs(m[0, 3]) - math.sqrt(d[1] * d[2])
    b = abs(m[1, 2]) - math.sqrt(d[0] * d[3])
    return float(2 * max(0.0, a, b))


# ===== Nonlocality =====


def bell_max(rho, tol: Tolerances = TOL) -> float:
    """Maximal CHSH value 2 sqrt(u1 + u2), u_i the two largest eigenvalues of R^T R."""
    R = bloch_decompose(rho).R
    u = np.clip(sym3_eig(R.T @ R, tol), 0.0, None)
    return float(min(2 * math.sqrt(u[1] + u[2]), TSIRELSON))


def min_hs(rho, tol: Tolerances = TOL) -> float:
    """Hilbert-Schmidt MIN, normalized to max ||rho - Pi(rho)||_2^2."""
    bloch = bloch_decompose(rho)
    x, R = bloch.x, bloch.R
    rrt = R @ R.T
    total = float(np.trace(rrt))
    norm_x = float(np.linalg.norm(x))
    if norm_x > tol.x_zero:
        value = total - float(x @ rrt @ x) / norm_x**2
    else:
        value = total - float(sym3_eig(rrt, tol)[0])
    return max(0.0, value / 4)


def min_trace(rho, reading: NormReading = "euclidean", tol: Tolerances = TOL) -> float:
    """Trace-norm MIN for states with a diagonal correlation matrix.

    reading selects how the norms of x and c = diag(R) in the x != 0 branch are
    taken. Only "euclidean" agrees with the direct evaluation; "l1" is kept for
    comparison.
    """
    bloch = bloch_decompose(rho)
    if not bloch.has_diagonal_R(tol.closed_form):
        raise NonXState("closed-form trace MIN needs a diagonal correlation matrix")

    c = np.diag(bloch.R)
    x = bloch.x
    if float(np.linalg.norm(x)) <= tol.x_zero:
        return float(np.max(np.abs(c)))

    if reading == "euclidean":
        norm_x = float(np.linalg.norm(x))
        norm_c_sq = float(np.sum(c**2))
    elif reading == "l1":
        norm_x = float(np.sum(np.abs(x)))
        norm_c_sq = float(np.sum(np.abs(c))) ** 2
    else:
        raise ValueError(f"unknown norm reading '{reading}'")

    x2, c2 = x**2, c**2
    alpha = norm_c_sq * norm_x**2 - float(np.sum(c2 * x2))
    beta = sum(x2[i] * c2[(i + 1) % 3] * c2[(i + 2) % 3] for i in range(3))
    spread = 2 * math.sqrt(max(beta, 0.0)) * norm_x
    chi_plus = max(alpha + spread, 0.0)

    if reading == "euclidean" and chi_plus > 0.0:
        # chi- = (alpha^2 - 4 beta |x|^2) / chi+, no cancellation in the small root
        chi_minus = max(_chi_product(x2, np.abs(c)), 0.0) / chi_plus
    else:
        chi_minus = max(alpha - spread, 0.0)
    return float((math.sqrt(chi_plus) + math.sqrt(chi_minus)) / (2 * norm_x))


def _chi_product(x2: np.ndarray, c_abs: np.ndarray) -> float:
    """alpha^2 - 4 beta |x|^2 expanded over pairs of Bloch axes.

    The single-axis terms are exact squares x_i^4 (c_j^2 - c_k^2)^2.
    """
    u = np.array([c_abs[(i + 1) % 3] ** 2 for i in range(3)])
    v = np.array([c_abs[(i + 2) % 3] ** 2 for i in range(3)])
    diff = np.array(
        [
            (c_abs[(i + 1) % 3] - c_abs[(i + 2) % 3]) * (c_abs[(i + 1) % 3] + c_abs[(i + 2) % 3])
            for i in range(3)
        ]
    )
    s, p = u + v, u * v

    total = float(np.sum(x2**2 * diff**2))
    for i in range(3):
        for k in range(i + 1, 3):
            total += 2 * x2[i] * x2[k] * (s[i] * s[k] - 2 * p[i] - 2 * p[k])
    return total


# ===== Combined =====


def correlation_report(rho, grid: int = 10_000, tol: Tolerances = TOL) -> CorrelationReport:
    """All four measures; trace MIN falls back to the oracle off the X-state pattern."""
    bloch = bloch_decompose(rho)
    if bloch.is_x_structure(tol.closed_form):
        trace_min = min_trace(rho, tol=tol)
    else:
        trace_min = min_oracle(rho, Metric.TRACE, grid=grid, tol=tol)

    return CorrelationReport(
        concurrence=concurrence(rho, tol),
        bell_max=bell_max(rho, tol),
        min_hs=min_hs(rho, tol),
        min_trace=trace_min,
    )
