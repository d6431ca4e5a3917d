"""Brute-force evaluation of measurement-induced nonlocality.

The distance ||rho - Pi_n(rho)|| is evaluated directly from the post-measurement
state, never from a closed formula, so it can validate the closed forms.
"""

import math

import numpy as np
from scipy.optimize import minimize

from ...core.config import TOL, Tolerances
from ...core.logging import get_logger
from ..qmat.linalg import as_array, bloch_decompose, hs_norm_sq, trace_norm
from ..qmat.pauli import I2, bloch_operator
from .schemas import MeasurementDirection, Metric

logger = get_logger(__name__)

_GOLDEN_ANGLE = math.pi * (3 - math.sqrt(5))
_REFINE_STARTS = 4


def fibonacci_sphere(count: int) -> np.ndarray:
    """count near-uniform unit vectors, shape (count, 3)."""
    i = np.arange(count)
    z = 1 - (2 * i + 1) / count
    r = np.sqrt(1 - z * z)
    az = i * _GOLDEN_ANGLE
    return np.column_stack([r * np.cos(az), r * np.sin(az), z])


def post_measurement(rho, n: np.ndarray) -> np.ndarray:
    """Pi_n(rho) = sum_k (P_k (x) 1) rho (P_k (x) 1), P_+- = (1 +- n.s)/2.

    n may be a single axis (3,) or a stack (N, 3); the result has matching batch shape.
    """
    rho = as_array(rho)
    ns = bloch_operator(n)
    out = np.zeros(ns.shape[:-2] + (4, 4), dtype=np.complex128)
    for sign in (+1, -1):
        p = (I2 + sign * ns) / 2
        pa = np.einsum("...ab,cd->...acbd", p, I2).reshape(ns.shape[:-2] + (4, 4))
        out += pa @ rho @ pa
    return out


def measurement_distance(rho, n: np.ndarray, metric: Metric | str) -> np.ndarray | float:
    """||rho - Pi_n(rho)||^2_HS or ||rho - Pi_n(rho)||_1 for one or many axes."""
    metric = Metric(metric)
    d = as_array(rho) - post_measurement(rho, n)
    return hs_norm_sq(d) if metric is Metric.HS else trace_norm(d)


def _refine(rho, metric: Metric, start: np.ndarray, tol: Tolerances) -> tuple[float, np.ndarray]:
    theta0 = math.acos(np.clip(start[2], -1.0, 1.0))
    az0 = math.atan2(start[1], start[0])

    def objective(angles: np.ndarray) -> float:
        n = MeasurementDirection.from_angles(*angles).n
        return -measurement_distance(rho, n, metric)

    res = minimize(
        objective,
        x0=np.array([theta0, az0]),
        method="Nelder-Mead",
        options={"xatol": tol.oracle_angle, "fatol": 1e-15, "maxiter": 4000},
    )
    return -float(res.fun), MeasurementDirection.from_angles(*res.x).n


def min_oracle(
    rho,
    metric: Metric | str,
    grid: int = 10_000,
    tol: Tolerances = TOL,
) -> float:
    """max over locally invariant projective measurements on a of the distance.

    x != 0 forces the measurement axis n = x/|x|; otherwise a Fibonacci-sphere
    grid search followed by local refinement from the best grid points.
    """
    metric = Metric(metric)
    x = bloch_decompose(rho).x
    norm_x = float(np.linalg.norm(x))
    if norm_x > tol.x_zero:
        return measurement_distance(rho, x / norm_x, metric)

    directions = fibonacci_sphere(grid)
    values = measurement_distance(rho, directions, metric)
    best = float(np.max(values))

    logger.debug(f"oracle grid search ({metric.value}): {grid} axes, grid max {best:.12g}")

    for idx in np.argsort(values)[::-1][:_REFINE_STARTS]:
        refined, _ = _refine(rho, metric, directions[idx], tol)
        best = max(best, refined)

    return best
