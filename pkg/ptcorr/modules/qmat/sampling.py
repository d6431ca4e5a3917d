"""Seeded random states and local unitaries for property checks."""

import numpy as np
from scipy.stats import unitary_group

from .pauli import projector


def random_state(rng: np.random.Generator) -> np.ndarray:
    """Full-rank Ginibre state G G^dag / Tr."""
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure(rng: np.random.Generator) -> np.ndarray:
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    return projector(psi / np.linalg.norm(psi))


def random_x_state(rng: np.random.Generator, real: bool = False, zero_x: bool = False) -> np.ndarray:
    """X-shaped state: diagonal p plus anti-diagonal couplings bounded by positivity.

    zero_x=True balances the populations so that the Bloch vector of a vanishes
    (p1 + p2 = p3 + p4).
    """
    if zero_x:
        left = rng.dirichlet(np.ones(2)) / 2
        right = rng.dirichlet(np.ones(2)) / 2
        p = np.array([left[0], left[1], right[0], right[1]])
    else:
        p = rng.dirichlet(np.ones(4))

    r14 = rng.uniform(0, 1) * np.sqrt(p[0] * p[3])
    r23 = rng.uniform(0, 1) * np.sqrt(p[1] * p[2])
    if not real:
        r14 = r14 * np.exp(1j * rng.uniform(0, 2 * np.pi))
        r23 = r23 * np.exp(1j * rng.uniform(0, 2 * np.pi))

    rho = np.diag(p).astype(np.complex128)
    rho[0, 3], rho[3, 0] = r14, np.conj(r14)
    rho[1, 2], rho[2, 1] = r23, np.conj(r23)
    return rho


def random_local_unitary(rng: np.random.Generator) -> np.ndarray:
    """Haar U_a (x) U_b."""
    ua = unitary_group.rvs(2, random_state=rng)
    ub = unitary_group.rvs(2, random_state=rng)
    return np.kron(ua, ub)
