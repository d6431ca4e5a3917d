import math

import numpy as np
import pytest

from ptcorr.core.config import TOL
from ptcorr.modules.correlations.measures import concurrence
from ptcorr.modules.qmat.pauli import PHI_PLUS, PSI_MINUS, projector
from ptcorr.modules.qmat.sampling import random_pure, random_state
from ptcorr.modules.teleport.schemas import BELL_BASIS, ChannelWeights
from ptcorr.modules.teleport.service import (
    DEFAULT_INPUT,
    channel_weights,
    fidelity,
    fidelity_general,
    input_state,
    parse_input_state,
    teleport_fidelity,
    teleport_output,
)
from ptcorr.modules.xymodel.service import thermal_elements, thermal_matrix, thermal_state


def test_bell_basis():
    e = BELL_BASIS.projectors
    assert BELL_BASIS.labels == ("Psi-", "Phi-", "Phi+", "Psi+")
    assert np.allclose(e.sum(axis=0), np.eye(4))
    for m in range(4):
        assert np.allclose(e[m] @ e[m], e[m])
        for n in range(m + 1, 4):
            assert np.allclose(e[m] @ e[n], 0)
    assert np.allclose(e[0], projector(PSI_MINUS))


def test_channel_weights_examples():
    w = channel_weights(projector(PSI_MINUS))
    assert np.allclose(w.q, [1, 0, 0, 0])
    assert w.p[0, 0] == pytest.approx(1.0)

    w = channel_weights(np.eye(4) / 4)
    assert np.allclose(w.p, 1 / 16)
    assert w.p.sum() == pytest.approx(1.0, abs=1e-12)


def test_channel_weights_thermal(fig_model):
    e = thermal_elements(fig_model, 1.0, scaled=True)
    q = channel_weights(thermal_matrix(e)).q
    expected = np.array([e.kappa - e.omega, e.mu_bar - e.nu, e.mu_bar + e.nu, e.kappa + e.omega]) / e.Z
    assert np.max(np.abs(q - expected)) < 1e-12


def test_channel_weights_validation():
    with pytest.raises(ValueError):
        ChannelWeights.from_bell_weights(np.array([0.5, 0.5, 0.5, 0.0]))
    with pytest.raises(ValueError):
        ChannelWeights(q=np.array([1.2, -0.2, 0.0, 0.0]), p=np.eye(4) / 4)


def test_teleport_output_examples(rng):
    rho_in = random_pure(rng)
    out = teleport_output(rho_in, projector(PSI_MINUS))
    assert np.allclose(out.matrix, rho_in)

    out = teleport_output(rho_in, np.eye(4) / 4)
    assert np.allclose(out.matrix, np.eye(4) / 4)

    phi = projector(PHI_PLUS)
    assert np.allclose(teleport_output(phi, phi).matrix, phi)


def test_teleport_output_is_valid(rng):
    for _ in range(10):
        out = teleport_output(random_pure(rng), random_state(rng))
        assert abs(np.trace(out.matrix) - 1) < 1e-12
        assert out.min_eigenvalue > -1e-10


def test_fidelity_examples(rng):
    phi = projector(PHI_PLUS)
    assert fidelity(phi, phi) == pytest.approx(1.0, abs=1e-12)
    assert fidelity(phi, np.eye(4) / 4) == pytest.approx(0.25, abs=1e-12)

    a, b = random_state(rng), random_state(rng)
    assert fidelity(a, b) == pytest.approx(fidelity(b, a), abs=1e-10)
    assert fidelity(a, a) == pytest.approx(1.0, abs=1e-10)
    assert 0.0 <= fidelity(a, b) <= 1.0


def test_fidelity_routes(rng):
    for _ in range(100):
        pure, mixed = random_pure(rng), random_state(rng)
        overlap = float(np.trace(pure @ mixed).real)
        assert abs(fidelity_general(pure, mixed, TOL) - overlap) < 1e-10


def test_teleport_fidelity_limits():
    assert teleport_fidelity(projector(PSI_MINUS)) == pytest.approx(1.0, abs=1e-12)
    assert teleport_fidelity(np.eye(4) / 4) == pytest.approx(0.25, abs=1e-12)


def test_fidelity_decreases_with_temperature(fig_model):
    ts = np.linspace(0.1, 10, 50)
    values = [teleport_fidelity(thermal_state(fig_model, float(T))) for T in ts]
    assert all(b <= a + 1e-9 for a, b in zip(values, values[1:]))
    assert min(values) > 0.25
    assert teleport_fidelity(thermal_state(fig_model, 1000.0)) == pytest.approx(0.25, abs=1e-3)


def test_fidelity_without_entanglement(fig_model):
    rho = thermal_state(fig_model, 6.0)
    assert concurrence(rho) == 0.0
    assert teleport_fidelity(rho) > 0.25


def test_bell_diagonal_fidelity_is_sum_of_squares(fig_model):
    rho = thermal_state(fig_model, 2.0)
    q = channel_weights(rho).q
    assert teleport_fidelity(rho) == pytest.approx(float(np.sum(q**2)), abs=1e-12)


def test_input_state():
    assert np.allclose(input_state(1, 1).matrix, DEFAULT_INPUT.matrix)

    rho = parse_input_state("1, 1, pi/2")
    psi = np.array([1, 0, 0, 1j]) / math.sqrt(2)
    assert np.allclose(rho.matrix, projector(psi))

    assert np.allclose(parse_input_state("0.6,0.8").matrix, input_state(0.6, 0.8).matrix)
    # complex amplitudes are accepted
    assert np.allclose(parse_input_state("1j,1").matrix, input_state(1j, 1).matrix)


@pytest.mark.parametrize("text", ["1", "1,2,3,4", "a,b", "0,0", "1,1,north"])
def test_input_state_errors(text):
    with pytest.raises(ValueError):
        parse_input_state(text)


def test_teleport_custom_input(fig_model):
    rho = thermal_state(fig_model, 1.0)
    custom = parse_input_state("1,0")  # product input |00>
    value = teleport_fidelity(rho, custom)
    assert 0.25 <= value <= 1.0
    assert value != pytest.approx(teleport_fidelity(rho))
