import numpy as np
import pytest

from ptcorr.core.errors import InvalidState, NonHermitianInput, NonSymmetric, NotPSD
from ptcorr.modules.qmat.linalg import (
    bloch_decompose,
    hermitian_eig,
    hs_norm_sq,
    psd_sqrt,
    spin_flip,
    sym3_eig,
    trace_norm,
)
from ptcorr.modules.qmat.pauli import (
    KET_00,
    KET_01,
    KET_11,
    PHI_PLUS,
    PSI_MINUS,
    SX,
    SY,
    SZ,
    bloch_operator,
    pauli_orthogonality_defect,
    projector,
)
from ptcorr.modules.qmat.sampling import random_local_unitary, random_state, random_x_state
from ptcorr.modules.qmat.schemas import MAXIMALLY_MIXED, BlochForm, DensityMatrix


def test_pauli_algebra():
    assert pauli_orthogonality_defect() == 0.0
    assert np.allclose(SX @ SY, 1j * SZ)
    assert np.allclose(bloch_operator([0, 0, 1]), SZ)
    stacked = bloch_operator(np.eye(3))
    assert stacked.shape == (3, 2, 2)
    assert np.allclose(stacked[1], SY)


def test_density_matrix_validation():
    rho = DensityMatrix.from_ket(PSI_MINUS)
    assert rho.purity == pytest.approx(1.0)
    assert MAXIMALLY_MIXED.purity == pytest.approx(0.25)
    assert not rho.matrix.flags.writeable

    with pytest.raises(InvalidState, match="4x4"):
        DensityMatrix.from_matrix(np.eye(2) / 2)
    with pytest.raises(InvalidState, match="trace"):
        DensityMatrix.from_matrix(np.eye(4) / 2)
    with pytest.raises(InvalidState, match="Hermitian"):
        m = np.eye(4, dtype=complex) / 4
        m[0, 1] = 0.1j
        DensityMatrix.from_matrix(m)
    with pytest.raises(InvalidState, match="negative eigenvalue"):
        DensityMatrix.from_matrix(np.diag([0.6, 0.6, -0.2, 0.0]))


def test_hermitian_eig(rng):
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = (g + g.conj().T) / 2
    w, v = hermitian_eig(h)
    assert np.all(np.diff(w) >= 0)
    assert np.max(np.abs((v * w) @ v.conj().T - h)) < 1e-12
    assert np.max(np.abs(v.conj().T @ v - np.eye(4))) < 1e-10
    assert np.max(np.abs(h @ v - v * w)) < 1e-9

    with pytest.raises(NonHermitianInput):
        hermitian_eig(g)


def test_psd_sqrt(rng):
    rho = random_state(rng)
    root = psd_sqrt(rho)
    assert np.max(np.abs(root @ root - rho)) < 1e-12

    # rank-1 input: the square root of a projector is itself
    p = projector(PHI_PLUS)
    assert np.max(np.abs(psd_sqrt(p) - p)) < 1e-12

    with pytest.raises(NotPSD):
        psd_sqrt(np.diag([1.0, 0.5, 0.0, -0.1]))


def test_sym3_eig(rng):
    for _ in range(20):
        a = rng.normal(size=(3, 3))
        s = a + a.T
        assert np.max(np.abs(sym3_eig(s) - np.linalg.eigvalsh(s))) < 1e-10

    assert np.array_equal(sym3_eig(np.diag([3.0, -1.0, 2.0])), [-1.0, 2.0, 3.0])

    with pytest.raises(NonSymmetric):
        sym3_eig(np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))
    with pytest.raises(NonSymmetric):
        sym3_eig(np.eye(2))


def test_norms():
    m = np.diag([0.5, -0.25, 0.0, 0.25])
    assert trace_norm(m) == pytest.approx(1.0)
    assert hs_norm_sq(m) == pytest.approx(0.375)

    stack = np.stack([m, 2 * m, np.zeros((4, 4))])
    assert np.allclose(trace_norm(stack), [1.0, 2.0, 0.0])
    assert np.allclose(hs_norm_sq(stack), [0.375, 1.5, 0.0])


def test_bloch_decompose_examples():
    singlet = bloch_decompose(projector(PSI_MINUS))
    assert np.allclose(singlet.x, 0)
    assert np.allclose(singlet.y, 0)
    assert np.allclose(singlet.R, -np.eye(3))

    product = bloch_decompose(projector(KET_01))
    assert np.allclose(product.x, [0, 0, 1])
    assert np.allclose(product.y, [0, 0, -1])
    assert np.allclose(product.R, np.diag([0, 0, -1]))
    assert product.is_x_structure()


def test_bloch_reconstruct(rng):
    for _ in range(10):
        rho = random_state(rng)
        assert np.max(np.abs(bloch_decompose(rho).reconstruct() - rho)) < 1e-12

    form = BlochForm.from_arrays(x=[0, 0, 0], y=[0, 0, 0], R=np.zeros((3, 3)))
    assert np.allclose(form.reconstruct(), np.eye(4) / 4)


def test_spin_flip_fixes_bell_states():
    for ket in (PSI_MINUS, PHI_PLUS):
        p = projector(ket)
        assert np.allclose(spin_flip(p), p)


def test_spin_flip_examples(rng):
    assert np.allclose(spin_flip(projector(KET_00)), projector(KET_11))
    for _ in range(100):
        rho = random_state(rng)
        assert np.max(np.abs(spin_flip(spin_flip(rho)) - rho)) < 1e-12


def test_random_x_state_shape(rng):
    for real in (False, True):
        for zero_x in (False, True):
            rho = random_x_state(rng, real=real, zero_x=zero_x)
            DensityMatrix.from_matrix(rho)
            bloch = bloch_decompose(rho)
            assert np.max(np.abs(bloch.x[:2])) < 1e-15
            # complex couplings rotate R within the xy block
            if real:
                assert bloch.is_x_structure()
            if zero_x:
                assert abs(bloch.x[2]) < 1e-12
            if real:
                assert np.all(rho.imag == 0)


def test_random_local_unitary(rng):
    u = random_local_unitary(rng)
    assert np.allclose(u @ u.conj().T, np.eye(4))
