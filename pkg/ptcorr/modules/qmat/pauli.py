import numpy as np

# ===== Single-qubit operators =====

I2 = np.eye(2, dtype=np.complex128)
SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)

# sigma_0 .. sigma_3, index order used everywhere (teleportation weights included)
PAULIS = np.stack([I2, SX, SY, SZ])
SIGMA = PAULIS[1:]

I4 = np.eye(4, dtype=np.complex128)
SY_SY = np.kron(SY, SY)

for _m in (I2, SX, SY, SZ, PAULIS, SIGMA, I4, SY_SY):
    _m.flags.writeable = False


# ===== Two-qubit kets, basis {|00>, |01>, |10>, |11>} =====


def ket(*amplitudes: complex) -> np.ndarray:
    v = np.asarray(amplitudes, dtype=np.complex128)
    return v / np.linalg.norm(v)


KET_00 = ket(1, 0, 0, 0)
KET_01 = ket(0, 1, 0, 0)
KET_10 = ket(0, 0, 1, 0)
KET_11 = ket(0, 0, 0, 1)

PSI_MINUS = ket(0, 1, -1, 0)
PSI_PLUS = ket(0, 1, 1, 0)
PHI_MINUS = ket(1, 0, 0, -1)
PHI_PLUS = ket(1, 0, 0, 1)


def projector(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=np.complex128)
    return np.outer(psi, psi.conj())


def local_op_a(op: np.ndarray) -> np.ndarray:
    """op (x) 1 : act on subsystem a only."""
    return np.kron(op, I2)


def bloch_operator(n: np.ndarray) -> np.ndarray:
    """n . sigma for a real 3-vector n (or a stack of them, shape (..., 3))."""
    n = np.asarray(n, dtype=float)
    return np.tensordot(n, SIGMA, axes=([-1], [0]))


def pauli_orthogonality_defect() -> float:
    """max |Tr(s_i s_j) - 2 delta_ij| over i, j in 0..3."""
    gram = np.einsum("iab,jba->ij", PAULIS, PAULIS)
    return float(np.max(np.abs(gram - 2 * np.eye(4))))
