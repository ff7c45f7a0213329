import numpy as np
import pytest

from qcorr import DensityMatrix, PureState, basis_ket


@pytest.fixture
def bell_phi_plus() -> DensityMatrix:
    """(|00> + |11>)/sqrt(2) as a density matrix."""
    return PureState(np.array([1, 0, 0, 1]) / np.sqrt(2), 2).to_density()


@pytest.fixture
def bell_psi_plus() -> DensityMatrix:
    return PureState(np.array([0, 1, 1, 0]) / np.sqrt(2), 2).to_density()


@pytest.fixture
def classical_mixture() -> DensityMatrix:
    """(|00><00| + |11><11|)/2."""
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = 0.5
    return DensityMatrix(m, 2)


@pytest.fixture
def maximally_mixed_2q() -> DensityMatrix:
    return DensityMatrix(np.eye(4) / 4.0, 2)


def single_qubit_from_bloch(vec) -> DensityMatrix:
    """(I + vec . sigma)/2; requires |vec| <= 1."""
    from qcorr.states import PAULIS

    m = np.eye(2, dtype=complex)
    for component, sigma in zip(vec, PAULIS):
        m = m + component * sigma
    return DensityMatrix(m / 2.0, 1)


def random_product_state(rng) -> DensityMatrix:
    """Two-qubit product of two random single-qubit mixed states."""
    from qcorr import tensor_product

    def factor():
        vec = rng.normal(size=3)
        vec *= rng.uniform(0.0, 0.99) / np.linalg.norm(vec)
        return single_qubit_from_bloch(vec)

    return tensor_product(factor(), factor())


def permute_qubits(rho: DensityMatrix, perm) -> DensityMatrix:
    """Relabel qubits: output qubit i is input qubit perm[i]."""
    n = rho.qubit_count
    tensor = rho.entries.reshape((2,) * (2 * n))
    axes = list(perm) + [p + n for p in perm]
    return DensityMatrix(tensor.transpose(axes).reshape(rho.dim, rho.dim), n)


def ket(bits: str) -> np.ndarray:
    return basis_ket(bits).amplitudes.copy()
