"""Qubit state containers and dense linear-algebra primitives.

Conventions
-----------
- Qubit ordering is big-endian: qubit 0 is the leftmost tensor factor
  (Alice), so the basis ket |q0 q1 ... q_{n-1}> has index
  sum_i q_i * 2**(n-1-i).
- Pauli convention: sigma_1 = X, sigma_2 = Y, sigma_3 = Z.
- A two-qubit state decomposes as
  rho = (1/4) (I (x) I + a.sigma (x) I + I (x) b.sigma + sum_jk T_jk sigma_j (x) sigma_k)
  with local Bloch vectors a, b and the 3x3 spin correlation matrix
  T_jk = <sigma_j (x) sigma_k>.

All containers are immutable after construction and all operations are
pure functions, so concurrent read access is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10
NORM_TOL = 1e-12
EIG_HERMITICITY_TOL = 1e-10

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)
IDENTITY_2 = np.eye(2, dtype=complex)

# Stacked sigma_j (x) sigma_k, sigma_j (x) I and I (x) sigma_k operators for
# fast two-qubit Bloch decomposition via a single einsum each.
_SIGMA_A = np.stack([np.kron(s, IDENTITY_2) for s in PAULIS])
_SIGMA_B = np.stack([np.kron(IDENTITY_2, s) for s in PAULIS])
_SIGMA_AB = np.stack([np.kron(sj, sk) for sj in PAULIS for sk in PAULIS])


def _frozen_array(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class DensityMatrix:
    """Validated d x d density matrix over ``qubit_count`` qubits.

    Construction rejects matrices that are not Hermitian (1e-12), not
    unit trace (1e-12) or not positive semidefinite (smallest eigenvalue
    below -1e-10).
    """

    entries: np.ndarray
    qubit_count: int

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {arr.shape}")
        dim = arr.shape[0]
        if self.qubit_count < 1 or 2 ** self.qubit_count != dim:
            raise ValueError(
                f"dimension {dim} does not match qubit_count {self.qubit_count}"
            )
        if np.abs(arr - arr.conj().T).max() > HERMITICITY_TOL:
            raise ValueError("density matrix is not Hermitian within 1e-12")
        if abs(np.trace(arr) - 1.0) > TRACE_TOL:
            raise ValueError(f"trace {np.trace(arr)} is not 1 within 1e-12")
        if np.linalg.eigvalsh(arr).min() < EIGENVALUE_FLOOR:
            raise ValueError("density matrix has an eigenvalue below -1e-10")
        object.__setattr__(self, "entries", _frozen_array(arr, complex))

    @classmethod
    def from_matrix(cls, matrix) -> "DensityMatrix":
        """Build a DensityMatrix, inferring the qubit count from the shape."""
        arr = np.asarray(matrix, dtype=complex)
        dim = arr.shape[0] if arr.ndim == 2 else 0
        qubits = max(dim, 1).bit_length() - 1
        return cls(arr, qubits)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector over ``qubit_count`` qubits."""

    amplitudes: np.ndarray
    qubit_count: int

    def __post_init__(self):
        arr = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if self.qubit_count < 1 or 2 ** self.qubit_count != arr.size:
            raise ValueError(
                f"amplitude count {arr.size} does not match qubit_count {self.qubit_count}"
            )
        if abs(np.vdot(arr, arr).real - 1.0) > NORM_TOL:
            raise ValueError("amplitudes are not normalized within 1e-12")
        object.__setattr__(self, "amplitudes", _frozen_array(arr, complex))

    @classmethod
    def from_amplitudes(cls, amplitudes) -> "PureState":
        arr = np.asarray(amplitudes, dtype=complex).reshape(-1)
        qubits = max(arr.size, 1).bit_length() - 1
        return cls(arr, qubits)

    def to_density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()),
                             self.qubit_count)


@dataclass(frozen=True)
class BlochForm:
    """Bloch parametrization (a, b, T) of a two-qubit state."""

    a: np.ndarray
    b: np.ndarray
    T: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float).reshape(-1)
        b = np.asarray(self.b, dtype=float).reshape(-1)
        T = np.asarray(self.T, dtype=float)
        if a.shape != (3,) or b.shape != (3,) or T.shape != (3, 3):
            raise ValueError("BlochForm requires two 3-vectors and a 3x3 matrix")
        object.__setattr__(self, "a", _frozen_array(a, float))
        object.__setattr__(self, "b", _frozen_array(b, float))
        object.__setattr__(self, "T", _frozen_array(T, float))


def basis_ket(bits: str) -> PureState:
    """Computational basis ket from a bit string, e.g. ``basis_ket("010")``."""
    n = len(bits)
    amps = np.zeros(2 ** n, dtype=complex)
    amps[int(bits, 2)] = 1.0
    return PureState(amps, n)


def tensor_product(x: DensityMatrix, y: DensityMatrix) -> DensityMatrix:
    """Kronecker product of two states; qubit counts add."""
    return DensityMatrix(np.kron(x.entries, y.entries),
                         x.qubit_count + y.qubit_count)


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Reduced state over ``keep``, listed in the desired output order.

    Raises ValueError on an empty list, duplicate indices or indices out
    of range.
    """
    keep = list(keep)
    n = rho.qubit_count
    if not keep:
        raise ValueError("keep list must not be empty")
    if len(set(keep)) != len(keep):
        raise ValueError(f"duplicate qubit index in keep list {keep}")
    if any(q < 0 or q >= n for q in keep):
        raise ValueError(f"qubit index out of range in keep list {keep}")

    tensor = rho.entries.reshape((2,) * (2 * n))
    remaining = n
    for q in sorted((q for q in range(n) if q not in keep), reverse=True):
        tensor = np.trace(tensor, axis1=q, axis2=q + remaining)
        remaining -= 1

    # Traced tensor axes follow ascending qubit index; reorder per `keep`.
    ascending = sorted(keep)
    perm = [ascending.index(q) for q in keep]
    k = len(keep)
    tensor = tensor.transpose(perm + [p + k for p in perm])
    return DensityMatrix(tensor.reshape(2 ** k, 2 ** k), k)


def partial_transpose(rho: DensityMatrix, subsystem: int) -> np.ndarray:
    """Transpose one qubit's indices; result may fail positivity.

    Returns a plain array (Hermitian, unit trace) since the output of a
    partial transpose is generally not a physical state.
    """
    n = rho.qubit_count
    if subsystem < 0 or subsystem >= n:
        raise ValueError(f"subsystem {subsystem} out of range for {n} qubits")
    tensor = rho.entries.reshape((2,) * (2 * n))
    tensor = np.swapaxes(tensor, subsystem, subsystem + n)
    return tensor.reshape(rho.dim, rho.dim)


def bloch_vector(rho: DensityMatrix) -> np.ndarray:
    """Bloch vector (<X>, <Y>, <Z>) of a single-qubit state."""
    if rho.qubit_count != 1:
        raise ValueError("bloch_vector requires a single-qubit state")
    return np.einsum("ij,aji->a", rho.entries, np.stack(PAULIS)).real


def bloch_decompose(rho: DensityMatrix) -> BlochForm:
    """Extract (a, b, T) from a two-qubit state."""
    if rho.qubit_count != 2:
        raise ValueError("bloch_decompose requires a two-qubit state")
    m = rho.entries
    a = np.einsum("ij,aji->a", m, _SIGMA_A).real
    b = np.einsum("ij,aji->a", m, _SIGMA_B).real
    T = np.einsum("ij,aji->a", m, _SIGMA_AB).real.reshape(3, 3)
    return BlochForm(a, b, T)


def bloch_reconstruct(form: BlochForm) -> DensityMatrix:
    """Rebuild the two-qubit state from (a, b, T).

    Raises ValueError when the parameters do not describe a physical
    state (negative eigenvalue beyond tolerance).
    """
    m = np.eye(4, dtype=complex)
    m += np.einsum("a,aij->ij", form.a, _SIGMA_A)
    m += np.einsum("a,aij->ij", form.b, _SIGMA_B)
    m += np.einsum("a,aij->ij", form.T.reshape(9), _SIGMA_AB)
    try:
        return DensityMatrix(m / 4.0, 2)
    except ValueError as exc:
        raise ValueError(f"BlochForm does not describe a physical state: {exc}") from exc


def hs_norm_sq(X: np.ndarray) -> float:
    """Squared Hilbert-Schmidt norm tr(X^dag X) = sum |X_ij|^2."""
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError("hs_norm_sq requires a square matrix")
    return float(np.sum(np.abs(X) ** 2))


def trace_norm(X: np.ndarray) -> float:
    """Trace norm: sum of singular values."""
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError("trace_norm requires a square matrix")
    return float(np.sum(np.linalg.svd(X, compute_uv=False)))


def hermitian_eigs(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues in descending order plus matching orthonormal eigenvectors.

    The eigenvectors are the columns of the returned matrix. Raises
    ValueError when the input deviates from Hermiticity by more than 1e-10.
    """
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError("hermitian_eigs requires a square matrix")
    if np.abs(X - X.conj().T).max() > EIG_HERMITICITY_TOL:
        raise ValueError("matrix is not Hermitian within 1e-10")
    values, vectors = np.linalg.eigh(X)
    order = np.argsort(values)[::-1]
    return values[order], vectors[:, order]


def embed_one_qubit_operator(op: np.ndarray, qubit: int, qubit_count: int) -> np.ndarray:
    """Pad a 2x2 operator with identities so it acts on one tensor slot."""
    if qubit < 0 or qubit >= qubit_count:
        raise ValueError(f"qubit {qubit} out of range for {qubit_count} qubits")
    left = np.eye(2 ** qubit, dtype=complex)
    right = np.eye(2 ** (qubit_count - qubit - 1), dtype=complex)
    return np.kron(np.kron(left, op), right)
