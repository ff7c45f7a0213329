"""Bipartite nonclassical-correlation measures.

Implemented measures, all over density matrices with a single-qubit
measured side:

- ``min_hs_closed`` / ``min_hs_oracle``: measurement-induced nonlocality,
  the maximal squared Hilbert-Schmidt disturbance over local von Neumann
  measurements that preserve the measured party's marginal.
- ``horodecki_M`` and ``chsh_value``: the maximal-CHSH-violation
  parameter M = s1 + s2 (two largest eigenvalues of T T^t) together with
  explicit optimal settings, and the CHSH expectation at given settings.
- ``geometric_discord_closed`` / ``geometric_discord_oracle``: minimal
  squared Hilbert-Schmidt disturbance over all local von Neumann
  measurements.
- ``negativity``: trace norm of the partial transpose minus one.
- ``quantum_discord``: entropic discord with projective qubit
  measurements, entropies in bits.
- ``min_trace_norm_oracle``: trace-norm variant of the
  measurement-induced nonlocality.

Closed forms and oracles are deliberately independent code paths: the
oracles evaluate the defining disturbance expressions with explicit
projectors so they can cross-check the algebraic shortcuts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .optimize import DEFAULT_GRID_POINTS, DEFAULT_REFINE_ITERS, search_axis
from .states import (PAULIS, DensityMatrix, bloch_decompose, bloch_vector,
                     embed_one_qubit_operator, hs_norm_sq, partial_trace,
                     trace_norm)

#: |a| threshold below which the measured marginal counts as maximally
#: mixed and every measurement axis preserves it.
AXIS_DEGENERACY_TOL = 1e-9
#: Values in [-NEGATIVE_CLIP, 0] are reported as exactly 0.
NEGATIVE_CLIP = 1e-10
_PROBABILITY_FLOOR = 1e-12
_EIG_FLOOR = 1e-15


class Measure(str, enum.Enum):
    MIN_HS = "MIN_HS"
    MIN_TRACE = "MIN_TRACE"
    HORODECKI = "HORODECKI"
    GEOM_DISCORD = "GEOM_DISCORD"
    NEGATIVITY = "NEGATIVITY"
    DISCORD = "DISCORD"


class Direction(str, enum.Enum):
    A_TO_B = "A_to_B"
    B_TO_A = "B_to_A"
    SYMMETRIC = "symmetric"


class Method(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    ORACLE = "oracle"


@dataclass(frozen=True)
class MeasureValue:
    name: Measure
    value: float
    direction: Direction
    method: Method
    optimizer_direction: np.ndarray | None = None

    def __post_init__(self):
        if self.value < -NEGATIVE_CLIP:
            raise ValueError(f"measure value {self.value} below -1e-10")
        if self.optimizer_direction is not None:
            axis = np.asarray(self.optimizer_direction, dtype=float).reshape(3)
            axis.setflags(write=False)
            object.__setattr__(self, "optimizer_direction", axis)


@dataclass(frozen=True)
class ChshSettings:
    """One optimal choice of CHSH measurement directions."""

    a1: np.ndarray
    a2: np.ndarray
    b1: np.ndarray
    b2: np.ndarray


def _clip(value: float) -> float:
    return 0.0 if -NEGATIVE_CLIP <= value < 0.0 else float(value)


def _direction_for(measured_qubit: int, qubit_count: int) -> Direction:
    if qubit_count == 2 and measured_qubit == 1:
        return Direction.B_TO_A
    return Direction.A_TO_B


def _check_unit(vec: np.ndarray, tol: float, what: str) -> np.ndarray:
    vec = np.asarray(vec, dtype=float).reshape(-1)
    if vec.shape != (3,) or abs(np.linalg.norm(vec) - 1.0) > tol:
        raise ValueError(f"{what} must be a unit 3-vector")
    return vec


def _marginal_bloch(rho: DensityMatrix, qubit: int) -> np.ndarray:
    return bloch_vector(partial_trace(rho, [qubit]))


# ---------------------------------------------------------------------------
# Local projective measurement and its batched disturbance evaluators.
# ---------------------------------------------------------------------------

def apply_local_measurement(rho: DensityMatrix, measured_qubit: int,
                            axis: np.ndarray) -> DensityMatrix:
    """Dephase one qubit along ``axis``: rho -> sum_j P_j rho P_j.

    The projectors are P(+-) = (I +- axis.sigma)/2 on the measured qubit
    and identity elsewhere. The map is idempotent.
    """
    axis = _check_unit(axis, 1e-12, "measurement axis")
    n_sigma = axis[0] * PAULIS[0] + axis[1] * PAULIS[1] + axis[2] * PAULIS[2]
    out = np.zeros_like(rho.entries)
    for sign in (1.0, -1.0):
        proj = embed_one_qubit_operator((np.eye(2) + sign * n_sigma) / 2.0,
                                        measured_qubit, rho.qubit_count)
        out = out + proj @ rho.entries @ proj
    return DensityMatrix(out, rho.qubit_count)


def _embedded_sigmas(qubit: int, qubit_count: int) -> np.ndarray:
    """(3, d, d) stack of the Pauli operators acting on one tensor slot."""
    return np.stack([embed_one_qubit_operator(s, qubit, qubit_count)
                     for s in PAULIS])


def _embedded_projectors(axes: np.ndarray, qubit: int,
                         qubit_count: int) -> tuple[np.ndarray, np.ndarray]:
    """Stacked (k, d, d) projector pairs for a batch of measurement axes."""
    axes = np.asarray(axes, dtype=float)
    spin = np.einsum("ka,aij->kij", axes, _embedded_sigmas(qubit, qubit_count))
    eye = np.eye(2 ** qubit_count)
    return (eye + spin) / 2.0, (eye - spin) / 2.0


def _measured_batch(rho_entries: np.ndarray, qubit: int, qubit_count: int,
                    axes: np.ndarray) -> np.ndarray:
    """Post-measurement states sum_j P_j rho P_j for each axis in the batch."""
    plus, minus = _embedded_projectors(axes, qubit, qubit_count)
    return plus @ rho_entries @ plus + minus @ rho_entries @ minus


def _hs_disturbance_batch(rho_entries, qubit, qubit_count, axes) -> np.ndarray:
    diff = rho_entries - _measured_batch(rho_entries, qubit, qubit_count, axes)
    return np.sum(np.abs(diff) ** 2, axis=(1, 2))


def _trace_disturbance_batch(rho_entries, qubit, qubit_count, axes) -> np.ndarray:
    diff = rho_entries - _measured_batch(rho_entries, qubit, qubit_count, axes)
    return np.linalg.svd(diff, compute_uv=False).sum(axis=1)


def _measured_scalar(rho_entries: np.ndarray, eye: np.ndarray,
                     sigmas: np.ndarray, axis: np.ndarray) -> np.ndarray:
    """Single-axis post-measurement state, kept allocation-light for the
    refinement loop."""
    spin = np.tensordot(axis, sigmas, axes=1)
    plus = (eye + spin) / 2.0
    minus = (eye - spin) / 2.0
    return plus @ rho_entries @ plus + minus @ rho_entries @ minus


def _disturbance_search(rho: DensityMatrix, measured_qubit: int, kind: str,
                        *, maximize: bool, grid_points: int,
                        refine_iters: int, candidates: int = 2):
    entries = rho.entries
    n = rho.qubit_count
    sigmas = _embedded_sigmas(measured_qubit, n)
    eye = np.eye(2 ** n)
    batch_fn = (_hs_disturbance_batch if kind == "hs"
                else _trace_disturbance_batch)

    def batch(axes):
        return batch_fn(entries, measured_qubit, n, axes)

    if kind == "hs":
        def scalar(axis):
            diff = entries - _measured_scalar(entries, eye, sigmas, axis)
            return float(np.sum(np.abs(diff) ** 2))
    else:
        def scalar(axis):
            diff = entries - _measured_scalar(entries, eye, sigmas, axis)
            return float(np.sum(np.linalg.svd(diff, compute_uv=False)))

    return search_axis(scalar, maximize=maximize, grid_points=grid_points,
                       refine_iters=refine_iters, batch_objective=batch,
                       candidates=candidates)


# ---------------------------------------------------------------------------
# Measurement-induced nonlocality (Hilbert-Schmidt norm).
# ---------------------------------------------------------------------------

def min_hs_closed(rho: DensityMatrix,
                  direction: Direction = Direction.A_TO_B) -> MeasureValue:
    """Two-qubit MIN in closed form.

    For measured-side Bloch vector a and spin correlation matrix T:
    (1/4)(tr T T^t - a^t T T^t a / a^2) when a != 0, else
    (1/4)(tr T T^t - s3) with s3 the smallest eigenvalue of T T^t.
    """
    form = bloch_decompose(rho)
    if direction == Direction.B_TO_A:
        a, T = form.b, form.T.T
    else:
        a, T = form.a, form.T
    ttt = T @ T.T
    a_norm = np.linalg.norm(a)
    if a_norm > AXIS_DEGENERACY_TOL:
        value = 0.25 * (np.trace(ttt) - a @ ttt @ a / a_norm ** 2)
        axis = a / a_norm
    else:
        eigvals, eigvecs = np.linalg.eigh(ttt)
        value = 0.25 * (np.trace(ttt) - eigvals[0])
        axis = eigvecs[:, 0]
    return MeasureValue(Measure.MIN_HS, _clip(value), direction,
                        Method.CLOSED_FORM, axis)


def min_hs_oracle(rho: DensityMatrix, measured_qubit: int = 0,
                  grid_points: int = DEFAULT_GRID_POINTS,
                  refine_iters: int = DEFAULT_REFINE_ITERS) -> MeasureValue:
    """MIN by direct maximization of the defining disturbance.

    When the measured marginal has |a| > 0 the only marginal-preserving
    von Neumann measurement is along a/|a| and is evaluated directly;
    otherwise every axis preserves the marginal and the disturbance is
    maximized over the sphere. Works for any 2 x 2^k bipartition, which
    provides the pivot-versus-rest variant.
    """
    a = _marginal_bloch(rho, measured_qubit)
    a_norm = np.linalg.norm(a)
    if a_norm > AXIS_DEGENERACY_TOL:
        axis = a / a_norm
        measured = apply_local_measurement(rho, measured_qubit, axis)
        value = hs_norm_sq(rho.entries - measured.entries)
    else:
        value, axis = _disturbance_search(
            rho, measured_qubit, "hs", maximize=True,
            grid_points=grid_points, refine_iters=refine_iters)
    direction = _direction_for(measured_qubit, rho.qubit_count)
    return MeasureValue(Measure.MIN_HS, _clip(value), direction,
                        Method.ORACLE, axis)


# ---------------------------------------------------------------------------
# Bell-CHSH nonlocality.
# ---------------------------------------------------------------------------

def chsh_value(rho: DensityMatrix, a1, a2, b1, b2) -> float:
    """CHSH expectation tr(B rho) for dichotomic spin observables.

    B = A1 (x) B1 + A1 (x) B2 + A2 (x) B1 - A2 (x) B2 with
    A_i = a_i . sigma and B_j = b_j . sigma.
    """
    if rho.qubit_count != 2:
        raise ValueError("chsh_value requires a two-qubit state")
    vecs = [_check_unit(v, 1e-10, name)
            for v, name in ((a1, "a1"), (a2, "a2"), (b1, "b1"), (b2, "b2"))]

    def spin(v):
        return v[0] * PAULIS[0] + v[1] * PAULIS[1] + v[2] * PAULIS[2]

    A1, A2, B1, B2 = map(spin, vecs)
    bell = (np.kron(A1, B1) + np.kron(A1, B2)
            + np.kron(A2, B1) - np.kron(A2, B2))
    value = np.trace(bell @ rho.entries)
    if abs(value.imag) > 1e-10:
        raise RuntimeError(f"CHSH expectation has imaginary residue {value.imag}")
    return float(value.real)


def horodecki_M(rho: DensityMatrix) -> tuple[MeasureValue, ChshSettings]:
    """Maximal-violation parameter M = s1 + s2 with optimal settings.

    The settings come from the singular triplets of T: with
    T = U diag(s) V^t, Alice measures along the two leading left singular
    vectors and Bob along cos(t) c1 +- sin(t) c2 built from the right
    singular vectors, tan(t) = sigma2/sigma1. The CHSH value at these
    settings equals 2 sqrt(M).
    """
    form = bloch_decompose(rho)
    U, sing, Vh = np.linalg.svd(form.T)
    m = float(sing[0] ** 2 + sing[1] ** 2)
    theta = np.arctan2(sing[1], sing[0])
    c1, c2 = Vh[0], Vh[1]
    settings = ChshSettings(
        a1=U[:, 0].copy(),
        a2=U[:, 1].copy(),
        b1=np.cos(theta) * c1 + np.sin(theta) * c2,
        b2=np.cos(theta) * c1 - np.sin(theta) * c2,
    )
    value = MeasureValue(Measure.HORODECKI, _clip(m), Direction.SYMMETRIC,
                         Method.CLOSED_FORM)
    return value, settings


# ---------------------------------------------------------------------------
# Geometric discord.
# ---------------------------------------------------------------------------

def geometric_discord_closed(rho: DensityMatrix,
                             direction: Direction = Direction.A_TO_B
                             ) -> MeasureValue:
    """Two-qubit geometric discord (1/4)(a^2 + tr T T^t - k_max).

    k_max is the largest eigenvalue of K = a a^t + T T^t; the minimizing
    measurement axis is the matching eigenvector.
    """
    form = bloch_decompose(rho)
    if direction == Direction.B_TO_A:
        a, T = form.b, form.T.T
    else:
        a, T = form.a, form.T
    K = np.outer(a, a) + T @ T.T
    eigvals, eigvecs = np.linalg.eigh(K)
    value = 0.25 * (a @ a + np.trace(T @ T.T) - eigvals[-1])
    return MeasureValue(Measure.GEOM_DISCORD, _clip(value), direction,
                        Method.CLOSED_FORM, eigvecs[:, -1])


def geometric_discord_oracle(rho: DensityMatrix, measured_qubit: int = 0,
                             grid_points: int = DEFAULT_GRID_POINTS,
                             refine_iters: int = DEFAULT_REFINE_ITERS
                             ) -> MeasureValue:
    """Geometric discord by minimizing the disturbance over all axes."""
    value, axis = _disturbance_search(
        rho, measured_qubit, "hs", maximize=False,
        grid_points=grid_points, refine_iters=refine_iters)
    direction = _direction_for(measured_qubit, rho.qubit_count)
    return MeasureValue(Measure.GEOM_DISCORD, _clip(value), direction,
                        Method.ORACLE, axis)


# ---------------------------------------------------------------------------
# Negativity.
# ---------------------------------------------------------------------------

def negativity(rho: DensityMatrix,
               transposed_qubits=(0,)) -> MeasureValue:
    """Entanglement negativity ||rho^(T_A)||_1 - 1 across a bipartition.

    ``transposed_qubits`` lists the qubits forming the transposed side.
    """
    qubits = list(transposed_qubits)
    if not qubits or len(set(qubits)) != len(qubits):
        raise ValueError("transposed_qubits must be non-empty and distinct")
    if len(qubits) >= rho.qubit_count:
        raise ValueError("transposed side must be a proper subset of the qubits")
    n = rho.qubit_count
    tensor = rho.entries.reshape((2,) * (2 * n))
    for q in qubits:
        if q < 0 or q >= n:
            raise ValueError(f"qubit {q} out of range")
        tensor = np.swapaxes(tensor, q, q + n)
    value = trace_norm(tensor.reshape(rho.dim, rho.dim)) - 1.0
    return MeasureValue(Measure.NEGATIVITY, _clip(value), Direction.SYMMETRIC,
                        Method.CLOSED_FORM)


# ---------------------------------------------------------------------------
# Entropic quantum discord.
# ---------------------------------------------------------------------------

def _entropy_bits_from_eigs(eigs: np.ndarray) -> np.ndarray:
    safe = np.where(eigs > _EIG_FLOOR, eigs, 1.0)
    return -np.sum(safe * np.log2(safe), axis=-1)


def von_neumann_entropy(matrix: np.ndarray) -> float:
    """Von Neumann entropy in bits of a positive unit-trace matrix."""
    return float(_entropy_bits_from_eigs(np.linalg.eigvalsh(matrix)))


def binary_entropy_h(a: float) -> float:
    """h(a) = -sum over p in {(1-a)/2, (1+a)/2} of p log2 p, for a in [0, 1]."""
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"binary_entropy_h requires a in [0, 1], got {a}")
    return float(_entropy_bits_from_eigs(np.array([(1.0 - a) / 2.0,
                                                   (1.0 + a) / 2.0])))


def _eigvals_psd_batch(mats: np.ndarray) -> np.ndarray:
    """Eigenvalues of stacked Hermitian PSD matrices, clipped at 0.

    2 x 2 inputs use the trace/determinant closed form, which is far
    cheaper than per-matrix LAPACK calls inside grid scans.
    """
    if mats.shape[-1] == 2:
        tr = mats[..., 0, 0].real + mats[..., 1, 1].real
        det = (mats[..., 0, 0] * mats[..., 1, 1]
               - mats[..., 0, 1] * mats[..., 1, 0]).real
        gap = np.sqrt(np.maximum(tr * tr - 4.0 * det, 0.0))
        eigs = np.stack([(tr - gap) / 2.0, (tr + gap) / 2.0], axis=-1)
    else:
        eigs = np.linalg.eigvalsh(mats)
    return np.clip(eigs, 0.0, None)


def _traced_conditional(post: np.ndarray, qubit: int,
                        qubit_count: int) -> np.ndarray:
    """Trace the measured qubit out of stacked post-measurement states."""
    dl = 2 ** qubit
    dr = 2 ** (qubit_count - qubit - 1)
    lead = post.shape[:-2]
    shaped = post.reshape(lead + (dl, 2, dr, dl, 2, dr))
    offset = len(lead)
    cond = np.trace(shaped, axis1=offset + 1, axis2=offset + 4)
    return cond.reshape(lead + (dl * dr, dl * dr))


def _conditional_entropy_batch(rho_entries: np.ndarray, qubit: int,
                               qubit_count: int, axes: np.ndarray) -> np.ndarray:
    """sum_j p_j S(rho_rest | outcome j) in bits for each axis."""
    plus, minus = _embedded_projectors(axes, qubit, qubit_count)
    total = np.zeros(len(axes))
    for proj in (plus, minus):
        post = proj @ rho_entries @ proj
        p = np.einsum("kii->k", post).real
        cond = _traced_conditional(post, qubit, qubit_count)
        ok = p > _PROBABILITY_FLOOR
        if np.any(ok):
            eigs = _eigvals_psd_batch(cond[ok] / p[ok, None, None])
            total[ok] += p[ok] * _entropy_bits_from_eigs(eigs)
    return total


def _conditional_entropy_scalar(rho_entries: np.ndarray, eye: np.ndarray,
                                sigmas: np.ndarray, qubit: int,
                                qubit_count: int, axis: np.ndarray) -> float:
    spin = np.tensordot(axis, sigmas, axes=1)
    total = 0.0
    for sign in (1.0, -1.0):
        proj = (eye + sign * spin) / 2.0
        post = proj @ rho_entries @ proj
        p = np.trace(post).real
        if p > _PROBABILITY_FLOOR:
            cond = _traced_conditional(post, qubit, qubit_count)
            eigs = _eigvals_psd_batch(cond / p)
            total += p * float(_entropy_bits_from_eigs(eigs))
    return total


def quantum_discord(rho: DensityMatrix, measured_qubit: int = 0,
                    grid_points: int = DEFAULT_GRID_POINTS,
                    refine_iters: int = DEFAULT_REFINE_ITERS) -> MeasureValue:
    """Entropic discord S(rho_A) - S(rho_AB) + min over axes of the
    measured conditional entropy, with projective measurements on one
    qubit and entropies in bits.

    The optimizer returns an upper bound on the true minimum together
    with the best measurement axis found.
    """
    marginal = partial_trace(rho, [measured_qubit])
    base = (von_neumann_entropy(marginal.entries)
            - von_neumann_entropy(rho.entries))
    sigmas = _embedded_sigmas(measured_qubit, rho.qubit_count)
    eye = np.eye(rho.dim)

    def batch(axes):
        return _conditional_entropy_batch(rho.entries, measured_qubit,
                                          rho.qubit_count, axes)

    def scalar(axis):
        return _conditional_entropy_scalar(rho.entries, eye, sigmas,
                                           measured_qubit, rho.qubit_count,
                                           axis)

    best_ce, axis = search_axis(scalar, maximize=False,
                                grid_points=grid_points,
                                refine_iters=refine_iters,
                                batch_objective=batch)
    direction = _direction_for(measured_qubit, rho.qubit_count)
    return MeasureValue(Measure.DISCORD, _clip(base + best_ce), direction,
                        Method.ORACLE, axis)


# ---------------------------------------------------------------------------
# Trace-norm measurement-induced nonlocality.
# ---------------------------------------------------------------------------

def min_trace_norm_oracle(rho: DensityMatrix, measured_qubit: int = 0,
                          grid_points: int = DEFAULT_GRID_POINTS,
                          refine_iters: int = DEFAULT_REFINE_ITERS
                          ) -> MeasureValue:
    """Trace-norm MIN: max ||rho - Pi(rho)||_1 over marginal-preserving
    measurements, with the same axis constraint structure as the
    Hilbert-Schmidt oracle."""
    a = _marginal_bloch(rho, measured_qubit)
    a_norm = np.linalg.norm(a)
    if a_norm > AXIS_DEGENERACY_TOL:
        axis = a / a_norm
        measured = apply_local_measurement(rho, measured_qubit, axis)
        value = trace_norm(rho.entries - measured.entries)
    else:
        value, axis = _disturbance_search(
            rho, measured_qubit, "trace", maximize=True,
            grid_points=grid_points, refine_iters=refine_iters, candidates=3)
    direction = _direction_for(measured_qubit, rho.qubit_count)
    return MeasureValue(Measure.MIN_TRACE, _clip(value), direction,
                        Method.ORACLE, axis)
