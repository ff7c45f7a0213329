"""Standard form of pure three-qubit states and the pivot-versus-rest
identities built on it.

Any pure three-qubit state is locally equivalent to

    l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>

with l_j >= 0, sum l_j^2 = 1 and phi in [0, pi]. In that form Alice's
Bloch modulus is a^2 = (2 l0^2 - 1)^2 + 4 l0^2 l1^2, and the
pivot-versus-rest quantities collapse to a single number:

    N^2 = 2 D_G = 2 D_M = M - 1 = 1 - a^2   (pivot A versus BC)

while the pairwise MIN values obey the monogamy relation
D_M(A->B) + D_M(A->C) <= (1 - a^2)/2 whose deficit has the closed form
implemented in ``monogamy_residual_closed``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measures import (AXIS_DEGENERACY_TOL, Direction, geometric_discord_oracle,
                       horodecki_M, min_hs_closed, min_hs_oracle, negativity)
from .optimize import DEFAULT_GRID_POINTS, DEFAULT_REFINE_ITERS
from .states import (DensityMatrix, PureState, bloch_decompose, bloch_vector,
                     partial_trace)

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class CanonicalParams:
    """Standard-form parameters (l0..l4, phi) of a pure three-qubit state."""

    lambdas: np.ndarray
    phi: float

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float).reshape(-1)
        if lam.shape != (5,):
            raise ValueError("exactly five lambda coefficients required")
        if np.any(lam < 0.0):
            raise ValueError("lambda coefficients must be non-negative")
        if abs(np.sum(lam ** 2) - 1.0) > _NORM_TOL:
            raise ValueError("lambda coefficients must have unit squared sum")
        if not 0.0 <= self.phi <= np.pi:
            raise ValueError(f"phi must lie in [0, pi], got {self.phi}")
        lam.setflags(write=False)
        object.__setattr__(self, "lambdas", lam)


@dataclass(frozen=True)
class BipartitionIdentity:
    """The five pivot-versus-rest quantities that coincide on pure states."""

    n_sq: float
    two_dg: float
    two_dm: float
    m_minus_1: float
    one_minus_a_sq: float

    def values(self) -> tuple[float, ...]:
        return (self.n_sq, self.two_dg, self.two_dm, self.m_minus_1,
                self.one_minus_a_sq)

    def max_gap(self) -> float:
        vals = self.values()
        return float(max(vals) - min(vals))


def canonical_state(params: CanonicalParams) -> PureState:
    """Amplitudes of the standard form on three qubits."""
    l0, l1, l2, l3, l4 = params.lambdas
    amps = np.zeros(8, dtype=complex)
    amps[0b000] = l0
    amps[0b100] = l1 * np.exp(1j * params.phi)
    amps[0b101] = l2
    amps[0b110] = l3
    amps[0b111] = l4
    return PureState(amps, 3)


def alice_bloch_modulus(psi: PureState, party: int = 0) -> float:
    """Bloch-vector modulus of one party's single-qubit marginal."""
    marginal = partial_trace(psi.to_density(), [party])
    return float(np.linalg.norm(bloch_vector(marginal)))


def schmidt_two_qubit_reduction(psi: PureState, party: int = 0) -> DensityMatrix:
    """Compress a pure 2 x 2^k state to an equivalent two-qubit pure state.

    The rest of the system is projected onto its two Schmidt vectors, a
    local isometry that leaves the pivot's marginal and every
    pivot-versus-rest correlation quantity unchanged.
    """
    n = psi.qubit_count
    if not 0 <= party < n:
        raise ValueError(f"party {party} out of range")
    amps = psi.amplitudes.reshape((2,) * n)
    amps = np.moveaxis(amps, party, 0).reshape(2, -1)
    u, s, _ = np.linalg.svd(amps, full_matrices=False)
    eff = (u[:, :2] * s[:2]).reshape(-1)
    eff = eff / np.linalg.norm(eff)
    return PureState(eff, 2).to_density()


def bipartition_identities(psi: PureState,
                           grid_points: int = DEFAULT_GRID_POINTS,
                           refine_iters: int = DEFAULT_REFINE_ITERS
                           ) -> BipartitionIdentity:
    """Evaluate the five A-versus-BC quantities of a pure three-qubit state.

    Negativity, the Horodecki parameter (via the Schmidt reduction) and
    1 - a^2 are closed-form; the two disturbance measures come from the
    measurement oracles so the identity doubles as a cross-check.
    """
    if psi.qubit_count != 3:
        raise ValueError("bipartition_identities requires a pure 3-qubit state")
    rho = psi.to_density()
    n_val = negativity(rho, (0,)).value
    two_dg = 2.0 * geometric_discord_oracle(rho, 0, grid_points, refine_iters).value
    two_dm = 2.0 * min_hs_oracle(rho, 0, grid_points, refine_iters).value
    m_val, _ = horodecki_M(schmidt_two_qubit_reduction(psi, 0))
    a = alice_bloch_modulus(psi, 0)
    return BipartitionIdentity(
        n_sq=n_val ** 2,
        two_dg=two_dg,
        two_dm=two_dm,
        m_minus_1=m_val.value - 1.0,
        one_minus_a_sq=1.0 - a ** 2,
    )


def trace_relations_check(psi: PureState):
    """Spin-correlation trace sums of the AB and AC marginals.

    Returns ((lhs_ab, rhs_ab), (lhs_ac, rhs_ac)) with
    lhs_ab = tr(T_AB T_AB^t), rhs_ab = 1 + 2 c^2 - a^2 - b^2 and the
    roles of b, c swapped for the AC pair. The caller asserts the gaps.
    """
    if psi.qubit_count != 3:
        raise ValueError("trace_relations_check requires a pure 3-qubit state")
    rho = psi.to_density()
    mods = [alice_bloch_modulus(psi, q) for q in range(3)]
    a_sq, b_sq, c_sq = (m ** 2 for m in mods)
    t_ab = bloch_decompose(partial_trace(rho, [0, 1])).T
    t_ac = bloch_decompose(partial_trace(rho, [0, 2])).T
    lhs_ab = float(np.trace(t_ab @ t_ab.T))
    lhs_ac = float(np.trace(t_ac @ t_ac.T))
    rhs_ab = 1.0 + 2.0 * c_sq - a_sq - b_sq
    rhs_ac = 1.0 + 2.0 * b_sq - a_sq - c_sq
    return (lhs_ab, rhs_ab), (lhs_ac, rhs_ac)


def monogamy_residual_closed(params: CanonicalParams) -> float:
    """Closed-form deficit D_M(A->B) + D_M(A->C) - D_M(A->BC).

    Valid only when Alice's marginal is non-degenerate (a > 0); for the
    a = 0 family use ``monogamy_residual_direct``. The value is always
    <= 0 up to rounding.
    """
    l0, l1, l2, l3, l4 = params.lambdas
    a_sq = (2.0 * l0 ** 2 - 1.0) ** 2 + 4.0 * l0 ** 2 * l1 ** 2
    if np.sqrt(a_sq) <= AXIS_DEGENERACY_TOL:
        raise ValueError("degenerate marginal (a = 0); use monogamy_residual_direct")
    phase = params.phi
    bracket = (4.0 * l1 ** 2 * l2 ** 2 * l3 ** 2 * np.sin(phase) ** 2
               + (l4 * (2.0 * l2 ** 2 + 2.0 * l3 ** 2 + 2.0 * l4 ** 2 - 1.0)
                  + 2.0 * l1 * l2 * l3 * np.cos(phase)) ** 2)
    return float(-2.0 * l0 ** 2 / a_sq * bracket)


def monogamy_residual_direct(psi: PureState) -> float:
    """Deficit D_M(A->B) + D_M(A->C) - D_M(A->BC) from the measures.

    Pairwise terms use the two-qubit closed form on the marginals; the
    A-versus-BC term is (1 - a^2)/2, exact for pure states.
    """
    if psi.qubit_count != 3:
        raise ValueError("monogamy_residual_direct requires a pure 3-qubit state")
    rho = psi.to_density()
    d_ab = min_hs_closed(partial_trace(rho, [0, 1]), Direction.A_TO_B).value
    d_ac = min_hs_closed(partial_trace(rho, [0, 2]), Direction.A_TO_B).value
    a = alice_bloch_modulus(psi, 0)
    return d_ab + d_ac - 0.5 * (1.0 - a ** 2)
