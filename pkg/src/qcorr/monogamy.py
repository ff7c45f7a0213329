"""Monogamy-relation checkers and the named benchmark states.

Relations covered, each producing a :class:`MonogamyReport`:

- MIN_PURE: D_M(A->B) + D_M(A->C) <= (1 - a^2)/2 for pure 3-qubit states.
- BELL_PAIR: M(A:B) + M(A:C) <= 2 for any 3-qubit state.
- CHAIN_MIXED: the summed ordering chain
  N^2-sum, D^2-sum <= 2 D_G-sum <= 2 D_M-sum <= M-sum/2 <= 1.
- MULTI_BELL: sum over partners of M(pivot:X) <= n - 1.
- NOSIGNALING: sum of sqrt(M) <= n - 1, plus a flag recording whether the
  MULTI_BELL instance already implies it via Cauchy-Schwarz.
- AVERAGES: mean pairwise M <= 1, mean D_M and D_G <= 1/4, mean discord
  and negativity <= 1/sqrt(2).

Reports carry per-term values with method provenance so sweep failures
are attributable to a specific closed form or oracle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .canonical import (alice_bloch_modulus, monogamy_residual_direct,
                        schmidt_two_qubit_reduction)
from .measures import (Direction, Method, geometric_discord_closed,
                       horodecki_M, min_hs_closed, min_hs_oracle,
                       min_trace_norm_oracle, negativity, quantum_discord)
from .optimize import DEFAULT_GRID_POINTS, DEFAULT_REFINE_ITERS
from .states import DensityMatrix, PureState, basis_ket, partial_trace

TOL_CLOSED = 1e-9
TOL_ORACLE = 1e-6
TOL_PURE_MIN = 1e-12

_PARTY_NAMES = "ABCDEFGHIJ"


class Relation(str, enum.Enum):
    MIN_PURE = "MIN_PURE"
    BELL_PAIR = "BELL_PAIR"
    CHAIN_MIXED = "CHAIN_MIXED"
    MULTI_BELL = "MULTI_BELL"
    NOSIGNALING = "NOSIGNALING"
    AVERAGES = "AVERAGES"


@dataclass(frozen=True)
class MonogamyReport:
    relation: Relation
    state_id: str
    terms: dict[str, float]
    bound: float
    residual: float
    satisfied: bool
    tolerance: float
    methods: dict[str, str] = field(default_factory=dict)


def _report(relation, state_id, terms, bound, residual, tolerance, methods):
    return MonogamyReport(
        relation=relation,
        state_id=state_id,
        terms={k: float(v) for k, v in terms.items()},
        bound=float(bound),
        residual=float(residual),
        satisfied=bool(residual <= tolerance),
        tolerance=float(tolerance),
        methods=dict(methods),
    )


def _party(index: int) -> str:
    return _PARTY_NAMES[index]


def _pair_marginal(rho: DensityMatrix, pivot: int, other: int) -> DensityMatrix:
    return partial_trace(rho, [pivot, other])


def _partners(rho: DensityMatrix, pivot: int) -> list[int]:
    n = rho.qubit_count
    if not 0 <= pivot < n:
        raise ValueError(f"pivot {pivot} out of range")
    return [q for q in range(n) if q != pivot]


# ---------------------------------------------------------------------------
# Relation checkers.
# ---------------------------------------------------------------------------

def check_min_pure(psi: PureState, state_id: str = "",
                   tolerance: float = TOL_PURE_MIN) -> MonogamyReport:
    """Pure-state MIN monogamy D_M(A->B) + D_M(A->C) <= (1 - a^2)/2."""
    rho = psi.to_density()
    d_ab = min_hs_closed(_pair_marginal(rho, 0, 1), Direction.A_TO_B).value
    d_ac = min_hs_closed(_pair_marginal(rho, 0, 2), Direction.A_TO_B).value
    joint = 0.5 * (1.0 - alice_bloch_modulus(psi, 0) ** 2)
    terms = {"D_M(A->B)": d_ab, "D_M(A->C)": d_ac, "D_M(A->BC)": joint}
    methods = {"D_M(A->B)": Method.CLOSED_FORM.value,
               "D_M(A->C)": Method.CLOSED_FORM.value,
               "D_M(A->BC)": Method.CLOSED_FORM.value}
    return _report(Relation.MIN_PURE, state_id, terms, joint,
                   d_ab + d_ac - joint, tolerance, methods)


def check_bell_monogamy(rho: DensityMatrix, state_id: str = "",
                        tolerance: float = TOL_CLOSED) -> MonogamyReport:
    """Bell-CHSH pair monogamy M(A:B) + M(A:C) <= 2 on a 3-qubit state."""
    if rho.qubit_count != 3:
        raise ValueError("check_bell_monogamy requires a 3-qubit state")
    m_ab = horodecki_M(_pair_marginal(rho, 0, 1))[0].value
    m_ac = horodecki_M(_pair_marginal(rho, 0, 2))[0].value
    terms = {"M(A:B)": m_ab, "M(A:C)": m_ac}
    methods = {k: Method.CLOSED_FORM.value for k in terms}
    return _report(Relation.BELL_PAIR, state_id, terms, 2.0,
                   m_ab + m_ac - 2.0, tolerance, methods)


def check_chain_mixed(rho: DensityMatrix, state_id: str = "",
                      tolerance: float = TOL_ORACLE,
                      grid_points: int = DEFAULT_GRID_POINTS,
                      refine_iters: int = DEFAULT_REFINE_ITERS
                      ) -> MonogamyReport:
    """Summed ordering chain over the AB and AC marginals, final bound 1.

    The residual is the worst gap over all rungs, so satisfied means the
    entire chain holds within tolerance. The discord rung is a numerical
    upper bound, hence the oracle-level default tolerance.
    """
    if rho.qubit_count != 3:
        raise ValueError("check_chain_mixed requires a 3-qubit state")
    terms: dict[str, float] = {}
    methods: dict[str, str] = {}
    sums = {"N2": 0.0, "D2": 0.0, "2DG": 0.0, "2DM": 0.0, "M/2": 0.0}
    for other in (1, 2):
        pair = _pair_marginal(rho, 0, other)
        label = f"A{_party(other)}"
        n_val = negativity(pair, (0,)).value
        d_val = quantum_discord(pair, 0, grid_points, refine_iters).value
        dg_val = geometric_discord_closed(pair, Direction.A_TO_B).value
        dm_val = min_hs_closed(pair, Direction.A_TO_B).value
        m_val = horodecki_M(pair)[0].value
        pair_terms = {
            f"N2({label})": n_val ** 2,
            f"D2({label})": d_val ** 2,
            f"2DG({label})": 2.0 * dg_val,
            f"2DM({label})": 2.0 * dm_val,
            f"M/2({label})": 0.5 * m_val,
        }
        terms.update(pair_terms)
        for key in sums:
            sums[key] += pair_terms[f"{key}({label})"]
        methods.update({
            f"N2({label})": Method.CLOSED_FORM.value,
            f"D2({label})": Method.ORACLE.value,
            f"2DG({label})": Method.CLOSED_FORM.value,
            f"2DM({label})": Method.CLOSED_FORM.value,
            f"M/2({label})": Method.CLOSED_FORM.value,
        })
    for key, value in sums.items():
        terms[f"{key}_sum"] = value
    gaps = [
        sums["N2"] - sums["2DG"],
        sums["D2"] - sums["2DG"],
        sums["2DG"] - sums["2DM"],
        sums["2DM"] - sums["M/2"],
        sums["M/2"] - 1.0,
    ]
    return _report(Relation.CHAIN_MIXED, state_id, terms, 1.0,
                   max(gaps), tolerance, methods)


def multiqubit_bell_sum(rho: DensityMatrix, pivot: int = 0,
                        state_id: str = "",
                        tolerance: float = TOL_CLOSED) -> MonogamyReport:
    """Pairwise Bell-parameter sum against the n - 1 bound."""
    if rho.qubit_count < 3:
        raise ValueError("multiqubit_bell_sum requires at least 3 qubits")
    terms = {}
    for other in _partners(rho, pivot):
        name = f"M({_party(pivot)}:{_party(other)})"
        terms[name] = horodecki_M(_pair_marginal(rho, pivot, other))[0].value
    bound = float(rho.qubit_count - 1)
    methods = {k: Method.CLOSED_FORM.value for k in terms}
    return _report(Relation.MULTI_BELL, state_id, terms, bound,
                   sum(terms.values()) - bound, tolerance, methods)


def nosignaling_sum(rho: DensityMatrix, pivot: int = 0,
                    state_id: str = "",
                    tolerance: float = TOL_CLOSED) -> MonogamyReport:
    """sqrt-M sum against n - 1; weaker than the Bell sum inside quantum
    theory, and the report records whether Cauchy-Schwarz plus the Bell
    sum already certifies this instance."""
    if rho.qubit_count < 3:
        raise ValueError("nosignaling_sum requires at least 3 qubits")
    terms = {}
    m_total = 0.0
    for other in _partners(rho, pivot):
        m_val = horodecki_M(_pair_marginal(rho, pivot, other))[0].value
        m_total += m_val
        terms[f"sqrtM({_party(pivot)}:{_party(other)})"] = np.sqrt(max(m_val, 0.0))
    bound = float(rho.qubit_count - 1)
    sqrt_sum = sum(terms.values())
    # Cauchy-Schwarz: sum sqrt(M) <= sqrt((n-1) sum M), so the Bell-sum
    # relation (sum M <= n-1) implies this one whenever it applies.
    implied = np.sqrt(bound * m_total) <= bound + TOL_CLOSED
    terms["implied_by_bell_sum"] = 1.0 if implied else 0.0
    methods = {k: Method.CLOSED_FORM.value for k in terms}
    return _report(Relation.NOSIGNALING, state_id, terms, bound,
                   sqrt_sum - bound, tolerance, methods)


_AVERAGE_BOUNDS = {
    "M_avg": 1.0,
    "D_M_avg": 0.25,
    "D_G_avg": 0.25,
    "D_avg": 1.0 / np.sqrt(2.0),
    "N_avg": 1.0 / np.sqrt(2.0),
}


def averages(rho: DensityMatrix, pivot: int = 0, state_id: str = "",
             tolerance: float = TOL_ORACLE,
             grid_points: int = DEFAULT_GRID_POINTS,
             refine_iters: int = DEFAULT_REFINE_ITERS) -> MonogamyReport:
    """Average pairwise correlations against their per-measure caps.

    The residual is the worst bound gap across the five averages; the
    report's ``bound`` field is 0 accordingly.
    """
    if rho.qubit_count < 3:
        raise ValueError("averages requires at least 3 qubits")
    partners = _partners(rho, pivot)
    acc = {name: 0.0 for name in _AVERAGE_BOUNDS}
    for other in partners:
        pair = _pair_marginal(rho, pivot, other)
        acc["M_avg"] += horodecki_M(pair)[0].value
        acc["D_M_avg"] += min_hs_closed(pair, Direction.A_TO_B).value
        acc["D_G_avg"] += geometric_discord_closed(pair, Direction.A_TO_B).value
        acc["D_avg"] += quantum_discord(pair, 0, grid_points, refine_iters).value
        acc["N_avg"] += negativity(pair, (0,)).value
    count = float(len(partners))
    terms = {name: total / count for name, total in acc.items()}
    gaps = {f"gap_{name}": terms[name] - bound
            for name, bound in _AVERAGE_BOUNDS.items()}
    residual = max(gaps.values())
    terms.update(gaps)
    methods = {name: (Method.ORACLE.value if name.endswith("D_avg")
                      else Method.CLOSED_FORM.value)
               for name in _AVERAGE_BOUNDS}
    return _report(Relation.AVERAGES, state_id, terms, 0.0, residual,
                   tolerance, methods)


# ---------------------------------------------------------------------------
# Named states and counterexamples.
# ---------------------------------------------------------------------------

def ghz_state(qubit_count: int = 3) -> PureState:
    """(|0...0> + |1...1>)/sqrt(2)."""
    amps = np.zeros(2 ** qubit_count, dtype=complex)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
    return PureState(amps, qubit_count)


def gen_ghz_state(alpha: float, qubit_count: int = 3) -> PureState:
    """alpha|0...0> + sqrt(1 - alpha^2)|1...1> with 0 < alpha < 1."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie strictly in (0, 1), got {alpha}")
    amps = np.zeros(2 ** qubit_count, dtype=complex)
    amps[0] = alpha
    amps[-1] = np.sqrt(1.0 - alpha ** 2)
    return PureState(amps, qubit_count)


def saturating_state() -> PureState:
    """(|010> + |011> + |100> + |101>)/2, a Bell pair on AB times |+> on C."""
    amps = np.zeros(8, dtype=complex)
    for bits in ("010", "011", "100", "101"):
        amps[int(bits, 2)] = 0.5
    return PureState(amps, 3)


def mixed_ghz_state(qubit_count: int = 3) -> DensityMatrix:
    """(|0...0><0...0| + |1...1><1...1|)/2."""
    d = 2 ** qubit_count
    m = np.zeros((d, d), dtype=complex)
    m[0, 0] = m[-1, -1] = 0.5
    return DensityMatrix(m, qubit_count)


@dataclass(frozen=True)
class ExpectedValue:
    term: str
    value: float
    method: Method
    tolerance: float


@dataclass(frozen=True)
class Counterexample:
    name: str
    state: DensityMatrix
    expected: tuple[ExpectedValue, ...]


def counterexample(name: str, alpha: float | None = None,
                   qubits: int | None = None) -> Counterexample:
    """Named benchmark state plus its asserted measure values.

    Known names: saturating3, ghz3, gen_ghz (needs ``alpha``, optional
    ``qubits``), mixed_ghz3, mixed_ghz_n (needs ``qubits``), ghz3_for_N1.
    """
    closed = Method.CLOSED_FORM
    oracle = Method.ORACLE
    if name == "saturating3":
        state = saturating_state().to_density()
        expected = (
            ExpectedValue("D_M(A->B)", 0.5, closed, TOL_CLOSED),
            ExpectedValue("D_M(A->C)", 0.0, closed, TOL_CLOSED),
            ExpectedValue("D_M(A->BC)", 0.5, oracle, 1e-5),
            ExpectedValue("M(A:B)", 2.0, closed, TOL_CLOSED),
            ExpectedValue("M(A:C)", 0.0, closed, TOL_CLOSED),
        )
    elif name == "ghz3":
        state = ghz_state(3).to_density()
        expected = (
            ExpectedValue("D_M(A->B)", 0.25, closed, TOL_CLOSED),
            ExpectedValue("D_M(A->C)", 0.25, closed, TOL_CLOSED),
            ExpectedValue("D_M(A->BC)", 0.5, oracle, 1e-5),
            ExpectedValue("M(A:B)", 1.0, closed, TOL_CLOSED),
            ExpectedValue("M(A:C)", 1.0, closed, TOL_CLOSED),
        )
    elif name == "gen_ghz":
        if alpha is None:
            raise ValueError("gen_ghz requires alpha")
        n = qubits if qubits is not None else 3
        if n < 3:
            raise ValueError("gen_ghz requires at least 3 qubits")
        psi = gen_ghz_state(alpha, n)
        state = psi.to_density()
        beta_sq = 1.0 - alpha ** 2
        expected = [ExpectedValue(f"M(A:{_party(q)})", 1.0, closed, TOL_CLOSED)
                    for q in range(1, n)]
        if n == 3:
            joint = 2.0 - (alpha ** 2 - beta_sq) ** 2
            expected.append(ExpectedValue("M(A:BC)", joint, closed, TOL_CLOSED))
        expected = tuple(expected)
    elif name == "mixed_ghz3":
        state = mixed_ghz_state(3)
        expected = (
            ExpectedValue("D_M(A->B)", 0.25, closed, 1e-12),
            ExpectedValue("D_M(A->C)", 0.25, closed, 1e-12),
            ExpectedValue("D_M(A->BC)", 0.25, oracle, 1e-5),
        )
    elif name == "mixed_ghz_n":
        if qubits is None or qubits < 3:
            raise ValueError("mixed_ghz_n requires qubits >= 3")
        state = mixed_ghz_state(qubits)
        rest = "".join(_party(q) for q in range(1, qubits))
        expected = tuple(
            [ExpectedValue(f"D_M(A->{_party(q)})", 0.25, closed, TOL_CLOSED)
             for q in range(1, qubits)]
            + [ExpectedValue(f"D_M(A->{rest})", 0.25, oracle, 1e-5)]
        )
    elif name == "ghz3_for_N1":
        state = ghz_state(3).to_density()
        expected = (
            ExpectedValue("N1(A:B)", 1.0, oracle, 1e-4),
            ExpectedValue("N1(A:C)", 1.0, oracle, 1e-4),
            ExpectedValue("N1(A:BC)", 1.0, oracle, 1e-4),
        )
    else:
        raise ValueError(f"unknown counterexample {name!r}")
    return Counterexample(name=name, state=state, expected=expected)


def _parse_parties(spec: str) -> tuple[int, list[int]]:
    pivot_name, _, rest = spec.partition("->") if "->" in spec \
        else spec.partition(":")
    pivot = _PARTY_NAMES.index(pivot_name)
    others = [_PARTY_NAMES.index(c) for c in rest]
    return pivot, others


def evaluate_counterexample_term(state: DensityMatrix, term: str,
                                 grid_points: int = DEFAULT_GRID_POINTS,
                                 refine_iters: int = DEFAULT_REFINE_ITERS
                                 ) -> float:
    """Compute one expected-values-table entry, e.g. "D_M(A->BC)"."""
    measure, _, inner = term.partition("(")
    pivot, others = _parse_parties(inner.rstrip(")"))
    all_partners = [q for q in range(state.qubit_count) if q != pivot]
    joint = others == all_partners and state.qubit_count > 2

    if measure == "D_M":
        if joint:
            return min_hs_oracle(state, pivot, grid_points, refine_iters).value
        marginal = partial_trace(state, [pivot] + others)
        return min_hs_closed(marginal, Direction.A_TO_B).value
    if measure == "M":
        if joint:
            psi = _as_pure(state)
            return horodecki_M(schmidt_two_qubit_reduction(psi, pivot))[0].value
        marginal = partial_trace(state, [pivot] + others)
        return horodecki_M(marginal)[0].value
    if measure == "N1":
        if joint:
            return min_trace_norm_oracle(state, pivot,
                                         grid_points, refine_iters).value
        marginal = partial_trace(state, [pivot] + others)
        return min_trace_norm_oracle(marginal, 0,
                                     grid_points, refine_iters).value
    raise ValueError(f"unknown term {term!r}")


def _as_pure(state: DensityMatrix) -> PureState:
    """Extract the state vector of a rank-one density matrix."""
    eigvals, eigvecs = np.linalg.eigh(state.entries)
    if eigvals[-1] < 1.0 - 1e-9:
        raise ValueError("state is not pure")
    return PureState(eigvecs[:, -1], state.qubit_count)


def evaluate_counterexample(ce: Counterexample,
                            grid_points: int = DEFAULT_GRID_POINTS,
                            refine_iters: int = DEFAULT_REFINE_ITERS):
    """Computed value per expected term plus the worst deviation.

    Returns (computed, max_deviation, all_within_tolerance).
    """
    computed: dict[str, float] = {}
    worst = 0.0
    ok = True
    for item in ce.expected:
        value = evaluate_counterexample_term(ce.state, item.term,
                                             grid_points, refine_iters)
        computed[item.term] = value
        deviation = abs(value - item.value)
        worst = max(worst, deviation)
        ok = ok and deviation <= item.tolerance
    return computed, worst, ok
