"""Nonclassical-correlation measures and monogamy-relation checkers for
multi-qubit density matrices."""

from .canonical import (BipartitionIdentity, CanonicalParams,
                        alice_bloch_modulus, bipartition_identities,
                        canonical_state, monogamy_residual_closed,
                        monogamy_residual_direct, schmidt_two_qubit_reduction,
                        trace_relations_check)
from .measures import (ChshSettings, Direction, Measure, MeasureValue, Method,
                       apply_local_measurement, binary_entropy_h, chsh_value,
                       geometric_discord_closed, geometric_discord_oracle,
                       horodecki_M, min_hs_closed, min_hs_oracle,
                       min_trace_norm_oracle, negativity, quantum_discord,
                       von_neumann_entropy)
from .monogamy import (Counterexample, ExpectedValue, MonogamyReport,
                       Relation, averages, check_bell_monogamy,
                       check_chain_mixed, check_min_pure, counterexample,
                       evaluate_counterexample, gen_ghz_state, ghz_state,
                       mixed_ghz_state, multiqubit_bell_sum, nosignaling_sum,
                       saturating_state)
from .sampling import (SampleSpec, StateFamily, generate, ginibre_mixed,
                       haar_pure, iter_samples, random_canonical, rng_for)
from .states import (BlochForm, DensityMatrix, PureState, basis_ket,
                     bloch_decompose, bloch_reconstruct, bloch_vector,
                     hermitian_eigs, hs_norm_sq, partial_trace,
                     partial_transpose, tensor_product, trace_norm)

__version__ = "0.1.0"
