import numpy as np
import pytest

from conftest import ket, random_product_state, single_qubit_from_bloch
from qcorr import (DensityMatrix, Direction, Measure, Method, PureState,
                   apply_local_measurement, binary_entropy_h, chsh_value,
                   geometric_discord_closed, geometric_discord_oracle,
                   horodecki_M, min_hs_closed, min_hs_oracle,
                   min_trace_norm_oracle, negativity, partial_trace,
                   quantum_discord, tensor_product)
from qcorr.canonical import alice_bloch_modulus
from qcorr.monogamy import ghz_state, mixed_ghz_state
from qcorr.sampling import ginibre_mixed, haar_pure

Z = np.array([0.0, 0.0, 1.0])
X = np.array([1.0, 0.0, 0.0])


class TestApplyLocalMeasurement:
    def test_z_measurement_leaves_diagonal_state(self):
        rho = mixed_ghz_state(3)
        out = apply_local_measurement(rho, 0, Z)
        np.testing.assert_allclose(out.entries, rho.entries, atol=1e-14)

    def test_x_measurement_on_mixed_ghz(self):
        rho = mixed_ghz_state(3)
        out = apply_local_measurement(rho, 0, X)
        pair = np.zeros((4, 4), dtype=complex)
        pair[0, 0] = pair[3, 3] = 1.0
        expected = 0.25 * np.kron(np.eye(2), pair)
        np.testing.assert_allclose(out.entries, expected, atol=1e-14)

    def test_maximally_mixed_fixed_point(self, maximally_mixed_2q):
        rng = np.random.default_rng(0)
        for _ in range(5):
            axis = rng.normal(size=3)
            axis /= np.linalg.norm(axis)
            out = apply_local_measurement(maximally_mixed_2q, 0, axis)
            np.testing.assert_allclose(out.entries, np.eye(4) / 4.0,
                                       atol=1e-14)

    def test_idempotent(self):
        rho = ginibre_mixed(2, 3, seed=21)
        axis = np.array([1.0, 2.0, -1.0]) / np.sqrt(6.0)
        once = apply_local_measurement(rho, 0, axis)
        twice = apply_local_measurement(once, 0, axis)
        np.testing.assert_allclose(twice.entries, once.entries, atol=1e-13)

    def test_rejects_non_unit_axis(self, maximally_mixed_2q):
        with pytest.raises(ValueError, match="unit"):
            apply_local_measurement(maximally_mixed_2q, 0, np.array([1.0, 1.0, 0.0]))


class TestMinHs:
    def test_bell_maximum(self, bell_phi_plus):
        assert abs(min_hs_closed(bell_phi_plus).value - 0.5) < 1e-12

    def test_product_states_vanish(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            rho = random_product_state(rng)
            assert min_hs_closed(rho, Direction.A_TO_B).value < 1e-10
            assert min_hs_closed(rho, Direction.B_TO_A).value < 1e-10

    def test_classical_mixture(self, classical_mixture):
        assert abs(min_hs_closed(classical_mixture).value - 0.25) < 1e-12

    def test_oracle_bell(self, bell_phi_plus):
        mv = min_hs_oracle(bell_phi_plus, 0, grid_points=400)
        assert abs(mv.value - 0.5) < 1e-6
        assert mv.method == Method.ORACLE

    def test_oracle_mixed_ghz_joint(self):
        mv = min_hs_oracle(mixed_ghz_state(3), 0, grid_points=400)
        assert abs(mv.value - 0.25) < 1e-6

    def test_oracle_matches_closed_form(self):
        for i in range(100):
            rho = ginibre_mixed(2, (i % 4) + 1, seed=77, index=i)
            closed = min_hs_closed(rho).value
            oracle = min_hs_oracle(rho, 0, grid_points=400).value
            assert abs(closed - oracle) < 1e-6

    def test_direction_swap_matches_other_qubit_oracle(self):
        rho = ginibre_mixed(2, 3, seed=5)
        closed = min_hs_closed(rho, Direction.B_TO_A).value
        oracle = min_hs_oracle(rho, 1, grid_points=400).value
        assert abs(closed - oracle) < 1e-9

    def test_two_qubit_interval_bound(self):
        for i in range(200):
            rho = ginibre_mixed(2, (i % 4) + 1, seed=131, index=i)
            assert min_hs_closed(rho).value <= 0.5 + 1e-10


class TestChsh:
    def test_tsirelson_settings(self, bell_phi_plus):
        value = chsh_value(bell_phi_plus, Z, X,
                           (Z + X) / np.sqrt(2.0), (Z - X) / np.sqrt(2.0))
        assert abs(value - 2.0 * np.sqrt(2.0)) < 1e-12

    def test_product_states_respect_classical_bound(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            rho = random_product_state(rng)
            settings = rng.normal(size=(4, 3))
            settings /= np.linalg.norm(settings, axis=1)[:, None]
            value = chsh_value(rho, *settings)
            assert abs(value) <= 2.0 + 1e-10

    def test_maximally_mixed_is_zero(self, maximally_mixed_2q):
        assert abs(chsh_value(maximally_mixed_2q, Z, X,
                              (Z + X) / np.sqrt(2.0),
                              (Z - X) / np.sqrt(2.0))) < 1e-12

    def test_rejects_non_unit_settings(self, bell_phi_plus):
        with pytest.raises(ValueError, match="unit"):
            chsh_value(bell_phi_plus, 2.0 * Z, X, Z, X)


class TestHorodecki:
    def test_bell_value(self, bell_phi_plus):
        value, _ = horodecki_M(bell_phi_plus)
        assert abs(value.value - 2.0) < 1e-12

    def test_gen_ghz_marginal(self):
        from qcorr.monogamy import gen_ghz_state

        rho = gen_ghz_state(np.sqrt(0.75), 3).to_density()
        value, _ = horodecki_M(partial_trace(rho, [0, 1]))
        assert abs(value.value - 1.0) < 1e-12

    def test_maximally_mixed(self, maximally_mixed_2q):
        value, _ = horodecki_M(maximally_mixed_2q)
        assert value.value < 1e-12

    def test_settings_achieve_maximum(self):
        for i in range(100):
            rho = ginibre_mixed(2, (i % 4) + 1, seed=88, index=i)
            value, settings = horodecki_M(rho)
            achieved = chsh_value(rho, settings.a1, settings.a2,
                                  settings.b1, settings.b2)
            assert abs(achieved - 2.0 * np.sqrt(value.value)) < 1e-8

    def test_parameter_bound(self):
        for i in range(200):
            rho = ginibre_mixed(2, (i % 4) + 1, seed=89, index=i)
            assert horodecki_M(rho)[0].value <= 2.0 + 1e-9


class TestGeometricDiscord:
    def test_bell_value(self, bell_phi_plus):
        assert abs(geometric_discord_closed(bell_phi_plus).value - 0.5) < 1e-12

    def test_product_states_vanish(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            rho = random_product_state(rng)
            assert geometric_discord_closed(rho).value < 1e-10

    def test_oracle_matches_closed_form(self):
        for i in range(100):
            rho = ginibre_mixed(2, (i % 4) + 1, seed=99, index=i)
            closed = geometric_discord_closed(rho).value
            oracle = geometric_discord_oracle(rho, 0, grid_points=400).value
            assert abs(closed - oracle) < 1e-6

    def test_never_exceeds_min(self):
        for i in range(200):
            rho = ginibre_mixed(2, (i % 4) + 1, seed=101, index=i)
            dg = geometric_discord_closed(rho).value
            dm = min_hs_closed(rho).value
            assert dg <= dm + 1e-10


class TestNegativity:
    def test_bell_value(self, bell_phi_plus):
        assert abs(negativity(bell_phi_plus).value - 1.0) < 1e-12

    def test_partially_entangled_pure(self):
        theta = np.pi / 6.0
        amps = np.zeros(4, dtype=complex)
        amps[0], amps[3] = np.cos(theta), np.sin(theta)
        rho = PureState(amps, 2).to_density()
        n_val = negativity(rho).value
        assert abs(n_val - np.sqrt(3.0) / 2.0) < 1e-12
        a = alice_bloch_modulus(PureState(amps, 2), 0)
        assert abs(a - 0.5) < 1e-12
        assert abs(n_val ** 2 - (1.0 - a ** 2)) < 1e-12

    def test_separable_mixture_is_ppt(self, classical_mixture):
        assert negativity(classical_mixture).value == 0.0

    def test_ghz_joint_partition(self):
        rho = ghz_state(3).to_density()
        assert abs(negativity(rho, (0,)).value - 1.0) < 1e-12

    def test_rejects_full_partition(self, bell_phi_plus):
        with pytest.raises(ValueError):
            negativity(bell_phi_plus, (0, 1))


class TestQuantumDiscord:
    def test_pure_state_anchor(self):
        for i in range(5):
            psi = haar_pure(3, seed=55, index=i)
            d_val = quantum_discord(psi.to_density(), 0,
                                    grid_points=400).value
            expected = binary_entropy_h(alice_bloch_modulus(psi, 0))
            assert abs(d_val - expected) < 1e-6

    def test_product_state_vanishes(self):
        rng = np.random.default_rng(4)
        rho = random_product_state(rng)
        assert quantum_discord(rho, 0, grid_points=256).value < 1e-9

    def test_bell_state(self, bell_phi_plus):
        assert abs(quantum_discord(bell_phi_plus, 0,
                                   grid_points=256).value - 1.0) < 1e-9


class TestBinaryEntropy:
    def test_endpoints(self):
        assert binary_entropy_h(0.0) == 1.0
        assert binary_entropy_h(1.0) == 0.0

    def test_half(self):
        assert abs(binary_entropy_h(0.5) - 0.8112781244591328) < 1e-15

    @pytest.mark.parametrize("bad", [-0.1, 1.1])
    def test_rejects_out_of_range(self, bad):
        with pytest.raises(ValueError):
            binary_entropy_h(bad)


class TestTraceNormMin:
    def test_ghz_marginal(self):
        rho = partial_trace(ghz_state(3).to_density(), [0, 1])
        value = min_trace_norm_oracle(rho, 0, grid_points=400).value
        assert abs(value - 1.0) < 1e-4

    def test_ghz_joint(self):
        value = min_trace_norm_oracle(ghz_state(3).to_density(), 0,
                                      grid_points=400).value
        assert abs(value - 1.0) < 1e-4

    def test_product_state_vanishes(self):
        rng = np.random.default_rng(6)
        rho = random_product_state(rng)
        assert min_trace_norm_oracle(rho, 0, grid_points=128).value < 1e-10


class TestSpecInvariants:
    def test_horodecki_bounds_min(self):
        # MIN <= M/4 in both directions
        for i in range(1000):
            rho = ginibre_mixed(2, (i % 4) + 1, seed=314, index=i)
            m_val = horodecki_M(rho)[0].value
            assert min_hs_closed(rho, Direction.A_TO_B).value <= m_val / 4 + 1e-10
            assert min_hs_closed(rho, Direction.B_TO_A).value <= m_val / 4 + 1e-10

    def test_degenerate_marginal_equality(self):
        # when a = 0 the MIN equals M/4 exactly
        rng = np.random.default_rng(7)
        for i in range(50):
            base = ginibre_mixed(2, (i % 4) + 1, seed=271, index=i)
            rho = _strip_alice_bloch(base, rng)
            m_val = horodecki_M(rho)[0].value
            min_val = min_hs_closed(rho).value
            assert abs(min_val - m_val / 4.0) < 1e-10

    def test_all_correlation_measures_vanish_on_products(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            rho = random_product_state(rng)
            assert min_hs_closed(rho).value < 1e-10
            assert geometric_discord_closed(rho).value < 1e-10
            assert negativity(rho).value < 1e-10
            assert min_trace_norm_oracle(rho, 0, grid_points=128).value < 1e-10
            assert quantum_discord(rho, 0, grid_points=128).value < 1e-9


def _strip_alice_bloch(rho, rng):
    """Project a two-qubit state onto the a = 0 slice, mixing toward I/4
    just enough to stay physical."""
    from qcorr import bloch_decompose, bloch_reconstruct
    from qcorr.states import BlochForm

    form = bloch_decompose(rho)
    stripped = BlochForm(np.zeros(3), form.b, form.T)
    for shrink in np.linspace(1.0, 0.0, 21):
        candidate = BlochForm(np.zeros(3), shrink * stripped.b,
                              shrink * stripped.T)
        try:
            return bloch_reconstruct(candidate)
        except ValueError:
            continue
    raise AssertionError("could not build an a = 0 state")
