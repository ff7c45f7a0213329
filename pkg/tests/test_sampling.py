import numpy as np
import pytest

from qcorr import (CanonicalParams, DensityMatrix, PureState,
                   monogamy_residual_direct, canonical_state)
from qcorr.sampling import (SampleSpec, StateFamily, generate, ginibre_mixed,
                            haar_pure, iter_samples, random_canonical)
from qcorr.states import bloch_vector, partial_trace


class TestHaarPure:
    def test_normalized(self):
        for i in range(50):
            psi = haar_pure(3, seed=1, index=i)
            assert abs(np.vdot(psi.amplitudes, psi.amplitudes).real - 1) < 1e-12

    def test_deterministic(self):
        first = haar_pure(2, seed=9, index=4)
        second = haar_pure(2, seed=9, index=4)
        np.testing.assert_array_equal(first.amplitudes, second.amplitudes)

    def test_distinct_indices_differ(self):
        a = haar_pure(2, seed=9, index=0)
        b = haar_pure(2, seed=9, index=1)
        assert np.abs(a.amplitudes - b.amplitudes).max() > 1e-3

    def test_single_qubit_bloch_uniformity(self):
        total = np.zeros(3)
        for i in range(10_000):
            rho = haar_pure(1, seed=33, index=i).to_density()
            total += bloch_vector(rho)
        assert np.linalg.norm(total / 10_000) <= 0.05


class TestGinibreMixed:
    def test_rank_one_is_pure(self):
        rho = ginibre_mixed(2, 1, seed=2)
        assert abs(rho.purity() - 1.0) < 1e-10

    def test_full_rank_mean_purity(self):
        # induced-measure mean purity (N + K)/(N K + 1) with N = K = 4
        total = 0.0
        count = 10_000
        for i in range(count):
            total += ginibre_mixed(2, 4, seed=3, index=i).purity()
        expected = (4 + 4) / (4 * 4 + 1)
        assert abs(total / count - expected) < 0.01

    def test_deterministic(self):
        first = ginibre_mixed(3, 5, seed=4, index=7)
        second = ginibre_mixed(3, 5, seed=4, index=7)
        np.testing.assert_array_equal(first.entries, second.entries)

    @pytest.mark.parametrize("rank", [0, 9])
    def test_rejects_bad_rank(self, rank):
        with pytest.raises(ValueError):
            ginibre_mixed(3, rank, seed=5)


class TestRandomCanonical:
    def test_valid_params(self):
        for i in range(200):
            params = random_canonical(seed=6, index=i)
            assert abs(np.sum(params.lambdas ** 2) - 1.0) < 1e-12
            assert np.all(params.lambdas >= 0.0)
            assert 0.0 <= params.phi <= np.pi

    def test_monogamy_residual_never_positive(self):
        for i in range(200):
            psi = canonical_state(random_canonical(seed=7, index=i))
            assert monogamy_residual_direct(psi) <= 1e-12

    def test_deterministic(self):
        a = random_canonical(seed=8, index=3)
        b = random_canonical(seed=8, index=3)
        np.testing.assert_array_equal(a.lambdas, b.lambdas)
        assert a.phi == b.phi


class TestSampleSpec:
    def test_rejects_bad_count(self):
        with pytest.raises(ValueError):
            SampleSpec(StateFamily.HAAR_PURE, 3, seed=0, count=0)

    def test_rejects_bad_rank(self):
        with pytest.raises(ValueError):
            SampleSpec(StateFamily.GINIBRE_MIXED, 2, seed=0, count=1, rank=5)

    def test_generate_types(self):
        assert isinstance(generate(SampleSpec(StateFamily.HAAR_PURE, 3,
                                              seed=0, count=1), 0), PureState)
        assert isinstance(generate(SampleSpec(StateFamily.GINIBRE_MIXED, 2,
                                              seed=0, count=1, rank=2), 0),
                          DensityMatrix)
        assert isinstance(generate(SampleSpec(StateFamily.CANONICAL_PARAMS, 3,
                                              seed=0, count=1), 0),
                          CanonicalParams)
        sample = generate(SampleSpec(StateFamily.GEN_GHZ, 4, seed=0, count=1), 0)
        assert isinstance(sample, PureState)
        assert sample.qubit_count == 4

    def test_iter_samples_order_independent(self):
        spec = SampleSpec(StateFamily.HAAR_PURE, 2, seed=10, count=5)
        collected = dict(iter_samples(spec))
        # regenerating any index in isolation gives the identical state
        for index in (4, 1, 3):
            again = generate(spec, index)
            np.testing.assert_array_equal(again.amplitudes,
                                          collected[index].amplitudes)

    def test_ginibre_default_rank_is_full(self):
        spec = SampleSpec(StateFamily.GINIBRE_MIXED, 2, seed=11, count=1)
        rho = generate(spec, 0)
        assert np.linalg.matrix_rank(rho.entries) == 4
