"""Reproducible random-state generation for property sweeps.

Every sample is drawn from its own counter-derived stream: sample ``i``
of a run seeded with ``seed`` uses ``numpy.random.SeedSequence((seed, i))``
feeding a PCG64 generator. PCG64 is a fixed, documented, platform
independent algorithm, so (seed, index) -> state is a pure function and
sweeps may be distributed across workers in any order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .canonical import CanonicalParams
from .monogamy import gen_ghz_state
from .states import DensityMatrix, PureState


class StateFamily(str, enum.Enum):
    HAAR_PURE = "haar_pure"
    GINIBRE_MIXED = "ginibre_mixed"
    CANONICAL_PARAMS = "canonical_params"
    GEN_GHZ = "gen_ghz"


@dataclass(frozen=True)
class SampleSpec:
    family: StateFamily
    qubit_count: int
    seed: int
    count: int
    rank: int | None = None

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.qubit_count < 1:
            raise ValueError("qubit_count must be >= 1")
        if self.rank is not None and not 1 <= self.rank <= 2 ** self.qubit_count:
            raise ValueError(f"rank {self.rank} outside [1, 2^n]")


def rng_for(seed: int, index: int = 0) -> np.random.Generator:
    """PCG64 stream for one (seed, sample index) pair."""
    return np.random.Generator(np.random.PCG64(
        np.random.SeedSequence((int(seed), int(index)))))


def haar_pure(qubit_count: int, seed: int, index: int = 0) -> PureState:
    """Haar-random pure state: normalized complex Gaussian amplitudes."""
    if qubit_count < 1:
        raise ValueError("qubit_count must be >= 1")
    rng = rng_for(seed, index)
    d = 2 ** qubit_count
    amps = rng.normal(size=d) + 1j * rng.normal(size=d)
    return PureState(amps / np.linalg.norm(amps), qubit_count)


def ginibre_mixed(qubit_count: int, rank: int, seed: int,
                  index: int = 0) -> DensityMatrix:
    """Induced-measure mixed state rho = G G^dag / tr(G G^dag), with G a
    2^n x rank complex Gaussian matrix."""
    d = 2 ** qubit_count
    if not 1 <= rank <= d:
        raise ValueError(f"rank {rank} outside [1, {d}]")
    rng = rng_for(seed, index)
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, qubit_count)


def random_canonical(seed: int, index: int = 0) -> CanonicalParams:
    """Standard-form parameters: |Gaussian 5-vector| normalized, phase
    uniform in [0, pi]."""
    rng = rng_for(seed, index)
    lam = np.abs(rng.normal(size=5))
    lam /= np.linalg.norm(lam)
    return CanonicalParams(lam, rng.uniform(0.0, np.pi))


def generate(spec: SampleSpec, index: int):
    """Sample ``index`` of ``spec``; type depends on the family."""
    if spec.family == StateFamily.HAAR_PURE:
        return haar_pure(spec.qubit_count, spec.seed, index)
    if spec.family == StateFamily.GINIBRE_MIXED:
        rank = spec.rank if spec.rank is not None else 2 ** spec.qubit_count
        return ginibre_mixed(spec.qubit_count, rank, spec.seed, index)
    if spec.family == StateFamily.CANONICAL_PARAMS:
        return random_canonical(spec.seed, index)
    if spec.family == StateFamily.GEN_GHZ:
        rng = rng_for(spec.seed, index)
        alpha = np.sqrt(rng.uniform(0.01, 0.99))
        return gen_ghz_state(alpha, spec.qubit_count)
    raise ValueError(f"unknown family {spec.family}")


def iter_samples(spec: SampleSpec):
    """Yield (index, sample) for every sample in the spec."""
    for index in range(spec.count):
        yield index, generate(spec, index)
