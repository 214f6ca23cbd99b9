import numpy as np
import pytest

from ionthermo import DensityMatrix


def random_density(rng: np.random.Generator, dim: int = 2, rank: int | None = None) -> DensityMatrix:
    """Ginibre-distributed mixed state; rank 1 gives a Haar-random pure state."""
    k = dim if rank is None else rank
    g = rng.normal(size=(dim, k)) + 1j * rng.normal(size=(dim, k))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real)


def random_probs(rng: np.random.Generator, dim: int) -> np.ndarray:
    return rng.dirichlet(np.ones(dim))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
