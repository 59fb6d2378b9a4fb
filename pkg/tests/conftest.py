import math

import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

SQ = 1 / math.sqrt(2)

# Octant triple: (1,0), (1,1)/sqrt2, (1,i)/sqrt2 map to the +z, +x, +y axes.
OCTANT = (
    np.array([1.0, 0.0], dtype=complex),
    np.array([SQ, SQ], dtype=complex),
    np.array([SQ, 1j * SQ], dtype=complex),
)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture
def octant():
    return OCTANT


def complex_vectors(dim=None, min_dim=2, max_dim=6):
    """Hypothesis strategy for nonzero complex vectors of moderate size."""
    size = st.just(dim) if dim is not None else st.integers(min_dim, max_dim)
    floats = st.floats(-10, 10, allow_nan=False, allow_infinity=False)

    def build(n):
        return st.tuples(arrays(np.float64, n, elements=floats), arrays(np.float64, n, elements=floats)).map(
            lambda p: p[0] + 1j * p[1]
        )

    return size.flatmap(build).filter(lambda v: np.linalg.norm(v) > 1e-3)


def nonzero_scalars():
    return st.complex_numbers(min_magnitude=1e-2, max_magnitude=1e2, allow_nan=False, allow_infinity=False)
