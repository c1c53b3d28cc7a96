import numpy as np
import pytest

from catcost.operators import (
    LabeledOperator,
    FactorShape,
    bipartite_shape,
    density_from_matrix,
    hermitian_part,
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240815)


def random_hermitian(rng, dim):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return hermitian_part(g)


def random_state_matrix(rng, dim, rank=None):
    cols = dim if rank is None else rank
    g = rng.standard_normal((dim, cols)) + 1j * rng.standard_normal((dim, cols))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_density(rng, d_a, d_b, rank=None):
    return density_from_matrix(random_state_matrix(rng, d_a * d_b, rank),
                               bipartite_shape(d_a, d_b))


def hermitian_operator(rng, factors):
    shape = FactorShape(tuple(factors))
    return LabeledOperator(shape, random_hermitian(rng, shape.total_dim))
