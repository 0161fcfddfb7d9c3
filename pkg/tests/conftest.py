import numpy
import pytest

from haarlab.carleson.sequences import random_sequence as draw_sequence
from haarlab.dyadic.grid import DyadicGrid
from haarlab.weights.families import WeightFamily, generate_weight


@pytest.fixture
def rng():
    return numpy.random.default_rng(0)


@pytest.fixture
def two_cell_weight():
    return DyadicGrid([1.0, 3.0])


@pytest.fixture
def random_weight(rng):
    def factory(depth: int, step: float = 0.5) -> DyadicGrid:
        seed = int(rng.integers(0, 2 ** 31))
        return generate_weight(WeightFamily("log_random_walk", depth, step=step, seed=seed))
    return factory


@pytest.fixture
def random_sequence(rng):
    def factory(depth: int, sparsity: float = 0.0):
        return draw_sequence(depth, rng, sparsity)
    return factory
