import numpy as np
import pytest

from mpideals.algebra import DimensionTable, DualIdeal
from mpideals.linalg import CMatrix
from mpideals.rng import SplitMix64


def to_numpy(m: CMatrix) -> np.ndarray:
    return np.array([[m.entry(i, j) for j in range(m.cols)] for i in range(m.rows)])


def from_numpy(a: np.ndarray) -> CMatrix:
    a = np.asarray(a, dtype=complex)
    return CMatrix(a.shape[0], a.shape[1], tuple(a.ravel()))


@pytest.fixture
def table():
    return DimensionTable({0: 1, 1: 2, 2: 2, 3: 3, 4: 4})


@pytest.fixture
def ideal(table):
    return DualIdeal(table, frozenset({1, 3}))


@pytest.fixture
def rng():
    return SplitMix64(0xFEED)
