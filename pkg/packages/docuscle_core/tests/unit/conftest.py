"""
Pytest configuration for docuscle_core tests.
"""

import numpy as np
import pytest
from docuscle_core.classical import ClassicalState, Event
from docuscle_core.quantum import DensityMatrix, Projector

SQRT_HALF = 1.0 / np.sqrt(2.0)


@pytest.fixture
def uniform4():
    return ClassicalState.uniform(4)


@pytest.fixture
def skewed4():
    """Weights (0.4, 0.1, 0.2, 0.3)."""
    return ClassicalState(np.array([0.4, 0.1, 0.2, 0.3]))


@pytest.fixture
def plus():
    """|+> as a density matrix."""
    return DensityMatrix.from_pure([SQRT_HALF, SQRT_HALF])


@pytest.fixture
def ket0():
    return Projector.from_indices(2, [0])


@pytest.fixture
def ket1():
    return Projector.from_indices(2, [1])


@pytest.fixture
def plus_proj():
    return Projector.from_vector([1.0, 1.0])


@pytest.fixture
def minus_proj():
    return Projector.from_vector([1.0, -1.0])


@pytest.fixture
def events():
    """Factory for events of dimension 4."""

    def make(*indices):
        return Event.from_indices(4, indices)

    return make
