"""
Pytest configuration for docuscle_beam tests.
"""

import numpy as np
import pytest
from docuscle_beam.pipeline import Emitter
from docuscle_core.classical import ClassicalState, Event
from docuscle_core.quantum import DensityMatrix, Projector


@pytest.fixture
def uniform_emitter():
    return Emitter(ClassicalState.uniform(4))


@pytest.fixture
def classical_pair():
    """(X, R) = ({0}, {0, 1}) over four outcomes."""
    return Event.from_indices(4, [0]), Event.from_indices(4, [0, 1])


@pytest.fixture
def plus_emitter():
    return Emitter(DensityMatrix.from_pure([1.0, 1.0]))


@pytest.fixture
def plus_pair():
    """(X, R) = (|+><+|, |0><0|)."""
    return Projector.from_vector([1.0, 1.0]), Projector.from_indices(2, [0])


@pytest.fixture
def mixed_emitter():
    return Emitter(DensityMatrix(np.eye(2, dtype=complex) / 2))
