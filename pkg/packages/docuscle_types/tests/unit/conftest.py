"""
Pytest configuration for docuscle_types tests.
"""

import pytest


@pytest.fixture
def plus_instance():
    """|+><+| with X = |+><+| and R = |0><0| in serialized form."""
    half = [0.5, 0.0]
    return {
        "model": "quantum",
        "state": {"matrix": [[half, half], [half, half]]},
        "x": {"matrix": [[half, half], [half, half]]},
        "r": {"members": [0]},
    }


@pytest.fixture
def classical_instance():
    return {
        "model": "classical",
        "state": {"weights": [0.25, 0.25, 0.25, 0.25]},
        "x": {"members": [0]},
        "r": {"members": [0, 1]},
    }
