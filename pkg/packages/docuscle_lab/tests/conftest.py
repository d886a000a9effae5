"""
Pytest configuration for docuscle_lab tests.
"""

import orjson
import pytest

HALF = [0.5, 0.0]
PLUS = [[HALF, HALF], [HALF, HALF]]


@pytest.fixture
def plus_config():
    """|+> emitter, X = |+><+|, R = |0><0|."""
    return {
        "model": "quantum",
        "state": {"matrix": PLUS},
        "x": {"matrix": PLUS},
        "r": {"members": [0]},
    }


@pytest.fixture
def uniform_config():
    """Uniform over four outcomes, X = {0}, R = {0, 1}."""
    return {
        "model": "classical",
        "state": {"weights": [0.25, 0.25, 0.25, 0.25]},
        "x": {"members": [0]},
        "r": {"members": [0, 1]},
    }


@pytest.fixture
def write_config(tmp_path):
    """Write a config mapping (or raw text) to a file and return its path."""

    def write(data, name="config.json"):
        path = tmp_path / name
        if isinstance(data, str):
            path.write_text(data)
        else:
            path.write_bytes(orjson.dumps(data, option=orjson.OPT_INDENT_2))
        return path

    return write
