"""
Pytest configuration and fixtures for Pathdiv tests.
"""

import tempfile
from pathlib import Path

import pytest

from pathdiv.config import init_settings
from pathdiv.core.generator import generate_instance
from pathdiv.io import dump_instance
from pathdiv.models import ElementarySimplex, Instance

# The five-agent, twelve-item chain in which knives 1..4 step from
# 3, 4.5, 8, 10.5 to 3.5, 5, 8.5, 11 (doubled below).
GOLDEN_VERTICES = [
    (6, 9, 16, 21),
    (6, 10, 16, 21),
    (6, 10, 17, 21),
    (6, 10, 17, 22),
    (7, 10, 17, 22),
]
GOLDEN_DIVISION = [(1, 3), (4, 5), (6, 8), (9, 10), (11, 12)]


@pytest.fixture(autouse=True)
def fresh_settings():
    """Start every test from default settings."""
    settings = init_settings()
    yield settings
    init_settings()


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def golden_instance():
    """Five agents valuing each of twelve items at 1."""
    return Instance.additive([[1] * 12 for _ in range(5)])


@pytest.fixture
def golden_simplex():
    return ElementarySimplex.from_vertices(12, GOLDEN_VERTICES)


@pytest.fixture
def make_instance():
    """Factory for seeded random additive instances."""

    def factory(seed: int, n: int, m: int, max_value: int = 10) -> Instance:
        return generate_instance(seed, n, m, max_value)

    return factory


@pytest.fixture
def instance_file(temp_dir):
    """Write an instance into the temporary directory and return its path."""

    def write(inst: Instance, name: str = "instance.json") -> Path:
        path = temp_dir / name
        dump_instance(inst, path)
        return path

    return write
