from __future__ import annotations

import random

import pytest

from cartan_contact import corpus
from cartan_contact.forms import VectorField
from cartan_contact.reduction import Distribution, default_grid_points


@pytest.fixture
def heisenberg() -> Distribution:
    return corpus.distribution("heisenberg")


@pytest.fixture
def cartan() -> Distribution:
    return corpus.distribution("cartan")


@pytest.fixture
def exercise1a() -> Distribution:
    return corpus.distribution("exercise1a")


@pytest.fixture
def mixed_distribution() -> Distribution:
    # commutator (0, 0, 2x + 1): holonomic exactly on the plane x = -1/2
    return Distribution(VectorField("1", "0", "-y"), VectorField("0", "1", "x^2"),
                        name="mixed-example")


@pytest.fixture
def grid():
    return default_grid_points()


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240811)
