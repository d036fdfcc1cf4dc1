from __future__ import annotations

from collections.abc import Callable
from pathlib import Path

import numpy as np
import pytest

from qent.concrete import DensityState
from qent.syntax import Program
from qent.testing.fixtures import golden
from qent.testing.states import random_density

SAMPLES_DIR = Path(__file__).resolve().parent.parent / "samples"


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def density_factory(rng: np.random.Generator) -> Callable[..., DensityState]:
    def build(qubits: tuple[str, ...], rank: int | None = None) -> DensityState:
        return DensityState.of(random_density(rng, len(qubits), rank), qubits)

    return build


@pytest.fixture
def teleportation() -> Program:
    return golden("teleport").program()


@pytest.fixture
def teleportation4() -> Program:
    return golden("teleport4").program()


@pytest.fixture
def trap() -> Program:
    return golden("trap").program()


@pytest.fixture
def samples_dir() -> Path:
    return SAMPLES_DIR
