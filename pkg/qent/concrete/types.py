from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qent.core.config import Settings, get_settings
from qent.linalg import CMatrix, QubitIndexing, check_capacity, num_qubits, trace


@dataclass(frozen=True, slots=True)
class LoopConfig:
    epsilon: float = 1e-9
    max_iterations: int = 1000
    branch_cap: int = 4096
    max_qubits: int = 10

    def __post_init__(self) -> None:
        if self.epsilon <= 0:
            raise ValueError("epsilon must be greater than 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.branch_cap < 1:
            raise ValueError("branch_cap must be at least 1")
        if self.max_qubits < 1:
            raise ValueError("max_qubits must be at least 1")

    @classmethod
    def from_settings(cls, settings: Settings | None = None) -> LoopConfig:
        resolved = settings or get_settings()
        return cls(
            epsilon=resolved.epsilon,
            max_iterations=resolved.max_iterations,
            branch_cap=resolved.branch_cap,
            max_qubits=resolved.max_qubits,
        )


@dataclass(frozen=True, slots=True, eq=False)
class DensityState:
    """A density matrix over the program's qubits.

    `residual` is the loop mass dropped by truncation on the way to this state;
    `converged` is False once some loop hit its iteration cap.
    """

    matrix: CMatrix
    qubits: tuple[str, ...]
    residual: float = 0.0
    converged: bool = True

    def __post_init__(self) -> None:
        if self.matrix.shape != (1 << len(self.qubits),) * 2:
            raise ValueError(
                f"matrix of shape {self.matrix.shape} does not fit {len(self.qubits)} qubits"
            )

    @classmethod
    def of(
        cls, matrix: CMatrix, qubits: tuple[str, ...] | list[str], max_qubits: int | None = None
    ) -> DensityState:
        check_capacity(num_qubits(matrix.shape[0]), max_qubits)
        return cls(matrix=np.asarray(matrix, dtype=np.complex128), qubits=tuple(qubits))

    @property
    def indexing(self) -> QubitIndexing:
        return QubitIndexing(len(self.qubits))

    @property
    def trace(self) -> float:
        return trace(self.matrix).real


@dataclass(frozen=True, slots=True, eq=False)
class PureBranch:
    """One pure component of an ensemble.

    `vector` spans the program qubits followed by any purifying ancillas;
    `path` is the sequence of measurement outcomes that produced the branch.
    """

    vector: np.ndarray
    weight: float
    path: tuple[bool, ...] = ()

    def __post_init__(self) -> None:
        if self.weight <= 0:
            raise ValueError("branch weight must be positive")
        if abs(float(np.linalg.norm(self.vector)) - 1.0) > 1e-9:
            raise ValueError("branch vector must have unit norm")


@dataclass(frozen=True, slots=True, eq=False)
class PureEnsemble:
    qubits: tuple[str, ...]
    branches: tuple[PureBranch, ...]
    ancillas: int = 0
    residual: float = 0.0
    converged: bool = True

    def __post_init__(self) -> None:
        width = 1 << (len(self.qubits) + self.ancillas)
        for branch in self.branches:
            if branch.vector.shape != (width,):
                raise ValueError(
                    f"branch vector of shape {branch.vector.shape} does not fit "
                    f"{len(self.qubits)} qubits and {self.ancillas} ancillas"
                )
        if self.total_weight + self.residual > 1 + 1e-9:
            raise ValueError("ensemble weights and residual exceed 1")

    @property
    def total_weight(self) -> float:
        return float(sum(branch.weight for branch in self.branches))

    @classmethod
    def empty(cls, qubits: tuple[str, ...], ancillas: int = 0) -> PureEnsemble:
        return cls(qubits=qubits, branches=(), ancillas=ancillas)
