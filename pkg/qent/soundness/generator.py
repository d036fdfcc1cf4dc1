from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from qent.concrete import PRESETS
from qent.syntax import CNot, Command, H, If, PauliX, PauliY, PauliZ, Program, Seq, Skip, T, While

LEAF_KINDS = ("skip", "h", "t", "pauli", "cnot")
COMPOUND_KINDS = ("seq", "if", "while")

DEFAULT_WEIGHTS: Mapping[str, float] = {
    "skip": 1.0,
    "h": 2.0,
    "t": 2.0,
    "pauli": 1.0,
    "cnot": 3.0,
    "seq": 3.0,
    "if": 1.0,
    "while": 0.5,
}


@dataclass(frozen=True, slots=True)
class GeneratorConfig:
    max_qubits: int = 4
    max_depth: int = 8
    weights: Mapping[str, float] = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))

    def __post_init__(self) -> None:
        if self.max_qubits < 1:
            raise ValueError("max_qubits must be at least 1")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        unknown = sorted(set(self.weights) - set(LEAF_KINDS + COMPOUND_KINDS))
        if unknown:
            raise ValueError(f"unknown constructor weights: {', '.join(unknown)}")
        if any(weight < 0 for weight in self.weights.values()):
            raise ValueError("constructor weights must be non-negative")


class _ProgramBuilder:
    def __init__(
        self, rng: np.random.Generator, qubits: tuple[str, ...], weights: Mapping[str, float]
    ) -> None:
        self.rng = rng
        self.qubits = qubits
        self.weights = weights

    def _pick(self, kinds: Sequence[str]) -> str:
        allowed = [kind for kind in kinds if kind != "cnot" or len(self.qubits) > 1]
        weights = np.array([self.weights.get(kind, 0.0) for kind in allowed])
        if weights.sum() <= 0:
            return "skip"
        return allowed[int(self.rng.choice(len(allowed), p=weights / weights.sum()))]

    def _qubit(self) -> str:
        return self.qubits[int(self.rng.integers(len(self.qubits)))]

    def command(self, depth: int) -> Command:
        kinds: tuple[str, ...] = LEAF_KINDS
        if depth >= 2:
            kinds = kinds + ("seq", "if")
        if depth >= 3:
            kinds = kinds + ("while",)
        match self._pick(kinds):
            case "skip":
                return Skip()
            case "h":
                return H(self._qubit())
            case "t":
                return T(self._qubit())
            case "pauli":
                gate = (PauliX, PauliY, PauliZ)[int(self.rng.integers(3))]
                return gate(self._qubit())
            case "cnot":
                control, target = self.rng.choice(len(self.qubits), size=2, replace=False)
                return CNot(self.qubits[int(control)], self.qubits[int(target)])
            case "seq":
                return Seq(self.command(depth - 1), self.command(depth - 1))
            case "if":
                return If(self._qubit(), self.command(depth - 1), self.command(depth - 1))
            case _:
                # the trailing H re-randomizes the guard every round
                guard = self._qubit()
                return While(guard, Seq(self.command(depth - 2), H(guard)))


def generate_program(seed: int, config: GeneratorConfig | None = None) -> Program:
    """Random valid program; the same seed and config always give the same AST."""
    resolved = config or GeneratorConfig()
    rng = np.random.default_rng(seed)
    count = int(rng.integers(1, resolved.max_qubits + 1))
    qubits = tuple(f"q{idx}" for idx in range(1, count + 1))
    body = _ProgramBuilder(rng, qubits, resolved.weights).command(resolved.max_depth)
    return Program.declare(qubits, body)


def random_product_init(
    rng: np.random.Generator, qubits: Sequence[str], presets: Sequence[str] = PRESETS
) -> dict[str, str]:
    return {name: presets[int(rng.integers(len(presets)))] for name in qubits}
