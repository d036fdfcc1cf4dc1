from __future__ import annotations

from dataclasses import replace

import numpy as np

from qent.concrete.types import DensityState, LoopConfig, PureBranch, PureEnsemble
from qent.core.errors import BranchExplosion
from qent.core.logging import get_logger
from qent.linalg import (
    CNOT,
    GATE_MATRICES,
    CMatrix,
    apply_to_vector,
    check_capacity,
    project_vector,
)
from qent.syntax.ast import CNot, Command, If, Seq, Skip, While, _UnaryGate

logger = get_logger(__name__)

DROP_WEIGHT = 1e-12
_FINGERPRINT_DECIMALS = 9


def _fingerprint(vector: np.ndarray) -> bytes:
    """Key identifying a unit vector up to global phase."""
    pivot = int(np.argmax(np.abs(vector) > 1e-6))
    phase = vector[pivot] / abs(vector[pivot])
    aligned = vector / phase
    real = np.round(aligned.real, _FINGERPRINT_DECIMALS) + 0.0
    imag = np.round(aligned.imag, _FINGERPRINT_DECIMALS) + 0.0
    return real.tobytes() + imag.tobytes()


def merge_branches(branches: list[PureBranch]) -> list[PureBranch]:
    """Collapse branches equal up to phase; the first occurrence keeps its vector and path."""
    merged: list[PureBranch] = []
    position: dict[bytes, int] = {}
    for branch in branches:
        key = _fingerprint(branch.vector)
        if key in position:
            idx = position[key]
            merged[idx] = replace(merged[idx], weight=merged[idx].weight + branch.weight)
        else:
            position[key] = len(merged)
            merged.append(branch)
    return merged


class EnsembleInterpreter:
    def __init__(self, qubits: tuple[str, ...], cfg: LoopConfig) -> None:
        self.index = {name: idx for idx, name in enumerate(qubits)}
        self.cfg = cfg
        self.residual = 0.0
        self.converged = True

    def run(self, command: Command, branches: list[PureBranch]) -> list[PureBranch]:
        match command:
            case Skip():
                return branches
            case Seq(first, second):
                return self.run(second, self.run(first, branches))
            case CNot(control, target):
                return self._unitary(branches, CNOT, [self.index[control], self.index[target]])
            case If(cond, then, orelse):
                taken, skipped = self._measure(branches, self.index[cond])
                return self._bounded(self.run(then, taken) + self.run(orelse, skipped))
            case While(cond, body):
                return self._loop(cond, body, branches)
            case _UnaryGate(target=target):
                return self._unitary(branches, GATE_MATRICES[command.symbol], [self.index[target]])
        raise TypeError(f"not a command: {command!r}")

    def _unitary(
        self, branches: list[PureBranch], u: CMatrix, targets: list[int]
    ) -> list[PureBranch]:
        return [replace(b, vector=apply_to_vector(b.vector, u, targets)) for b in branches]

    def _measure(
        self, branches: list[PureBranch], q: int
    ) -> tuple[list[PureBranch], list[PureBranch]]:
        outcomes: dict[bool, list[PureBranch]] = {True: [], False: []}
        for branch in branches:
            for outcome in (True, False):
                projected = project_vector(branch.vector, q, outcome)
                probability = float(np.vdot(projected, projected).real)
                weight = branch.weight * probability
                if weight < DROP_WEIGHT:
                    continue
                outcomes[outcome].append(
                    PureBranch(
                        vector=projected / np.sqrt(probability),
                        weight=weight,
                        path=(*branch.path, outcome),
                    )
                )
        return outcomes[True], outcomes[False]

    def _loop(self, cond: str, body: Command, branches: list[PureBranch]) -> list[PureBranch]:
        q = self.index[cond]
        exited: list[PureBranch] = []
        live = branches
        iteration = 0
        while True:
            pending, leaving = self._measure(live, q)
            exited = self._bounded(exited + leaving)
            remaining = float(sum(branch.weight for branch in pending))
            if remaining < self.cfg.epsilon:
                self.residual += remaining
                return exited
            if iteration >= self.cfg.max_iterations:
                self.residual += remaining
                self.converged = False
                logger.warning(
                    "loop_truncated", qubit=cond, residual=remaining, iterations=iteration
                )
                return exited
            live = self._bounded(self.run(body, pending))
            iteration += 1

    def _bounded(self, branches: list[PureBranch]) -> list[PureBranch]:
        merged = merge_branches(branches)
        if len(merged) > self.cfg.branch_cap:
            logger.warning("branch_cap_exceeded", count=len(merged), cap=self.cfg.branch_cap)
            raise BranchExplosion(count=len(merged), cap=self.cfg.branch_cap)
        return merged


def evaluate_ensemble(
    command: Command, init: PureEnsemble, cfg: LoopConfig | None = None
) -> PureEnsemble:
    """Branching evaluation: every measurement splits branches into renormalized outcomes."""
    resolved = cfg or LoopConfig.from_settings()
    check_capacity(len(init.qubits), resolved.max_qubits)
    interpreter = EnsembleInterpreter(init.qubits, resolved)
    branches = interpreter.run(command, list(init.branches))
    return PureEnsemble(
        qubits=init.qubits,
        branches=tuple(branches),
        ancillas=init.ancillas,
        residual=init.residual + interpreter.residual,
        converged=init.converged and interpreter.converged,
    )


def mixture(ensemble: PureEnsemble) -> DensityState:
    """Sum of p_k |psi_k><psi_k| with purifying ancillas traced out."""
    dim = 1 << len(ensemble.qubits)
    if not ensemble.branches:
        matrix = np.zeros((dim, dim), dtype=np.complex128)
    else:
        stacked = np.stack(
            [np.sqrt(branch.weight) * branch.vector for branch in ensemble.branches]
        )
        count = stacked.shape[0]
        factors = stacked.reshape(count, dim, 1 << ensemble.ancillas)
        columns = np.transpose(factors, (1, 0, 2)).reshape(dim, -1)
        matrix = columns @ columns.conj().T
    return DensityState(
        matrix=matrix,
        qubits=ensemble.qubits,
        residual=ensemble.residual,
        converged=ensemble.converged,
    )
