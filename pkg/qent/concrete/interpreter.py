from __future__ import annotations

from collections.abc import Callable, Iterator

from qent.concrete.types import DensityState, LoopConfig
from qent.core.errors import NonTermination
from qent.core.logging import get_logger
from qent.linalg import CNOT, GATE_MATRICES, CMatrix, check_capacity, conjugate_gate, project, trace
from qent.syntax.ast import CNot, Command, If, Seq, Skip, While, _UnaryGate

logger = get_logger(__name__)


def _unroll(
    rho: CMatrix, q: int, body: Callable[[CMatrix], CMatrix]
) -> Iterator[tuple[CMatrix, CMatrix]]:
    """Partial sums of the loop: (accumulated exit mass, pending true-branch state)."""
    accumulated = project(rho, q, False)
    pending = project(rho, q, True)
    while True:
        yield accumulated, pending
        after = body(pending)
        accumulated = accumulated + project(after, q, False)
        pending = project(after, q, True)


class DensityInterpreter:
    def __init__(self, qubits: tuple[str, ...], cfg: LoopConfig) -> None:
        self.index = {name: idx for idx, name in enumerate(qubits)}
        self.cfg = cfg
        self.residual = 0.0
        self.converged = True

    def run(self, command: Command, rho: CMatrix) -> CMatrix:
        match command:
            case Skip():
                return rho
            case Seq(first, second):
                return self.run(second, self.run(first, rho))
            case CNot(control, target):
                return conjugate_gate(rho, CNOT, [self.index[control], self.index[target]])
            case If(cond, then, orelse):
                q = self.index[cond]
                return self.run(then, project(rho, q, True)) + self.run(
                    orelse, project(rho, q, False)
                )
            case While(cond, body):
                return self._loop(cond, body, rho)
            case _UnaryGate(target=target):
                return conjugate_gate(rho, GATE_MATRICES[command.symbol], [self.index[target]])
        raise TypeError(f"not a command: {command!r}")

    def _loop(self, cond: str, body: Command, rho: CMatrix) -> CMatrix:
        q = self.index[cond]
        for iteration, (accumulated, pending) in enumerate(
            _unroll(rho, q, lambda state: self.run(body, state))
        ):
            remaining = trace(pending).real
            if remaining < self.cfg.epsilon:
                self.residual += max(remaining, 0.0)
                return accumulated
            if iteration >= self.cfg.max_iterations:
                self.residual += remaining
                self.converged = False
                logger.warning(
                    "loop_truncated", qubit=cond, residual=remaining, iterations=iteration
                )
                return accumulated
        raise AssertionError("unreachable")


def evaluate(command: Command, state: DensityState, cfg: LoopConfig | None = None) -> DensityState:
    """Concrete denotation of `command` applied to `state`."""
    resolved = cfg or LoopConfig.from_settings()
    check_capacity(len(state.qubits), resolved.max_qubits)
    interpreter = DensityInterpreter(state.qubits, resolved)
    matrix = interpreter.run(command, state.matrix)
    return DensityState(
        matrix=matrix,
        qubits=state.qubits,
        residual=state.residual + interpreter.residual,
        converged=state.converged and interpreter.converged,
    )


def while_partial_sums(
    loop: While, state: DensityState, cfg: LoopConfig | None = None
) -> Iterator[CMatrix]:
    """Accumulated loop output after 0, 1, 2, ... body executions."""
    resolved = cfg or LoopConfig.from_settings()
    interpreter = DensityInterpreter(state.qubits, resolved)
    q = interpreter.index[loop.cond]
    for iteration, (accumulated, _pending) in enumerate(
        _unroll(state.matrix, q, lambda rho: interpreter.run(loop.body, rho))
    ):
        yield accumulated
        if iteration >= resolved.max_iterations:
            return


def ensure_converged(residual: float, converged: bool, cfg: LoopConfig) -> None:
    if not converged:
        raise NonTermination(residual=residual, iterations=cfg.max_iterations)
