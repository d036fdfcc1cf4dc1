from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from qent.syntax.ast import CNot, Command, Program, ProgramPoint, children, format_point

DiagnosticCode = Literal["no_qubits", "duplicate_qubit", "undeclared_qubit", "self_target_cnot"]


@dataclass(frozen=True, slots=True)
class Diagnostic:
    code: DiagnosticCode
    qubit: str | None
    point: ProgramPoint | None = None

    @property
    def message(self) -> str:
        where = f" at {format_point(self.point)}" if self.point is not None else ""
        match self.code:
            case "no_qubits":
                return "program declares no qubits"
            case "duplicate_qubit":
                return f"qubit {self.qubit!r} is declared more than once"
            case "undeclared_qubit":
                return f"qubit {self.qubit!r} is used{where} but never declared"
            case "self_target_cnot":
                return f"CNot{where} uses {self.qubit!r} as both control and target"


def validate(program: Program) -> list[Diagnostic]:
    diagnostics: list[Diagnostic] = []
    names = program.qubit_names
    if not names:
        diagnostics.append(Diagnostic(code="no_qubits", qubit=None))

    seen: set[str] = set()
    for name in names:
        if name in seen:
            diagnostics.append(Diagnostic(code="duplicate_qubit", qubit=name))
        seen.add(name)

    _check_command(program.body, (), seen, diagnostics)
    return diagnostics


def _check_command(
    command: Command,
    point: ProgramPoint,
    declared: set[str],
    diagnostics: list[Diagnostic],
) -> None:
    nested = children(command)
    if not nested:
        for name in dict.fromkeys(command.qubits()):
            if name not in declared:
                diagnostics.append(Diagnostic(code="undeclared_qubit", qubit=name, point=point))
        if isinstance(command, CNot) and command.control == command.target:
            diagnostics.append(
                Diagnostic(code="self_target_cnot", qubit=command.control, point=point)
            )
        return

    cond = getattr(command, "cond", None)
    if cond is not None and cond not in declared:
        diagnostics.append(Diagnostic(code="undeclared_qubit", qubit=cond, point=point))
    for selector, child in nested:
        _check_command(child, (*point, selector), declared, diagnostics)
