from __future__ import annotations

from collections.abc import Sequence
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from qent.syntax.validation import Diagnostic


class QentError(Exception):
    """Base error. `code` is a stable snake_case identifier for reports."""

    code = "qent_error"

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message


class ProgramSyntaxError(QentError):
    code = "syntax_error"

    def __init__(self, line: int, column: int, expected: Sequence[str], found: str) -> None:
        expected_text = ", ".join(sorted(expected)) or "end of input"
        super().__init__(
            f"line {line}, column {column}: unexpected {found!r}; expected one of: {expected_text}"
        )
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        self.found = found


class ProgramValidationError(QentError):
    code = "invalid_program"

    def __init__(self, diagnostics: Sequence[Diagnostic]) -> None:
        super().__init__("; ".join(d.message for d in diagnostics))
        self.diagnostics = tuple(diagnostics)

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(d.code for d in self.diagnostics)


class CapacityExceeded(QentError):
    code = "capacity_exceeded"

    def __init__(self, qubits: int, limit: int) -> None:
        super().__init__(f"{qubits} qubits exceed the configured capacity of {limit}")
        self.qubits = qubits
        self.limit = limit


class BadTarget(QentError):
    code = "bad_target"


class NotHermitian(QentError):
    code = "not_hermitian"


class MismatchedQubitSets(QentError):
    code = "mismatched_qubit_sets"


class NonTermination(QentError):
    code = "non_termination"

    def __init__(self, residual: float, iterations: int) -> None:
        super().__init__(
            f"loop still carried trace {residual:.3e} after {iterations} iterations"
        )
        self.residual = residual
        self.iterations = iterations


class BranchExplosion(QentError):
    code = "branch_explosion"

    def __init__(self, count: int, cap: int) -> None:
        super().__init__(f"{count} live branches exceed the branch cap of {cap}")
        self.count = count
        self.cap = cap


class PreconditionViolated(QentError):
    code = "precondition_violated"


class AbstractSyntaxError(QentError):
    code = "malformed_abstract_element"


class InitSpecError(QentError):
    code = "malformed_init"
