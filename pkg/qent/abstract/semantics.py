from __future__ import annotations

from dataclasses import dataclass, field

from qent.abstract.domain import AbstractElement
from qent.abstract.lattice import BasisFlag
from qent.abstract.partition import pair_partition, partition_join
from qent.core.errors import MismatchedQubitSets
from qent.core.logging import get_logger
from qent.syntax.ast import (
    H,
    ROOT,
    CNot,
    Command,
    If,
    PauliX,
    PauliY,
    PauliZ,
    ProgramPoint,
    Seq,
    Skip,
    T,
    While,
)

logger = get_logger(__name__)

BOT, STD, DIAG, TOP = BasisFlag.BOT, BasisFlag.STD, BasisFlag.DIAG, BasisFlag.TOP


@dataclass(frozen=True, slots=True)
class GuardOverlap:
    """A CNot input matched more than one case guard; the first listed case applied."""

    point: ProgramPoint
    control: str
    target: str
    control_flag: BasisFlag
    target_flag: BasisFlag
    matched_cases: tuple[int, ...]


@dataclass(slots=True)
class TraceResult:
    points: dict[ProgramPoint, AbstractElement]
    exit: AbstractElement


def _cnot_cases(control_flag: BasisFlag, target_flag: BasisFlag) -> tuple[int, ...]:
    guards = (
        control_flag is STD or target_flag is DIAG,
        control_flag is BOT and target_flag is not BOT,
        control_flag is not BOT and target_flag is BOT,
        control_flag is BOT and target_flag is BOT,
    )
    matched = tuple(case for case, holds in enumerate(guards, start=1) if holds)
    return matched or (5,)


@dataclass(slots=True)
class AbstractInterpreter:
    record: dict[ProgramPoint, AbstractElement] | None = None
    overlaps: list[GuardOverlap] | None = None
    fixpoint_rounds: int = field(default=0)

    def run(
        self, command: Command, a: AbstractElement, point: ProgramPoint = ROOT
    ) -> AbstractElement:
        if self.record is not None and not isinstance(command, Seq):
            self.record[point] = a
        match command:
            case Skip() | PauliX() | PauliY() | PauliZ():
                return a
            case Seq(first, second):
                return self.run(second, self.run(first, a, (*point, "first")), (*point, "second"))
            case H(target):
                flag = a.basis[target]
                swapped = {STD: DIAG, DIAG: STD}.get(flag, flag)
                return AbstractElement(a.basis.updated({target: swapped}), a.partition)
            case T(target):
                flag = a.basis[target]
                shifted = {DIAG: TOP, BOT: STD}.get(flag, flag)
                return AbstractElement(a.basis.updated({target: shifted}), a.partition)
            case CNot(control, target):
                return self._cnot(control, target, a, point)
            case If(cond, then, orelse):
                entry = a.measured(cond)
                return self.run(then, entry, (*point, "then")).join(
                    self.run(orelse, entry, (*point, "else"))
                )
            case While(cond, body):
                return self._loop(cond, body, a, point)
        raise TypeError(f"not a command: {command!r}")

    def _cnot(
        self, control: str, target: str, a: AbstractElement, point: ProgramPoint
    ) -> AbstractElement:
        control_flag, target_flag = a.basis[control], a.basis[target]
        matched = _cnot_cases(control_flag, target_flag)
        if len(matched) > 1:
            logger.debug(
                "cnot_guard_overlap",
                point="/".join(point),
                control_flag=str(control_flag),
                target_flag=str(target_flag),
                matched_cases=matched,
            )
            if self.overlaps is not None:
                self.overlaps.append(
                    GuardOverlap(point, control, target, control_flag, target_flag, matched)
                )
        match matched[0]:
            case 1 | 4:
                # both-bot inputs are maximally mixed on the pair, which CNot fixes
                return a
            case 2:
                return AbstractElement(a.basis.updated({control: STD}), a.partition)
            case 3:
                return AbstractElement(a.basis.updated({target: DIAG}), a.partition)
            case _:
                return AbstractElement(
                    a.basis.updated({control: TOP, target: TOP}),
                    partition_join(a.partition, pair_partition(control, target, a.qubits)),
                )

    def _loop(
        self, cond: str, body: Command, a: AbstractElement, point: ProgramPoint
    ) -> AbstractElement:
        # increasing Kleene iteration: r0 = F(a), r_{k+1} = r_k v F(body(r_k))
        current = a.measured(cond)
        rounds = 0
        while True:
            rounds += 1
            following = current.join(self.run(body, current, (*point, "body")).measured(cond))
            if following == current:
                break
            current = following
        self.fixpoint_rounds += rounds
        logger.debug("abstract_fixpoint_reached", point="/".join(point), rounds=rounds)
        return current


def _check_qubits(command: Command, a: AbstractElement) -> None:
    unknown = sorted(set(command.qubits()) - set(a.qubits))
    if unknown:
        raise MismatchedQubitSets(f"command uses {', '.join(unknown)} outside {a.qubits}")


def abstract_eval(
    command: Command, a: AbstractElement, overlaps: list[GuardOverlap] | None = None
) -> AbstractElement:
    """Abstract denotation of `command` applied to `a`."""
    _check_qubits(command, a)
    return AbstractInterpreter(overlaps=overlaps).run(command, a)


def trace_eval(command: Command, a: AbstractElement) -> TraceResult:
    """Abstract element flowing into every non-sequence sub-command, plus the exit value."""
    _check_qubits(command, a)
    interpreter = AbstractInterpreter(record={})
    exit_value = interpreter.run(command, a)
    assert interpreter.record is not None
    return TraceResult(points=interpreter.record, exit=exit_value)
