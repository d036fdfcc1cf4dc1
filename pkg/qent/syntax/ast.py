from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from typing import ClassVar, Literal, TypeAlias


@dataclass(frozen=True, slots=True)
class QubitId:
    name: str
    index: int


@dataclass(frozen=True, slots=True)
class Skip:
    def qubits(self) -> Iterator[str]:
        yield from ()


@dataclass(frozen=True, slots=True)
class Seq:
    first: Command
    second: Command

    def qubits(self) -> Iterator[str]:
        yield from self.first.qubits()
        yield from self.second.qubits()


@dataclass(frozen=True, slots=True)
class If:
    cond: str
    then: Command
    orelse: Command

    def qubits(self) -> Iterator[str]:
        yield self.cond
        yield from self.then.qubits()
        yield from self.orelse.qubits()


@dataclass(frozen=True, slots=True)
class While:
    cond: str
    body: Command

    def qubits(self) -> Iterator[str]:
        yield self.cond
        yield from self.body.qubits()


@dataclass(frozen=True, slots=True)
class _UnaryGate:
    target: str

    symbol: ClassVar[str] = ""

    def qubits(self) -> Iterator[str]:
        yield self.target


@dataclass(frozen=True, slots=True)
class H(_UnaryGate):
    symbol: ClassVar[str] = "H"


@dataclass(frozen=True, slots=True)
class T(_UnaryGate):
    symbol: ClassVar[str] = "T"


@dataclass(frozen=True, slots=True)
class PauliX(_UnaryGate):
    symbol: ClassVar[str] = "X"


@dataclass(frozen=True, slots=True)
class PauliY(_UnaryGate):
    symbol: ClassVar[str] = "Y"


@dataclass(frozen=True, slots=True)
class PauliZ(_UnaryGate):
    symbol: ClassVar[str] = "Z"


@dataclass(frozen=True, slots=True)
class CNot:
    control: str
    target: str

    symbol: ClassVar[str] = "CNot"

    def qubits(self) -> Iterator[str]:
        yield self.control
        yield self.target


UnaryGate: TypeAlias = H | T | PauliX | PauliY | PauliZ
Command: TypeAlias = Skip | Seq | If | While | H | T | PauliX | PauliY | PauliZ | CNot

UNARY_GATES: dict[str, type[UnaryGate]] = {
    cls.symbol: cls for cls in (H, T, PauliX, PauliY, PauliZ)
}


@dataclass(frozen=True, slots=True)
class Program:
    qubits: tuple[QubitId, ...]
    body: Command

    @classmethod
    def declare(cls, names: list[str] | tuple[str, ...], body: Command) -> Program:
        return cls(
            qubits=tuple(QubitId(name=name, index=idx) for idx, name in enumerate(names)),
            body=body,
        )

    @property
    def qubit_names(self) -> tuple[str, ...]:
        return tuple(qubit.name for qubit in self.qubits)

    def index_of(self, name: str) -> int:
        for qubit in self.qubits:
            if qubit.name == name:
                return qubit.index
        raise KeyError(name)


def sequence(commands: list[Command]) -> Command:
    """Right-associated sequencing: [a, b, c] -> Seq(a, Seq(b, c))."""
    if not commands:
        return Skip()
    result = commands[-1]
    for command in reversed(commands[:-1]):
        result = Seq(command, result)
    return result


Selector: TypeAlias = Literal["first", "second", "then", "else", "body"]
ProgramPoint: TypeAlias = tuple[Selector, ...]

ROOT: ProgramPoint = ()


def children(command: Command) -> list[tuple[Selector, Command]]:
    match command:
        case Seq(first, second):
            return [("first", first), ("second", second)]
        case If(_, then, orelse):
            return [("then", then), ("else", orelse)]
        case While(_, body):
            return [("body", body)]
        case _:
            return []


def resolve(command: Command, point: ProgramPoint) -> Command:
    node = command
    for selector in point:
        lookup = dict(children(node))
        if selector not in lookup:
            raise KeyError(f"program point {'/'.join(point) or '<root>'} does not resolve")
        node = lookup[selector]
    return node


def iter_points(command: Command, prefix: ProgramPoint = ROOT) -> Iterator[ProgramPoint]:
    """Non-sequence sub-commands, in textual order."""
    if not isinstance(command, Seq):
        yield prefix
    for selector, child in children(command):
        yield from iter_points(child, (*prefix, selector))


def format_point(point: ProgramPoint) -> str:
    return "/".join(point) or "<root>"


def is_unitary(command: Command) -> bool:
    match command:
        case If() | While():
            return False
        case Seq(first, second):
            return is_unitary(first) and is_unitary(second)
        case _:
            return True


def dagger(command: Command) -> Command:
    """Inverse of a measurement-free command."""
    match command:
        case Skip() | H() | PauliX() | PauliY() | PauliZ() | CNot():
            return command
        case T(target):
            # T^8 = I, so T^-1 = T^7
            return sequence([T(target)] * 7)
        case Seq(first, second):
            return Seq(dagger(second), dagger(first))
        case _:
            raise ValueError("only measurement-free commands have a dagger")
