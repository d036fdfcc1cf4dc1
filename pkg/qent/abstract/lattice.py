from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum

from qent.core.errors import MismatchedQubitSets


class BasisFlag(str, Enum):
    """Per-qubit basis knowledge: bot <= s <= top, bot <= d <= top."""

    BOT = "bot"
    STD = "s"
    DIAG = "d"
    TOP = "top"

    def __str__(self) -> str:
        return self.value


def flag_leq(f1: BasisFlag, f2: BasisFlag) -> bool:
    return f1 == f2 or f1 is BasisFlag.BOT or f2 is BasisFlag.TOP


def flag_join(f1: BasisFlag, f2: BasisFlag) -> BasisFlag:
    if flag_leq(f1, f2):
        return f2
    if flag_leq(f2, f1):
        return f1
    return BasisFlag.TOP


def flag_meet(f1: BasisFlag, f2: BasisFlag) -> BasisFlag:
    if flag_leq(f1, f2):
        return f1
    if flag_leq(f2, f1):
        return f2
    return BasisFlag.BOT


@dataclass(frozen=True, slots=True)
class BasisMap:
    qubits: tuple[str, ...]
    flags: tuple[BasisFlag, ...]

    def __post_init__(self) -> None:
        if len(self.qubits) != len(self.flags):
            raise ValueError("one flag per qubit is required")

    @classmethod
    def uniform(cls, qubits: tuple[str, ...], flag: BasisFlag) -> BasisMap:
        return cls(qubits=tuple(qubits), flags=(flag,) * len(qubits))

    @classmethod
    def from_mapping(
        cls, qubits: tuple[str, ...], flags: Mapping[str, BasisFlag], default: BasisFlag
    ) -> BasisMap:
        unknown = sorted(set(flags) - set(qubits))
        if unknown:
            raise MismatchedQubitSets(f"flags given for undeclared {', '.join(unknown)}")
        return cls(qubits=tuple(qubits), flags=tuple(flags.get(q, default) for q in qubits))

    def __getitem__(self, qubit: str) -> BasisFlag:
        return self.flags[self.qubits.index(qubit)]

    def as_dict(self) -> dict[str, BasisFlag]:
        return dict(zip(self.qubits, self.flags, strict=True))

    def updated(self, changes: Mapping[str, BasisFlag]) -> BasisMap:
        """b^{q0 -> k, ...}"""
        return BasisMap(
            qubits=self.qubits,
            flags=tuple(
                changes.get(q, flag) for q, flag in zip(self.qubits, self.flags, strict=True)
            ),
        )


def _check_same(b1: BasisMap, b2: BasisMap) -> None:
    if b1.qubits != b2.qubits:
        raise MismatchedQubitSets(f"basis maps over {b1.qubits} and {b2.qubits}")


def map_leq(b1: BasisMap, b2: BasisMap) -> bool:
    _check_same(b1, b2)
    return all(flag_leq(f1, f2) for f1, f2 in zip(b1.flags, b2.flags, strict=True))


def map_join(b1: BasisMap, b2: BasisMap) -> BasisMap:
    _check_same(b1, b2)
    return BasisMap(
        qubits=b1.qubits,
        flags=tuple(flag_join(f1, f2) for f1, f2 in zip(b1.flags, b2.flags, strict=True)),
    )


def map_meet(b1: BasisMap, b2: BasisMap) -> BasisMap:
    _check_same(b1, b2)
    return BasisMap(
        qubits=b1.qubits,
        flags=tuple(flag_meet(f1, f2) for f1, f2 in zip(b1.flags, b2.flags, strict=True)),
    )
