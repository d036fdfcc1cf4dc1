from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from qent.abstract.lattice import BasisFlag, BasisMap, map_join, map_leq, map_meet
from qent.abstract.partition import Partition, partition_join, partition_leq, partition_meet, remove
from qent.core.errors import MismatchedQubitSets


@dataclass(frozen=True, slots=True)
class AbstractElement:
    basis: BasisMap
    partition: Partition

    def __post_init__(self) -> None:
        if self.basis.qubits != self.partition.qubits:
            raise MismatchedQubitSets(
                f"basis over {self.basis.qubits} but partition over {self.partition.qubits}"
            )

    @property
    def qubits(self) -> tuple[str, ...]:
        return self.basis.qubits

    @classmethod
    def bottom(cls, qubits: Iterable[str]) -> AbstractElement:
        names = tuple(qubits)
        return cls(BasisMap.uniform(names, BasisFlag.BOT), Partition.discrete(names))

    @classmethod
    def top(cls, qubits: Iterable[str]) -> AbstractElement:
        names = tuple(qubits)
        return cls(BasisMap.uniform(names, BasisFlag.TOP), Partition.coarsest(names))

    def leq(self, other: AbstractElement) -> bool:
        return map_leq(self.basis, other.basis) and partition_leq(self.partition, other.partition)

    def join(self, other: AbstractElement) -> AbstractElement:
        return AbstractElement(
            map_join(self.basis, other.basis), partition_join(self.partition, other.partition)
        )

    def meet(self, other: AbstractElement) -> AbstractElement:
        return AbstractElement(
            map_meet(self.basis, other.basis), partition_meet(self.partition, other.partition)
        )

    def measured(self, qubit: str) -> AbstractElement:
        """Effect of measuring `qubit`: it is classical and split off its block."""
        return AbstractElement(
            self.basis.updated({qubit: BasisFlag.STD}), remove(self.partition, qubit)
        )
