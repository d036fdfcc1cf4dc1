from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from qent.abstract.union_find import DisjointSet
from qent.core.errors import MismatchedQubitSets


@dataclass(frozen=True, slots=True)
class Partition:
    """A partition of the declared qubits.

    Stored canonically as `leaders[i]`: the least declaration index in the
    block of qubit i. Two partitions are equal iff their leaders are.
    """

    qubits: tuple[str, ...]
    leaders: tuple[int, ...]

    @classmethod
    def discrete(cls, qubits: Iterable[str]) -> Partition:
        names = tuple(qubits)
        return cls(qubits=names, leaders=tuple(range(len(names))))

    @classmethod
    def coarsest(cls, qubits: Iterable[str]) -> Partition:
        names = tuple(qubits)
        return cls(qubits=names, leaders=(0,) * len(names))

    @classmethod
    def from_blocks(
        cls, qubits: Iterable[str], blocks: Iterable[Iterable[str]], complete: bool = True
    ) -> Partition:
        """Build from explicit blocks; with complete=False uncovered qubits become singletons."""
        names = tuple(qubits)
        index = {name: idx for idx, name in enumerate(names)}
        groups: list[list[int]] = []
        seen: set[str] = set()
        for block in blocks:
            members = list(block)
            if not members:
                raise ValueError("partition blocks must be non-empty")
            for name in members:
                if name not in index:
                    raise MismatchedQubitSets(f"block member {name!r} is not a declared qubit")
                if name in seen:
                    raise ValueError(f"qubit {name!r} appears in more than one block")
                seen.add(name)
            groups.append([index[name] for name in members])
        uncovered = [name for name in names if name not in seen]
        if uncovered and complete:
            raise ValueError(f"blocks do not cover {', '.join(uncovered)}")
        groups.extend([index[name]] for name in uncovered)
        return cls._from_groups(names, groups)

    @classmethod
    def _from_groups(cls, qubits: tuple[str, ...], groups: Iterable[Iterable[int]]) -> Partition:
        leaders = [0] * len(qubits)
        for group in groups:
            members = list(group)
            least = min(members)
            for member in members:
                leaders[member] = least
        return cls(qubits=qubits, leaders=tuple(leaders))

    @property
    def index_blocks(self) -> tuple[tuple[int, ...], ...]:
        grouped: dict[int, list[int]] = {}
        for idx, leader in enumerate(self.leaders):
            grouped.setdefault(leader, []).append(idx)
        return tuple(tuple(grouped[leader]) for leader in sorted(grouped))

    @property
    def blocks(self) -> tuple[tuple[str, ...], ...]:
        return tuple(tuple(self.qubits[i] for i in block) for block in self.index_blocks)

    def block_of(self, qubit: str) -> tuple[str, ...]:
        leader = self.leaders[self._index(qubit)]
        return tuple(q for q, lead in zip(self.qubits, self.leaders, strict=True) if lead == leader)

    def _index(self, qubit: str) -> int:
        try:
            return self.qubits.index(qubit)
        except ValueError:
            raise MismatchedQubitSets(f"{qubit!r} is not one of {self.qubits}") from None


def _check_same(p1: Partition, p2: Partition) -> None:
    if p1.qubits != p2.qubits:
        raise MismatchedQubitSets(f"partitions over {p1.qubits} and {p2.qubits}")


def partition_leq(p1: Partition, p2: Partition) -> bool:
    """p1 refines p2."""
    _check_same(p1, p2)
    return all(
        p2.leaders[idx] == p2.leaders[leader] for idx, leader in enumerate(p1.leaders)
    )


def partition_join(p1: Partition, p2: Partition) -> Partition:
    _check_same(p1, p2)
    merged = DisjointSet(len(p1.qubits))
    for partition in (p1, p2):
        for idx, leader in enumerate(partition.leaders):
            merged.union(idx, leader)
    return Partition(qubits=p1.qubits, leaders=merged.leaders())


def partition_meet(p1: Partition, p2: Partition) -> Partition:
    _check_same(p1, p2)
    first_seen: dict[tuple[int, int], int] = {}
    leaders = tuple(
        first_seen.setdefault((l1, l2), idx)
        for idx, (l1, l2) in enumerate(zip(p1.leaders, p2.leaders, strict=True))
    )
    return Partition(qubits=p1.qubits, leaders=leaders)


def remove(p: Partition, q: str) -> Partition:
    """Move q into its own singleton block."""
    target = p._index(q)
    groups = [[i for i in block if i != target] for block in p.index_blocks]
    groups = [group for group in groups if group]
    groups.append([target])
    return Partition._from_groups(p.qubits, groups)


def pair_partition(q1: str, q2: str, qubits: Iterable[str]) -> Partition:
    """{q1, q2} as one block, every other qubit a singleton."""
    if q1 == q2:
        raise ValueError("a pair partition needs two distinct qubits")
    return Partition.from_blocks(qubits, [[q1, q2]], complete=False)


def enumerate_partitions(qubits: Iterable[str]) -> Iterator[Partition]:
    """Every set partition of the qubits (Bell-number many)."""
    names = tuple(qubits)

    def extend(assigned: list[int], blocks: int) -> Iterator[list[int]]:
        if len(assigned) == len(names):
            yield assigned
            return
        for label in range(blocks + 1):
            yield from extend([*assigned, label], max(blocks, label + 1))

    for labels in extend([], 0):
        groups: dict[int, list[int]] = {}
        for idx, label in enumerate(labels):
            groups.setdefault(label, []).append(idx)
        yield Partition._from_groups(names, groups.values())
