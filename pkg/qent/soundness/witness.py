from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from qent.abstract import Partition
from qent.concrete import PureBranch, PureEnsemble
from qent.core.config import settings
from qent.core.errors import MismatchedQubitSets
from qent.core.logging import get_logger
from qent.linalg import H, CMatrix, apply_to_vector, reduced_from_vector

logger = get_logger(__name__)


class SeparabilityVerdict(str, Enum):
    WITNESSED = "witnessed"
    REFUTED = "refuted_branch"
    INCONCLUSIVE = "inconclusive"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True, eq=False)
class WitnessComponent:
    """One term p * |phi><phi| of the decomposition; phi factors across the partition."""

    weight: float
    vector: np.ndarray


@dataclass(slots=True, eq=False)
class SeparabilityWitness:
    verdict: SeparabilityVerdict
    partition: Partition
    components: list[WitnessComponent] = field(default_factory=list)
    refuted_branches: list[int] = field(default_factory=list)

    @property
    def witnessed(self) -> bool:
        return self.verdict is SeparabilityVerdict.WITNESSED

    def reassemble(self) -> CMatrix:
        """Sum over components of p_k times the tensor product of its per-block reduced states."""
        count = len(self.partition.qubits)
        dim = 1 << count
        total = np.zeros((dim, dim), dtype=np.complex128)
        blocks = self.partition.index_blocks
        order = [q for block in blocks for q in block]
        inverse = list(np.argsort(order))
        axes = inverse + [count + axis for axis in inverse]
        for component in self.components:
            product = np.ones((1, 1), dtype=np.complex128)
            for block in blocks:
                product = np.kron(product, reduced_from_vector(component.vector, block))
            tensor = product.reshape([2] * (2 * count)).transpose(axes)
            total += component.weight * tensor.reshape(dim, dim)
        return total


def is_product(vector: np.ndarray, partition: Partition, tol: float) -> bool:
    """Every block's reduced state of `vector` is pure, i.e. the vector factors across blocks."""
    norm = float(np.vdot(vector, vector).real)
    if norm == 0.0:
        return True
    blocks = partition.index_blocks
    if len(blocks) == 1:
        return True
    for block in blocks:
        top = float(np.linalg.eigvalsh(reduced_from_vector(vector, block))[-1])
        if top < norm * (1 - tol):
            return False
    return True


def pure_block_separable(
    psi: PureBranch, partition: Partition, tol: float | None = None
) -> bool:
    return is_product(psi.vector, partition, settings.witness_tolerance if tol is None else tol)


def _ancilla_slices(
    vector: np.ndarray, program_qubits: int, ancillas: int, diagonal: tuple[bool, ...]
) -> list[np.ndarray]:
    """Unnormalized program-qubit vectors after measuring each ancilla in the chosen basis."""
    rotated = vector
    for offset, use_diagonal in enumerate(diagonal):
        if use_diagonal:
            rotated = apply_to_vector(rotated, H, [program_qubits + offset])
    columns = rotated.reshape(1 << program_qubits, 1 << ancillas)
    return [columns[:, j] for j in range(1 << ancillas)]


def _decompose_branch(
    branch: PureBranch, partition: Partition, ancillas: int, tol: float
) -> list[WitnessComponent] | None:
    program_qubits = len(partition.qubits)
    for diagonal in itertools.product((False, True), repeat=ancillas):
        slices = _ancilla_slices(branch.vector, program_qubits, ancillas, diagonal)
        components: list[WitnessComponent] = []
        for piece in slices:
            probability = float(np.vdot(piece, piece).real)
            if probability * branch.weight < 1e-14:
                continue
            if not is_product(piece, partition, tol):
                break
            components.append(
                WitnessComponent(branch.weight * probability, piece / np.sqrt(probability))
            )
        else:
            return components
    return None


def witness_separability(
    ensemble: PureEnsemble, partition: Partition, tol: float | None = None
) -> SeparabilityWitness:
    """Try to exhibit the ensemble's mixture as a convex sum of partition-products.

    Branches with purifying ancillas are tried under every product of standard
    and diagonal measurement bases on those ancillas. A failed branch leaves the
    verdict inconclusive, never refuted: another decomposition may exist.
    """
    if partition.qubits != ensemble.qubits:
        raise MismatchedQubitSets(
            f"partition over {partition.qubits} but ensemble over {ensemble.qubits}"
        )
    resolved = settings.witness_tolerance if tol is None else tol
    witness = SeparabilityWitness(verdict=SeparabilityVerdict.WITNESSED, partition=partition)
    for position, branch in enumerate(ensemble.branches):
        components = _decompose_branch(branch, partition, ensemble.ancillas, resolved)
        if components is None:
            witness.refuted_branches.append(position)
        else:
            witness.components.extend(components)
    if witness.refuted_branches:
        witness.verdict = SeparabilityVerdict.INCONCLUSIVE
        logger.debug(
            "witness_not_found",
            branches=len(ensemble.branches),
            refuted=len(witness.refuted_branches),
        )
    return witness
