from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qent.abstract import BasisFlag, BasisMap
from qent.concrete import DensityState
from qent.linalg import DEFAULT_TOLERANCE, H, CMatrix, QubitIndexing, conjugate_gate, num_qubits


@dataclass(frozen=True, slots=True)
class BetaResult:
    flags: BasisMap
    standard: tuple[bool, ...]
    diagonal: tuple[bool, ...]

    def __getitem__(self, qubit: str) -> BasisFlag:
        return self.flags[qubit]


def in_standard_basis(rho: CMatrix, q: int, tol: float = DEFAULT_TOLERANCE) -> bool:
    """P_true rho P_false and P_false rho P_true both vanish on qubit q."""
    indexing = QubitIndexing(num_qubits(rho.shape[0]))
    zero, one = indexing.mask(q, 0), indexing.mask(q, 1)
    upper = rho[np.ix_(zero, one)]
    lower = rho[np.ix_(one, zero)]
    return bool(np.linalg.norm(upper) <= tol and np.linalg.norm(lower) <= tol)


def in_diagonal_basis(rho: CMatrix, q: int, tol: float = DEFAULT_TOLERANCE) -> bool:
    return in_standard_basis(conjugate_gate(rho, H, [q]), q, tol)


def _flag(standard: bool, diagonal: bool) -> BasisFlag:
    if standard and diagonal:
        return BasisFlag.BOT
    if standard:
        return BasisFlag.STD
    if diagonal:
        return BasisFlag.DIAG
    return BasisFlag.TOP


def beta(state: DensityState, tol: float = DEFAULT_TOLERANCE) -> BetaResult:
    """Which qubits of `state` sit in the standard and/or diagonal basis."""
    count = len(state.qubits)
    standard = tuple(in_standard_basis(state.matrix, q, tol) for q in range(count))
    diagonal = tuple(in_diagonal_basis(state.matrix, q, tol) for q in range(count))
    flags = BasisMap(
        qubits=state.qubits,
        flags=tuple(_flag(s, d) for s, d in zip(standard, diagonal, strict=True)),
    )
    return BetaResult(flags=flags, standard=standard, diagonal=diagonal)
