from __future__ import annotations

from collections.abc import Mapping, Sequence
from typing import Literal, get_args

import numpy as np

from qent.concrete.ensemble import mixture
from qent.concrete.types import DensityState, PureBranch, PureEnsemble
from qent.core.errors import InitSpecError
from qent.linalg import H, T, check_capacity

Preset = Literal["true", "false", "plus", "minus", "mixed", "tstate"]
PRESETS: tuple[str, ...] = get_args(Preset)

_ZERO = np.array([1, 0], dtype=np.complex128)
_ONE = np.array([0, 1], dtype=np.complex128)

PRESET_VECTORS: dict[str, np.ndarray] = {
    "true": _ZERO,
    "false": _ONE,
    "plus": H @ _ZERO,
    "minus": H @ _ONE,
    "tstate": T @ H @ _ZERO,
}

# (|00> + |11>) / sqrt(2): Bell pairs, and the purification of a maximally mixed qubit.
_PHI_PLUS = np.array([[1, 0], [0, 1]], dtype=np.complex128) / np.sqrt(2)


def preset_density(name: str) -> np.ndarray:
    if name == "mixed":
        return np.eye(2, dtype=np.complex128) / 2
    if name not in PRESET_VECTORS:
        raise InitSpecError(f"unknown preset {name!r}; expected one of {', '.join(PRESETS)}")
    vector = PRESET_VECTORS[name]
    return np.outer(vector, vector.conj())


def prepare_ensemble(
    qubits: Sequence[str],
    presets: Mapping[str, str],
    bell_pairs: Sequence[tuple[str, str]] = (),
    max_qubits: int | None = None,
) -> PureEnsemble:
    """Single-branch ensemble of a product of presets and Bell pairs.

    Every `mixed` qubit is purified by a fresh ancilla appended after the
    program qubits, so the branch stays pure.
    """
    names = tuple(qubits)
    check_capacity(len(names), max_qubits)
    index = {name: idx for idx, name in enumerate(names)}
    covered = [name for pair in bell_pairs for name in pair] + list(presets)
    missing = [name for name in names if name not in covered]
    if missing:
        raise InitSpecError(f"no initial state given for {', '.join(missing)}")
    duplicated = sorted({name for name in covered if covered.count(name) > 1})
    if duplicated:
        raise InitSpecError(f"initial state given more than once for {', '.join(duplicated)}")
    unknown = sorted(set(covered) - set(names))
    if unknown:
        raise InitSpecError(f"initial state given for undeclared {', '.join(unknown)}")

    factors: list[tuple[tuple[int, ...], np.ndarray]] = []
    ancillas = 0
    for first, second in bell_pairs:
        factors.append(((index[first], index[second]), _PHI_PLUS))
    for name in names:
        if name not in presets:
            continue
        preset = presets[name]
        if preset == "mixed":
            factors.append(((index[name], len(names) + ancillas), _PHI_PLUS))
            ancillas += 1
        elif preset in PRESET_VECTORS:
            factors.append(((index[name],), PRESET_VECTORS[preset]))
        else:
            raise InitSpecError(
                f"unknown preset {preset!r} for {name}; expected one of {', '.join(PRESETS)}"
            )

    amplitudes = np.array(1.0, dtype=np.complex128)
    axis_labels: list[int] = []
    for axes, tensor in factors:
        amplitudes = np.multiply.outer(amplitudes, tensor)
        axis_labels.extend(axes)
    vector = np.transpose(amplitudes, np.argsort(axis_labels)).reshape(-1)

    return PureEnsemble(
        qubits=names,
        branches=(PureBranch(vector=np.ascontiguousarray(vector), weight=1.0),),
        ancillas=ancillas,
    )


def prepare_density(
    qubits: Sequence[str],
    presets: Mapping[str, str],
    bell_pairs: Sequence[tuple[str, str]] = (),
    max_qubits: int | None = None,
) -> DensityState:
    return mixture(prepare_ensemble(qubits, presets, bell_pairs, max_qubits))


def ensemble_from_density(state: DensityState, cutoff: float = 1e-12) -> PureEnsemble:
    """Spectral decomposition of an arbitrary density matrix."""
    hermitian = (state.matrix + state.matrix.conj().T) / 2
    eigenvalues, eigenvectors = np.linalg.eigh(hermitian)
    branches = tuple(
        PureBranch(vector=np.ascontiguousarray(eigenvectors[:, k]), weight=float(value))
        for k, value in enumerate(eigenvalues)
        if value > cutoff
    )
    return PureEnsemble(qubits=state.qubits, branches=branches, residual=state.residual)

