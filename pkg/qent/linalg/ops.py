from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from qent.core.config import settings
from qent.core.errors import BadTarget, CapacityExceeded, NotHermitian
from qent.linalg.gates import CMatrix

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True, slots=True)
class QubitIndexing:
    """Declaration order is tensor-factor order; the leftmost qubit is the most significant bit."""

    count: int

    @property
    def dim(self) -> int:
        return 1 << self.count

    def mask(self, ordinal: int, value: int) -> np.ndarray:
        indices = np.arange(self.dim)
        return ((indices >> (self.count - 1 - ordinal)) & 1) == value


def num_qubits(dim: int) -> int:
    count = int(dim).bit_length() - 1
    if dim < 1 or (1 << count) != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return count


def check_capacity(qubits: int, limit: int | None = None) -> None:
    resolved = settings.max_qubits if limit is None else limit
    if qubits > resolved:
        raise CapacityExceeded(qubits=qubits, limit=resolved)


def kron(a: CMatrix, b: CMatrix, max_qubits: int | None = None) -> CMatrix:
    check_capacity(num_qubits(a.shape[0] * b.shape[0]), max_qubits)
    return np.kron(a, b)


def trace(m: CMatrix) -> complex:
    return complex(np.trace(m))


def _check_targets(targets: Sequence[int], count: int, arity: int) -> None:
    if len(targets) != arity:
        raise BadTarget(f"gate acts on {arity} qubits but {len(targets)} targets were given")
    if len(set(targets)) != len(targets):
        raise BadTarget(f"targets {list(targets)} are not distinct")
    for target in targets:
        if not 0 <= target < count:
            raise BadTarget(f"target {target} is outside 0..{count - 1}")


def _apply_on_axes(tensor: np.ndarray, op: CMatrix, axes: Sequence[int]) -> np.ndarray:
    """Contract `op` against the given binary axes of `tensor`."""
    k = len(axes)
    front = list(range(k))
    moved = np.moveaxis(tensor, list(axes), front)
    shape = moved.shape
    out = (op @ moved.reshape(1 << k, -1)).reshape(shape)
    return np.moveaxis(out, front, list(axes))


def conjugate_gate(rho: CMatrix, u: CMatrix, targets: Sequence[int]) -> CMatrix:
    """E rho E^dagger with E the lift of `u` onto `targets`, without building E."""
    n = num_qubits(rho.shape[0])
    _check_targets(targets, n, num_qubits(u.shape[0]))
    tensor = rho.reshape([2] * (2 * n))
    tensor = _apply_on_axes(tensor, u, targets)
    tensor = _apply_on_axes(tensor, u.conj(), [n + t for t in targets])
    return np.ascontiguousarray(tensor.reshape(rho.shape))


def apply_to_vector(psi: np.ndarray, u: CMatrix, targets: Sequence[int]) -> np.ndarray:
    n = num_qubits(psi.shape[0])
    _check_targets(targets, n, num_qubits(u.shape[0]))
    tensor = _apply_on_axes(psi.reshape([2] * n), u, targets)
    return np.ascontiguousarray(tensor.reshape(psi.shape))


def lift(u: CMatrix, targets: Sequence[int], count: int) -> CMatrix:
    """Explicit full-space operator of `u` acting on `targets`."""
    identity = np.eye(1 << count, dtype=np.complex128)
    columns = [apply_to_vector(identity[:, j], u, targets) for j in range(1 << count)]
    return np.stack(columns, axis=1)


def project(rho: CMatrix, q: int, outcome: bool) -> CMatrix:
    n = num_qubits(rho.shape[0])
    if not 0 <= q < n:
        raise BadTarget(f"qubit {q} is outside 0..{n - 1}")
    keep = QubitIndexing(n).mask(q, 0 if outcome else 1)
    return rho * np.outer(keep, keep)


def project_vector(psi: np.ndarray, q: int, outcome: bool) -> np.ndarray:
    n = num_qubits(psi.shape[0])
    if not 0 <= q < n:
        raise BadTarget(f"qubit {q} is outside 0..{n - 1}")
    keep = QubitIndexing(n).mask(q, 0 if outcome else 1)
    return psi * keep


def is_hermitian(m: CMatrix, tol: float = DEFAULT_TOLERANCE) -> bool:
    return bool(np.linalg.norm(m - m.conj().T) <= tol)


def loewner_leq(a: CMatrix, b: CMatrix, tol: float = DEFAULT_TOLERANCE) -> bool:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    for name, m in (("left", a), ("right", b)):
        if not is_hermitian(m, tol):
            raise NotHermitian(f"{name} operand is not Hermitian within {tol}")
    difference = b - a
    hermitian_part = (difference + difference.conj().T) / 2
    return bool(np.linalg.eigvalsh(hermitian_part).min() >= -tol)


def is_density(m: CMatrix, tol: float = DEFAULT_TOLERANCE) -> bool:
    if m.ndim != 2 or m.shape[0] != m.shape[1] or not is_hermitian(m, tol):
        return False
    hermitian_part = (m + m.conj().T) / 2
    if np.linalg.eigvalsh(hermitian_part).min() < -tol:
        return False
    return trace(m).real <= 1 + tol


def approx_eq(a: CMatrix, b: CMatrix, tol: float = DEFAULT_TOLERANCE) -> bool:
    if a.shape != b.shape:
        return False
    return bool(np.linalg.norm(a - b) <= tol)


def partial_trace(rho: CMatrix, keep: Sequence[int]) -> CMatrix:
    """Reduced matrix on the `keep` qubits, in their given order."""
    n = num_qubits(rho.shape[0])
    keep = list(keep)
    traced = [q for q in range(n) if q not in keep]
    tensor = rho.reshape([2] * (2 * n))
    order = keep + traced + [n + q for q in keep] + [n + q for q in traced]
    k = len(keep)
    tensor = np.transpose(tensor, order).reshape(1 << k, 1 << (n - k), 1 << k, 1 << (n - k))
    return np.einsum("ajbj->ab", tensor)


def reduced_from_vector(psi: np.ndarray, block: Sequence[int]) -> CMatrix:
    n = num_qubits(psi.shape[0])
    tensor = np.moveaxis(psi.reshape([2] * n), list(block), list(range(len(block))))
    m = tensor.reshape(1 << len(block), -1)
    return m @ m.conj().T


def matrix_to_json(m: CMatrix) -> list[list[list[float]]]:
    return [[[float(entry.real), float(entry.imag)] for entry in row] for row in m]


def matrix_from_json(rows: list[list[list[float]]]) -> CMatrix:
    matrix = np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("matrix must be square")
    num_qubits(matrix.shape[0])
    return matrix
