from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

CMatrix = NDArray[np.complex128]


def _frozen(rows: list[list[complex]]) -> CMatrix:
    matrix = np.array(rows, dtype=np.complex128)
    matrix.setflags(write=False)
    return matrix


_R = 1 / np.sqrt(2)

I2 = _frozen([[1, 0], [0, 1]])
H = _frozen([[_R, _R], [_R, -_R]])
T = _frozen([[1, 0], [0, np.exp(1j * np.pi / 4)]])
X = _frozen([[0, 1], [1, 0]])
Y = _frozen([[0, -1j], [1j, 0]])
Z = _frozen([[1, 0], [0, -1]])
CNOT = _frozen(
    [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ]
)

# The "true" measurement outcome is the first computational basis vector.
P_TRUE = _frozen([[1, 0], [0, 0]])
P_FALSE = _frozen([[0, 0], [0, 1]])

GATE_MATRICES: dict[str, CMatrix] = {
    "H": H,
    "T": T,
    "X": X,
    "Y": Y,
    "Z": Z,
    "CNot": CNOT,
}
