"""Dense complex matrix kernel over qubit-indexed spaces."""
from qent.linalg.gates import CNOT, GATE_MATRICES, I2, P_FALSE, P_TRUE, CMatrix, H, T, X, Y, Z
from qent.linalg.ops import (
    DEFAULT_TOLERANCE,
    QubitIndexing,
    apply_to_vector,
    approx_eq,
    check_capacity,
    conjugate_gate,
    is_density,
    is_hermitian,
    kron,
    lift,
    loewner_leq,
    matrix_from_json,
    matrix_to_json,
    num_qubits,
    partial_trace,
    project,
    project_vector,
    reduced_from_vector,
    trace,
)

__all__ = [
    "CNOT",
    "CMatrix",
    "DEFAULT_TOLERANCE",
    "GATE_MATRICES",
    "H",
    "I2",
    "P_FALSE",
    "P_TRUE",
    "QubitIndexing",
    "T",
    "X",
    "Y",
    "Z",
    "apply_to_vector",
    "approx_eq",
    "check_capacity",
    "conjugate_gate",
    "is_density",
    "is_hermitian",
    "kron",
    "lift",
    "loewner_leq",
    "matrix_from_json",
    "matrix_to_json",
    "num_qubits",
    "partial_trace",
    "project",
    "project_vector",
    "reduced_from_vector",
    "trace",
]
