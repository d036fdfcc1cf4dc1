from __future__ import annotations

import numpy as np
import pytest

from qent.concrete import (
    DensityState,
    LoopConfig,
    PureBranch,
    PureEnsemble,
    ensemble_from_density,
    ensure_converged,
    evaluate,
    evaluate_ensemble,
    mixture,
    prepare_density,
    prepare_ensemble,
    preset_density,
    while_partial_sums,
)
from qent.core.errors import BranchExplosion, CapacityExceeded, InitSpecError, NonTermination
from qent.linalg import P_FALSE, P_TRUE, H, T, approx_eq, is_density, loewner_leq
from qent.soundness import GeneratorConfig, generate_program, random_product_init
from qent.syntax import Program, Seq, While, parse
from qent.syntax.ast import dagger, is_unitary
from qent.testing.fixtures import golden
from qent.testing.states import random_density, random_state

LOOP = LoopConfig(max_iterations=64)


def test_teleportation_moves_q1_to_q3(rng: np.random.Generator, teleportation: Program) -> None:
    for _ in range(20):
        rho = random_density(rng, 1)
        init = DensityState.of(np.kron(np.kron(rho, P_TRUE), P_TRUE), ("q1", "q2", "q3"))

        final = evaluate(teleportation.body, init)

        assert approx_eq(final.matrix, np.kron(np.eye(4) / 4, rho), tol=1e-9)
        assert final.converged


def test_teleportation_of_pure_state_has_four_quarter_branches(
    rng: np.random.Generator, teleportation: Program
) -> None:
    psi = random_state(rng, 1)
    vector = np.kron(np.kron(psi, [1, 0]), [1, 0]).astype(np.complex128)
    ensemble = PureEnsemble(qubits=("q1", "q2", "q3"), branches=(PureBranch(vector, 1.0),))

    final = evaluate_ensemble(teleportation.body, ensemble)

    assert len(final.branches) == 4
    assert all(branch.weight == pytest.approx(0.25) for branch in final.branches)
    assert sorted(branch.path for branch in final.branches) == [
        (False, False),
        (False, True),
        (True, False),
        (True, True),
    ]
    expected = evaluate(teleportation.body, mixture(ensemble))
    assert approx_eq(mixture(final).matrix, expected.matrix, tol=1e-9)


def test_trap_is_identity(density_factory, trap: Program) -> None:
    for _ in range(20):
        init = density_factory(("q1", "q2"))

        assert approx_eq(evaluate(trap.body, init).matrix, init.matrix, tol=1e-9)


def test_flip_resets_to_true_with_trace_kept(rng: np.random.Generator) -> None:
    program = golden("flip").program()
    for _ in range(20):
        weight = rng.uniform(0.1, 1.0)
        rho = weight * random_density(rng, 1)

        final = evaluate(program.body, DensityState.of(rho, ("q",)))

        assert approx_eq(final.matrix, weight * P_TRUE, tol=1e-9)


def test_while_h_terminates_in_false(rng: np.random.Generator) -> None:
    program = golden("while_h").program()
    cfg = LoopConfig(epsilon=1e-13, max_iterations=64)
    for _ in range(20):
        weight = rng.uniform(0.1, 1.0)
        rho = weight * random_density(rng, 1)

        final = evaluate(program.body, DensityState.of(rho, ("q",)), cfg)

        assert approx_eq(final.matrix, weight * P_FALSE, tol=1e-9)
        assert final.residual < 1e-12
        assert final.converged


def test_evaluate_is_linear(rng: np.random.Generator) -> None:
    for seed in range(100):
        program = generate_program(seed)
        qubits = program.qubit_names
        first = random_density(rng, len(qubits))
        second = random_density(rng, len(qubits))

        def run(rho: np.ndarray) -> np.ndarray:
            return evaluate(program.body, DensityState.of(rho, qubits), LOOP).matrix

        combined = run(0.3 * first + 0.6 * second)
        assert approx_eq(combined, 0.3 * run(first) + 0.6 * run(second), tol=1e-7), seed


def test_evaluate_never_adds_trace(rng: np.random.Generator) -> None:
    for seed in range(200):
        program = generate_program(seed)
        weight = rng.uniform(0.1, 1.0)
        init = DensityState.of(
            weight * random_density(rng, len(program.qubit_names)), program.qubit_names
        )

        final = evaluate(program.body, init, LOOP)

        assert final.trace <= weight + 1e-9, seed
        assert final.trace + final.residual == pytest.approx(weight, abs=1e-9), seed
        assert is_density(final.matrix)


def test_unitary_program_followed_by_its_dagger_is_identity(
    rng: np.random.Generator,
) -> None:
    unitary_only = GeneratorConfig(
        max_qubits=3,
        max_depth=6,
        weights={"h": 2.0, "t": 2.0, "pauli": 1.0, "cnot": 3.0, "seq": 3.0},
    )
    for seed in range(50):
        program = generate_program(seed, unitary_only)
        assert is_unitary(program.body)
        init = DensityState.of(random_density(rng, len(program.qubit_names)), program.qubit_names)

        final = evaluate(Seq(program.body, dagger(program.body)), init)

        assert approx_eq(final.matrix, init.matrix, tol=1e-9), seed


def test_while_partial_sums_increase(rng: np.random.Generator) -> None:
    program = golden("while_h").program()
    assert isinstance(program.body, While)
    init = DensityState.of(random_density(rng, 1), ("q",))

    sums = list(while_partial_sums(program.body, init, LoopConfig(max_iterations=20)))

    assert len(sums) == 21
    for before, after in zip(sums, sums[1:], strict=False):
        assert loewner_leq(before, after)
    assert approx_eq(sums[-1], P_FALSE, tol=1e-5)


def test_nonterminating_loop_is_truncated() -> None:
    program = parse("qubits q; while q do { skip }")
    cfg = LoopConfig(max_iterations=5)
    init = prepare_density(("q",), {"q": "true"})

    final = evaluate(program.body, init, cfg)

    assert not final.converged
    assert final.residual == pytest.approx(1.0)
    assert approx_eq(final.matrix, np.zeros((2, 2)))
    with pytest.raises(NonTermination):
        ensure_converged(final.residual, final.converged, cfg)
    ensure_converged(0.0, True, cfg)


def test_ensemble_truncation_matches_density() -> None:
    program = parse("qubits q; while q do { skip }")
    ensemble = prepare_ensemble(("q",), {"q": "plus"})

    final = evaluate_ensemble(program.body, ensemble, LoopConfig(max_iterations=5))

    assert not final.converged
    assert final.residual == pytest.approx(0.5)
    assert approx_eq(mixture(final).matrix, 0.5 * P_FALSE, tol=1e-9)


def test_branch_cap_raises(teleportation: Program) -> None:
    ensemble = prepare_ensemble(("q1", "q2", "q3"), {"q1": "plus", "q2": "true", "q3": "true"})

    with pytest.raises(BranchExplosion) as exc_info:
        evaluate_ensemble(teleportation.body, ensemble, LoopConfig(branch_cap=1))
    assert exc_info.value.cap == 1


def test_ensemble_matches_density_semantics() -> None:
    for seed in range(300):
        program = generate_program(seed)
        presets = random_product_init(np.random.default_rng([seed, 1]), program.qubit_names)
        ensemble = prepare_ensemble(program.qubit_names, presets)

        branched = mixture(evaluate_ensemble(program.body, ensemble, LOOP))
        dense = evaluate(program.body, mixture(ensemble), LOOP)

        assert approx_eq(branched.matrix, dense.matrix, tol=1e-7), seed
        assert branched.converged == dense.converged, seed


def test_identical_branches_are_merged() -> None:
    program = parse("qubits a; if a then { X(a) } else { skip }")
    ensemble = prepare_ensemble(("a",), {"a": "plus"})

    final = evaluate_ensemble(program.body, ensemble)

    assert len(final.branches) == 1
    assert final.branches[0].weight == pytest.approx(1.0)


def test_mixed_preset_is_purified_by_an_ancilla() -> None:
    ensemble = prepare_ensemble(("a", "b"), {"a": "mixed", "b": "true"})

    assert ensemble.ancillas == 1
    assert ensemble.branches[0].vector.shape == (8,)
    assert approx_eq(mixture(ensemble).matrix, np.kron(np.eye(2) / 2, P_TRUE))


def test_bell_pair_preset() -> None:
    state = prepare_density(("a", "b", "c"), {"b": "false"}, [("a", "c")])
    bell = np.zeros(4, dtype=np.complex128)
    bell[[0, 3]] = 1 / np.sqrt(2)
    one = np.array([0, 1], dtype=np.complex128)
    # a and c are qubits 0 and 2, b sits between them
    expected = np.einsum(
        "ac,b,AC,B->abcABC", bell.reshape(2, 2), one, bell.reshape(2, 2), one
    ).reshape(8, 8)

    assert approx_eq(state.matrix, expected)


@pytest.mark.parametrize(
    ("name", "vector"),
    [
        ("true", np.array([1, 0])),
        ("false", np.array([0, 1])),
        ("plus", np.array([1, 1]) / np.sqrt(2)),
        ("minus", np.array([1, -1]) / np.sqrt(2)),
        ("tstate", T @ H @ np.array([1, 0])),
    ],
)
def test_pure_presets(name: str, vector: np.ndarray) -> None:
    assert approx_eq(preset_density(name), np.outer(vector, vector.conj()))


@pytest.mark.parametrize(
    ("presets", "bell"),
    [
        ({"a": "true"}, []),
        ({"a": "true", "b": "true"}, [("a", "b")]),
        ({"a": "true", "b": "true", "c": "true"}, []),
        ({"a": "sideways", "b": "true"}, []),
    ],
)
def test_prepare_ensemble_rejects_bad_inits(
    presets: dict[str, str], bell: list[tuple[str, str]]
) -> None:
    with pytest.raises(InitSpecError):
        prepare_ensemble(("a", "b"), presets, bell)


def test_prepare_ensemble_respects_capacity() -> None:
    names = tuple(f"q{i}" for i in range(5))

    with pytest.raises(CapacityExceeded):
        prepare_ensemble(names, {name: "true" for name in names}, max_qubits=4)


def test_ensemble_from_density_recovers_state(rng: np.random.Generator) -> None:
    state = DensityState.of(random_density(rng, 2, rank=2), ("a", "b"))

    ensemble = ensemble_from_density(state)

    assert len(ensemble.branches) == 2
    assert approx_eq(mixture(ensemble).matrix, state.matrix, tol=1e-9)


def test_density_state_checks_shape() -> None:
    with pytest.raises(ValueError):
        DensityState(matrix=np.eye(2, dtype=np.complex128), qubits=("a", "b"))


def test_pure_branch_requires_unit_norm() -> None:
    with pytest.raises(ValueError):
        PureBranch(vector=np.array([1, 1], dtype=np.complex128), weight=0.5)
    with pytest.raises(ValueError):
        PureBranch(vector=np.array([1, 0], dtype=np.complex128), weight=0.0)


@pytest.mark.parametrize(
    "kwargs",
    [{"epsilon": 0}, {"max_iterations": 0}, {"branch_cap": 0}, {"max_qubits": 0}],
)
def test_loop_config_validation(kwargs: dict[str, float]) -> None:
    with pytest.raises(ValueError):
        LoopConfig(**kwargs)
