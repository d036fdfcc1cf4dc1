from __future__ import annotations

from dataclasses import replace

import numpy as np
import pytest

from qent import syntax
from qent.abstract import (
    AbstractElement,
    BasisFlag,
    BasisMap,
    Partition,
    abstract_eval,
    map_leq,
)
from qent.concrete import (
    LoopConfig,
    PureBranch,
    PureEnsemble,
    evaluate,
    evaluate_ensemble,
    mixture,
    prepare_density,
    prepare_ensemble,
    preset_density,
)
from qent.core.errors import MismatchedQubitSets, PreconditionViolated
from qent.linalg import P_FALSE, P_TRUE, H, approx_eq, lift
from qent.soundness import (
    GeneratorConfig,
    SeparabilityVerdict,
    SuiteConfig,
    Verdict,
    abstract_from_state,
    beta,
    check_precondition,
    check_sound,
    combine,
    generate_program,
    pure_block_separable,
    random_product_init,
    run_case,
    run_suite,
    sigma_convexity_check,
    witness_separability,
)
from qent.syntax import CNot, If, Program, Seq, Skip, While, parse
from qent.syntax.ast import children
from qent.testing.states import random_state

BOT, STD, DIAG, TOP = BasisFlag.BOT, BasisFlag.STD, BasisFlag.DIAG, BasisFlag.TOP
LOOP = LoopConfig(max_iterations=64)
TELEPORT_INIT = {"q1": "plus", "q2": "true", "q3": "true"}


def single(qubits: tuple[str, ...], vector: np.ndarray, weight: float = 1.0) -> PureEnsemble:
    branch = PureBranch(vector=np.asarray(vector, dtype=np.complex128), weight=weight)
    return PureEnsemble(qubits=qubits, branches=(branch,))


def bell_vector() -> np.ndarray:
    return np.array([1, 0, 0, 1], dtype=np.complex128) / np.sqrt(2)


def reference_flags(rho: np.ndarray, count: int, tol: float = 1e-9) -> tuple[BasisFlag, ...]:
    def standard(m: np.ndarray, q: int) -> bool:
        zero, one = lift(P_TRUE, [q], count), lift(P_FALSE, [q], count)
        return bool(
            np.linalg.norm(zero @ m @ one) <= tol and np.linalg.norm(one @ m @ zero) <= tol
        )

    flags = []
    for q in range(count):
        rotation = lift(H, [q], count)
        s, d = standard(rho, q), standard(rotation @ rho @ rotation.conj().T, q)
        flags.append(BOT if s and d else STD if s else DIAG if d else TOP)
    return tuple(flags)


@pytest.mark.parametrize(
    ("preset", "flag"),
    [
        ("mixed", BOT),
        ("true", STD),
        ("false", STD),
        ("plus", DIAG),
        ("minus", DIAG),
        ("tstate", TOP),
    ],
)
def test_beta_of_presets(preset: str, flag: BasisFlag) -> None:
    state = prepare_density(("q",), {"q": preset})

    assert beta(state)["q"] is flag
    assert approx_eq(state.matrix, preset_density(preset))


def test_beta_of_bell_pair_is_top() -> None:
    state = prepare_density(("a", "b"), {}, [("a", "b")])

    assert beta(state).flags.flags == (TOP, TOP)


def test_beta_of_classically_correlated_pair() -> None:
    state = evaluate(CNot("a", "b"), prepare_density(("a", "b"), {"a": "mixed", "b": "true"}))

    result = beta(state)
    assert result.flags.flags == (STD, STD)
    assert result.standard == (True, True)
    assert result.diagonal == (False, False)


def test_beta_matches_explicit_projector_test() -> None:
    rng = np.random.default_rng(17)

    for case in range(200):
        count = int(rng.integers(1, 4))
        qubits = tuple(f"q{i}" for i in range(count))
        init = prepare_density(qubits, random_product_init(rng, qubits))
        gates: list[syntax.Command] = []
        for _ in range(int(rng.integers(0, 4))):
            target = qubits[int(rng.integers(count))]
            if count > 1 and rng.random() < 0.3:
                control = next(q for q in qubits if q != target)
                gates.append(CNot(control, target))
            else:
                gates.append((syntax.H, syntax.T, syntax.PauliX)[int(rng.integers(3))](target))
        state = evaluate(syntax.sequence(gates), init)

        assert beta(state).flags.flags == reference_flags(state.matrix, count), case


def test_pure_block_separable() -> None:
    qubits = ("a", "b", "c")
    product = np.kron(np.kron([1, 0], np.array([1, 1]) / np.sqrt(2)), [0, 1])
    entangled = np.kron(bell_vector(), [1, 0])

    assert pure_block_separable(PureBranch(product, 1.0), Partition.discrete(qubits))
    assert not pure_block_separable(PureBranch(entangled, 1.0), Partition.discrete(qubits))
    assert pure_block_separable(
        PureBranch(entangled, 1.0), Partition.from_blocks(qubits, [["a", "b"]], complete=False)
    )
    assert not pure_block_separable(
        PureBranch(entangled, 1.0), Partition.from_blocks(qubits, [["a", "c"]], complete=False)
    )


def test_witness_of_bell_pair_is_inconclusive() -> None:
    ensemble = single(("a", "b"), bell_vector())

    witness = witness_separability(ensemble, Partition.discrete(("a", "b")))

    assert witness.verdict is SeparabilityVerdict.INCONCLUSIVE
    assert witness.refuted_branches == [0]
    assert witness_separability(ensemble, Partition.coarsest(("a", "b"))).witnessed


def test_witness_of_empty_ensemble() -> None:
    ensemble = PureEnsemble.empty(("a", "b"))

    witness = witness_separability(ensemble, Partition.discrete(("a", "b")))

    assert witness.witnessed
    assert approx_eq(witness.reassemble(), np.zeros((4, 4)))


def test_witness_rejects_foreign_partition() -> None:
    with pytest.raises(MismatchedQubitSets):
        witness_separability(PureEnsemble.empty(("a",)), Partition.discrete(("b",)))


def test_witness_reassembles_teleportation_output(teleportation: Program) -> None:
    rng = np.random.default_rng(23)
    psi = random_state(rng, 1)
    init = single(("q1", "q2", "q3"), np.kron(np.kron(psi, [1, 0]), [1, 0]))
    final = evaluate_ensemble(teleportation.body, init)

    witness = witness_separability(final, Partition.discrete(final.qubits))

    assert witness.witnessed
    assert len(witness.components) == 4
    assert approx_eq(witness.reassemble(), mixture(final).matrix, tol=1e-7)


@pytest.mark.parametrize(
    "source",
    [
        "qubits a, b; CNot(a, b)",
        "qubits a, b; H(a); CNot(a, b)",
        "qubits a, b; H(b); CNot(a, b); H(b)",
    ],
)
def test_witness_uses_ancilla_bases(source: str) -> None:
    program = parse(source)
    init = prepare_ensemble(("a", "b"), {"a": "mixed", "b": "mixed"})
    final = evaluate_ensemble(program.body, init)

    witness = witness_separability(final, Partition.discrete(("a", "b")))

    assert witness.witnessed
    assert approx_eq(witness.reassemble(), mixture(final).matrix, tol=1e-7)


def test_check_sound_teleportation(teleportation: Program) -> None:
    init = prepare_ensemble(teleportation.qubit_names, TELEPORT_INIT)
    initial = AbstractElement(
        abstract_from_state(mixture(init)).basis.updated({"q1": TOP}),
        Partition.discrete(teleportation.qubit_names),
    )

    report = check_sound(teleportation, init, initial)

    assert report.verdict is Verdict.PASS
    assert report.beta_ok
    assert report.beta is not None
    # both measured qubits end maximally mixed
    assert report.beta["q1"] is BOT and report.beta["q2"] is BOT
    assert map_leq(report.beta.flags, report.claimed.basis)
    assert report.witness_verdict is SeparabilityVerdict.WITNESSED


def test_check_sound_trap(trap: Program) -> None:
    init = prepare_ensemble(trap.qubit_names, {"q1": "plus", "q2": "true"})
    initial = abstract_from_state(mixture(init))

    report = check_sound(trap, init, initial)

    assert initial.basis.flags == (DIAG, STD)
    assert report.verdict is Verdict.PASS
    assert report.claimed.partition.blocks == (("q1", "q2"),)
    assert report.beta is not None
    assert report.beta.flags.flags == (DIAG, STD)


def test_check_sound_with_bell_input() -> None:
    program = parse("qubits a, b, c; CNot(b, c); if a then { skip } else { skip }")
    init = prepare_ensemble(("a", "b", "c"), {"c": "true"}, [("a", "b")])
    initial = abstract_from_state(mixture(init), [["a", "b"]])

    report = check_sound(program, init, initial)

    assert report.verdict is Verdict.PASS
    assert report.claimed.partition.blocks == (("a",), ("b", "c"))


def test_precondition_is_checked() -> None:
    program = parse("qubits a; H(a)")
    init = prepare_ensemble(("a",), {"a": "plus"})
    wrong = AbstractElement.bottom(("a",))

    with pytest.raises(PreconditionViolated):
        check_sound(program, init, wrong)
    with pytest.raises(PreconditionViolated):
        check_precondition(
            single(("a", "b"), bell_vector()),
            AbstractElement(BasisMap.uniform(("a", "b"), TOP), Partition.discrete(("a", "b"))),
        )


def test_wrong_abstraction_is_reported_as_failure(monkeypatch: pytest.MonkeyPatch) -> None:
    program = parse("qubits a, b; H(a); CNot(a, b)")
    init = prepare_ensemble(("a", "b"), {"a": "true", "b": "true"})
    monkeypatch.setattr("qent.soundness.checker.abstract_eval", lambda command, a: a)

    report = check_sound(program, init, abstract_from_state(mixture(init)))

    assert report.verdict is Verdict.FAIL
    assert not report.beta_ok
    assert report.witness_verdict is SeparabilityVerdict.REFUTED


def test_branch_explosion_is_inconclusive(teleportation: Program) -> None:
    init = prepare_ensemble(teleportation.qubit_names, TELEPORT_INIT)

    report = check_sound(
        teleportation, init, abstract_from_state(mixture(init)), LoopConfig(branch_cap=1)
    )

    assert report.verdict is Verdict.INCONCLUSIVE
    assert report.reason is not None


def test_loop_truncation_still_passes() -> None:
    program = parse("qubits a, b; while a do { CNot(a, b); H(a) }")
    init = prepare_ensemble(("a", "b"), {"a": "plus", "b": "true"})

    initial = abstract_from_state(mixture(init))

    report = check_sound(program, init, initial, LoopConfig(max_iterations=2))

    assert not report.converged
    assert report.residual > 0
    assert report.verdict is Verdict.PASS


def test_sigma_convexity_examples() -> None:
    qubits = ("a", "b")
    first = prepare_ensemble(qubits, {"a": "true", "b": "plus"})
    second = prepare_ensemble(qubits, {"a": "mixed", "b": "minus"})
    bell = single(qubits, bell_vector())

    halves = [_scaled(e, 0.5) for e in (first, second, bell)]
    a_first = abstract_from_state(mixture(halves[0]))
    a_second = abstract_from_state(mixture(halves[1]))
    a_bell = AbstractElement.top(qubits)

    assert sigma_convexity_check(halves[0], halves[1], a_first, a_second)
    assert sigma_convexity_check(halves[0], halves[2], a_first, a_bell)
    with pytest.raises(PreconditionViolated):
        sigma_convexity_check(first, second, a_first, a_second)
    with pytest.raises(PreconditionViolated):
        sigma_convexity_check(halves[2], halves[0], a_first, a_first)


def _scaled(ensemble: PureEnsemble, factor: float) -> PureEnsemble:
    return PureEnsemble(
        qubits=ensemble.qubits,
        branches=tuple(replace(b, weight=b.weight * factor) for b in ensemble.branches),
        ancillas=ensemble.ancillas,
    )


def test_combine_sums_mixtures() -> None:
    qubits = ("a", "b")
    first = _scaled(prepare_ensemble(qubits, {"a": "mixed", "b": "true"}), 0.5)
    second = _scaled(prepare_ensemble(qubits, {"a": "plus", "b": "false"}), 0.5)

    combined = combine(first, second)

    assert combined.ancillas == 1
    assert approx_eq(mixture(combined).matrix, mixture(first).matrix + mixture(second).matrix)


def test_sigma_convexity_on_generated_outputs() -> None:
    checked = 0
    for seed in range(200):
        program = generate_program(seed, GeneratorConfig(max_qubits=3, max_depth=5))
        qubits = program.qubit_names
        rng = np.random.default_rng([seed, 2])
        outputs = []
        for _ in range(2):
            init = prepare_ensemble(qubits, random_product_init(rng, qubits))
            final = evaluate_ensemble(program.body, init, LOOP)
            claimed = abstract_eval(program.body, abstract_from_state(mixture(init)))
            outputs.append((_scaled(final, 0.5), claimed))
        (first, a1), (second, a2) = outputs

        assert sigma_convexity_check(first, second, a1, a2), seed
        checked += 1

    assert checked == 200


def test_generator_is_deterministic() -> None:
    for seed in range(50):
        assert generate_program(seed) == generate_program(seed)
    assert any(generate_program(seed) != generate_program(seed + 1) for seed in range(10))


def test_generator_depth_one_gives_leaves() -> None:
    config = GeneratorConfig(max_depth=1)

    for seed in range(100):
        body = generate_program(seed, config).body
        assert not isinstance(body, Seq | If | While)


def test_generator_covers_every_constructor() -> None:
    seen: set[str] = set()

    def collect(command: syntax.Command) -> None:
        seen.add(type(command).__name__)
        for _selector, child in children(command):
            collect(child)

    for seed in range(300):
        program = generate_program(seed)
        assert len(program.qubit_names) <= 4
        collect(program.body)

    assert seen == {"Skip", "Seq", "If", "While", "H", "T", "PauliX", "PauliY", "PauliZ", "CNot"}


@pytest.mark.parametrize(
    "kwargs",
    [{"max_qubits": 0}, {"max_depth": 0}, {"weights": {"loop": 1.0}}, {"weights": {"h": -1.0}}],
)
def test_generator_config_validation(kwargs: dict) -> None:
    with pytest.raises(ValueError):
        GeneratorConfig(**kwargs)


def test_generator_without_weights_emits_skip() -> None:
    config = GeneratorConfig(weights={})

    assert generate_program(0, config).body == Skip()


def test_run_case_is_reproducible() -> None:
    first = run_case(42, GeneratorConfig(), LOOP)
    second = run_case(42, GeneratorConfig(), LOOP)

    assert first.program == second.program
    assert first.verdict is second.verdict
    assert first.seed == 42


def test_suite_finds_no_soundness_failures() -> None:
    summary = run_suite(SuiteConfig(cases=1000, seed=7))

    assert summary.cases == 1000
    assert summary.failed == 0, summary.failing_seeds
    assert summary.inconclusive == 0, summary.inconclusive_seeds
    assert summary.verdict is Verdict.PASS
    assert summary.headline() == "1000/1000 PASS, 0 inconclusive, 0 FAIL"


def test_suite_config_validation() -> None:
    with pytest.raises(ValueError):
        SuiteConfig(cases=-1)
    with pytest.raises(ValueError):
        SuiteConfig(workers=0)
