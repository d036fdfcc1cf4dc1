from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from qent.abstract import (
    AbstractElement,
    BasisMap,
    Partition,
    abstract_eval,
    map_leq,
)
from qent.concrete import (
    DensityState,
    LoopConfig,
    PureBranch,
    PureEnsemble,
    evaluate_ensemble,
    mixture,
)
from qent.core.config import settings
from qent.core.errors import BranchExplosion, PreconditionViolated
from qent.core.logging import get_logger
from qent.soundness.beta import BetaResult, beta
from qent.soundness.witness import SeparabilityVerdict, SeparabilityWitness, witness_separability
from qent.syntax import Program, unparse

logger = get_logger(__name__)


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __str__(self) -> str:
        return self.value


@dataclass(slots=True, eq=False)
class SigmaCheck:
    """Whether one concrete state is approximated by one abstract element."""

    beta: BetaResult
    beta_ok: bool
    witness: SeparabilityWitness

    @property
    def holds(self) -> bool:
        return self.beta_ok and self.witness.witnessed


def sigma_check(
    ensemble: PureEnsemble,
    a: AbstractElement,
    tol: float | None = None,
    witness_tol: float | None = None,
) -> SigmaCheck:
    resolved_tol = settings.tolerance if tol is None else tol
    flags = beta(mixture(ensemble), resolved_tol)
    witness = witness_separability(ensemble, a.partition, witness_tol)
    return SigmaCheck(beta=flags, beta_ok=map_leq(flags.flags, a.basis), witness=witness)


@dataclass(slots=True, eq=False)
class SoundnessReport:
    verdict: Verdict
    program: str
    claimed: AbstractElement
    beta: BetaResult | None = None
    witness: SeparabilityWitness | None = None
    residual: float = 0.0
    converged: bool = True
    seed: int | None = None
    reason: str | None = None

    @property
    def beta_ok(self) -> bool:
        return self.beta is not None and map_leq(self.beta.flags, self.claimed.basis)

    @property
    def witness_verdict(self) -> SeparabilityVerdict:
        if self.witness is None:
            return SeparabilityVerdict.INCONCLUSIVE
        return self.witness.verdict


def _is_rank_one(state: DensityState, tol: float) -> bool:
    if state.trace <= tol:
        return False
    eigenvalues = np.linalg.eigvalsh((state.matrix + state.matrix.conj().T) / 2)
    return bool(eigenvalues[-1] >= state.trace * (1 - tol))


def check_precondition(
    ensemble: PureEnsemble,
    a: AbstractElement,
    tol: float | None = None,
    witness_tol: float | None = None,
) -> SigmaCheck:
    check = sigma_check(ensemble, a, tol, witness_tol)
    if not check.beta_ok:
        raise PreconditionViolated(
            f"initial basis flags {check.beta.flags.as_dict()} exceed claimed {a.basis.as_dict()}"
        )
    if not check.witness.witnessed:
        raise PreconditionViolated(
            f"initial state is not shown separable across {a.partition.blocks}"
        )
    return check


def check_sound(
    program: Program,
    init_concrete: PureEnsemble,
    init_abstract: AbstractElement,
    cfg: LoopConfig | None = None,
    tol: float | None = None,
    seed: int | None = None,
) -> SoundnessReport:
    """Run both semantics from a sigma-related input pair and compare the outputs.

    PASS means beta of the concrete output sits below the abstract flags and the
    output was witnessed separable across the abstract partition.
    """
    resolved_tol = settings.tolerance if tol is None else tol
    check_precondition(init_concrete, init_abstract, resolved_tol)
    source = unparse(program)
    claimed = abstract_eval(program.body, init_abstract)
    try:
        final = evaluate_ensemble(program.body, init_concrete, cfg)
    except BranchExplosion as exc:
        return SoundnessReport(
            verdict=Verdict.INCONCLUSIVE,
            program=source,
            claimed=claimed,
            seed=seed,
            reason=exc.message,
        )

    check = sigma_check(final, claimed, resolved_tol)
    witness = check.witness
    if not witness.witnessed and _is_rank_one(mixture(final), settings.witness_tolerance):
        # a pure output has only one decomposition, so a failed branch is a real refutation
        witness.verdict = SeparabilityVerdict.REFUTED

    if not check.beta_ok or witness.verdict is SeparabilityVerdict.REFUTED:
        verdict = Verdict.FAIL
    elif witness.witnessed:
        verdict = Verdict.PASS
    else:
        verdict = Verdict.INCONCLUSIVE

    report = SoundnessReport(
        verdict=verdict,
        program=source,
        claimed=claimed,
        beta=check.beta,
        witness=witness,
        residual=final.residual,
        converged=final.converged,
        seed=seed,
    )
    if verdict is Verdict.FAIL:
        logger.error("soundness_case_failed", seed=seed, program=source)
    return report


def _pad_ancillas(ensemble: PureEnsemble, ancillas: int) -> tuple[PureBranch, ...]:
    extra = ancillas - ensemble.ancillas
    if extra == 0:
        return ensemble.branches
    zero = np.zeros(1 << extra, dtype=np.complex128)
    zero[0] = 1.0
    return tuple(
        PureBranch(vector=np.kron(branch.vector, zero), weight=branch.weight, path=branch.path)
        for branch in ensemble.branches
    )


def combine(first: PureEnsemble, second: PureEnsemble) -> PureEnsemble:
    """Ensemble whose mixture is the sum of both mixtures."""
    ancillas = max(first.ancillas, second.ancillas)
    return PureEnsemble(
        qubits=first.qubits,
        branches=_pad_ancillas(first, ancillas) + _pad_ancillas(second, ancillas),
        ancillas=ancillas,
    )


def sigma_convexity_check(
    first: PureEnsemble,
    second: PureEnsemble,
    a1: AbstractElement,
    a2: AbstractElement,
    tol: float | None = None,
) -> bool:
    """Check that the sum of two approximated states is approximated by the join."""
    if first.qubits != second.qubits:
        raise PreconditionViolated("both states must range over the same qubits")
    if first.total_weight + second.total_weight > 1 + 1e-9:
        raise PreconditionViolated("the summed state has trace above 1")
    for ensemble, a in ((first, a1), (second, a2)):
        check_precondition(ensemble, a, tol)
    return sigma_check(combine(first, second), a1.join(a2), tol).holds


def abstract_from_state(
    state: DensityState,
    entangled: Sequence[Sequence[str]] = (),
    tol: float | None = None,
) -> AbstractElement:
    """Abstract element for a known initial state: flags from beta, blocks from `entangled`."""
    flags: BasisMap = beta(state, settings.tolerance if tol is None else tol).flags
    partition = Partition.from_blocks(state.qubits, entangled, complete=False)
    return AbstractElement(flags, partition)
