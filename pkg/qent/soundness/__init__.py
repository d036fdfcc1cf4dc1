"""Concrete-versus-abstract soundness checking and the randomized suite."""
from qent.soundness.beta import BetaResult, beta, in_diagonal_basis, in_standard_basis
from qent.soundness.checker import (
    SigmaCheck,
    SoundnessReport,
    Verdict,
    abstract_from_state,
    check_precondition,
    check_sound,
    combine,
    sigma_check,
    sigma_convexity_check,
)
from qent.soundness.generator import GeneratorConfig, generate_program, random_product_init
from qent.soundness.suite import SuiteConfig, SuiteSummary, run_case, run_suite
from qent.soundness.witness import (
    SeparabilityVerdict,
    SeparabilityWitness,
    WitnessComponent,
    is_product,
    pure_block_separable,
    witness_separability,
)

__all__ = [
    "BetaResult",
    "GeneratorConfig",
    "SeparabilityVerdict",
    "SeparabilityWitness",
    "SigmaCheck",
    "SoundnessReport",
    "SuiteConfig",
    "SuiteSummary",
    "Verdict",
    "WitnessComponent",
    "abstract_from_state",
    "beta",
    "check_precondition",
    "check_sound",
    "combine",
    "generate_program",
    "in_diagonal_basis",
    "in_standard_basis",
    "is_product",
    "pure_block_separable",
    "random_product_init",
    "run_case",
    "run_suite",
    "sigma_check",
    "sigma_convexity_check",
    "witness_separability",
]
