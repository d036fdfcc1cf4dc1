from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from qent.concrete import LoopConfig, mixture, prepare_ensemble
from qent.core.config import Settings, get_settings
from qent.core.logging import case_context, get_logger
from qent.soundness.checker import SoundnessReport, Verdict, abstract_from_state, check_sound
from qent.soundness.generator import GeneratorConfig, generate_program, random_product_init

logger = get_logger(__name__)


@dataclass(frozen=True, slots=True)
class SuiteConfig:
    cases: int = 1000
    seed: int = 7
    generator: GeneratorConfig = field(default_factory=GeneratorConfig)
    loop: LoopConfig = field(default_factory=lambda: LoopConfig(max_iterations=64))
    workers: int = 1

    def __post_init__(self) -> None:
        if self.cases < 0:
            raise ValueError("cases must be non-negative")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    @classmethod
    def from_settings(cls, settings: Settings | None = None) -> SuiteConfig:
        resolved = settings or get_settings()
        return cls(
            cases=resolved.fuzz_cases,
            seed=resolved.fuzz_seed,
            generator=GeneratorConfig(
                max_qubits=resolved.fuzz_max_qubits, max_depth=resolved.fuzz_max_depth
            ),
            loop=LoopConfig(
                epsilon=resolved.epsilon,
                max_iterations=resolved.fuzz_loop_cap,
                branch_cap=resolved.branch_cap,
                max_qubits=resolved.max_qubits,
            ),
            workers=resolved.fuzz_workers,
        )


@dataclass(slots=True)
class SuiteSummary:
    cases: int = 0
    passed: int = 0
    failed: int = 0
    inconclusive: int = 0
    failing_seeds: list[int] = field(default_factory=list)
    inconclusive_seeds: list[int] = field(default_factory=list)

    def add(self, report: SoundnessReport) -> None:
        self.cases += 1
        seed = report.seed if report.seed is not None else -1
        if report.verdict is Verdict.PASS:
            self.passed += 1
        elif report.verdict is Verdict.FAIL:
            self.failed += 1
            self.failing_seeds.append(seed)
        else:
            self.inconclusive += 1
            self.inconclusive_seeds.append(seed)

    @property
    def verdict(self) -> Verdict:
        if self.failed:
            return Verdict.FAIL
        if self.inconclusive:
            return Verdict.INCONCLUSIVE
        return Verdict.PASS

    def headline(self) -> str:
        return (
            f"{self.passed}/{self.cases} PASS, {self.inconclusive} inconclusive, {self.failed} FAIL"
        )


def run_case(seed: int, generator: GeneratorConfig, loop: LoopConfig) -> SoundnessReport:
    """One randomized soundness case, fully determined by `seed`."""
    with case_context(seed=seed):
        program = generate_program(seed, generator)
        qubits = program.qubit_names
        presets = random_product_init(np.random.default_rng([seed, 1]), qubits)
        init = prepare_ensemble(qubits, presets, max_qubits=loop.max_qubits)
        init_abstract = abstract_from_state(mixture(init))
        return check_sound(program, init, init_abstract, loop, seed=seed)


def run_suite(config: SuiteConfig | None = None) -> SuiteSummary:
    resolved = config or SuiteConfig.from_settings()
    summary = SuiteSummary()
    seeds = list(range(resolved.seed, resolved.seed + resolved.cases))
    if resolved.workers > 1 and len(seeds) > 1:
        with ProcessPoolExecutor(max_workers=resolved.workers) as pool:
            reports = pool.map(
                run_case,
                seeds,
                [resolved.generator] * len(seeds),
                [resolved.loop] * len(seeds),
                chunksize=max(1, len(seeds) // (resolved.workers * 4)),
            )
            for report in reports:
                summary.add(report)
    else:
        for seed in seeds:
            summary.add(run_case(seed, resolved.generator, resolved.loop))
    logger.info(
        "fuzz_complete",
        cases=summary.cases,
        passed=summary.passed,
        failed=summary.failed,
        inconclusive=summary.inconclusive,
    )
    return summary
