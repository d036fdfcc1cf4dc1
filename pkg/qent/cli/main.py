from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel

from qent.abstract import (
    AbstractElement,
    GuardOverlap,
    abstract_eval,
    element_to_json,
    format_element,
    format_flags,
    parse_blocks,
    parse_flags,
    trace_eval,
)
from qent.cli.init_spec import InitSpec
from qent.cli.schemas import (
    AbstractElementModel,
    AnalyzeResponse,
    BranchItem,
    EnsembleDump,
    ErrorResponse,
    FuzzSummaryModel,
    GuardOverlapItem,
    SimulateResponse,
    SoundnessReportModel,
    StateDump,
    TracePointItem,
)
from qent.concrete import (
    LoopConfig,
    PureEnsemble,
    ensure_converged,
    evaluate,
    evaluate_ensemble,
    mixture,
)
from qent.core.config import Settings, get_settings
from qent.core.errors import (
    AbstractSyntaxError,
    BranchExplosion,
    CapacityExceeded,
    InitSpecError,
    MismatchedQubitSets,
    NonTermination,
    PreconditionViolated,
    ProgramSyntaxError,
    ProgramValidationError,
    QentError,
)
from qent.core.logging import configure_logging, get_logger
from qent.linalg import matrix_to_json, partial_trace
from qent.soundness import (
    GeneratorConfig,
    SoundnessReport,
    SuiteConfig,
    SuiteSummary,
    Verdict,
    abstract_from_state,
    beta,
    check_sound,
    run_suite,
)
from qent.syntax import Command, Program, parse_file, unparse
from qent.syntax.ast import (
    CNot,
    If,
    Skip,
    While,
    _UnaryGate,
    format_point,
    iter_points,
    resolve,
)

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FAIL = 2
EXIT_INCONCLUSIVE = 3
EXIT_CAPACITY = 4
EXIT_NON_TERMINATION = 5

_VERDICT_EXIT = {
    Verdict.PASS: EXIT_OK,
    Verdict.FAIL: EXIT_FAIL,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


@dataclass(frozen=True, slots=True)
class RunConfig:
    epsilon: float
    max_iterations: int
    branch_cap: int
    max_qubits: int
    tolerance: float
    output_format: Literal["text", "json"]
    seed: int
    cases: int
    workers: int = 1
    strict: bool = False

    def __post_init__(self) -> None:
        if self.epsilon <= 0:
            raise ValueError("epsilon must be greater than 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.branch_cap < 1:
            raise ValueError("branch_cap must be at least 1")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be greater than 0")
        if self.output_format not in ("text", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.cases < 0:
            raise ValueError("cases must be non-negative")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    @classmethod
    def from_args(cls, args: argparse.Namespace, settings: Settings) -> RunConfig:
        def pick(name: str, default: Any) -> Any:
            value = getattr(args, name, None)
            return default if value is None else value

        return cls(
            epsilon=float(pick("epsilon", settings.epsilon)),
            max_iterations=int(pick("max_iter", settings.max_iterations)),
            branch_cap=int(pick("branch_cap", settings.branch_cap)),
            max_qubits=settings.max_qubits,
            tolerance=float(pick("tolerance", settings.tolerance)),
            output_format=pick("format", settings.output_format),
            seed=int(pick("seed", settings.fuzz_seed)),
            cases=int(pick("cases", settings.fuzz_cases)),
            workers=int(pick("workers", settings.fuzz_workers)),
            strict=bool(getattr(args, "strict", False)),
        )

    @property
    def loop(self) -> LoopConfig:
        return LoopConfig(
            epsilon=self.epsilon,
            max_iterations=self.max_iterations,
            branch_cap=self.branch_cap,
            max_qubits=self.max_qubits,
        )


def _emit(run: RunConfig, model: BaseModel, text: str) -> None:
    print(model.model_dump_json(indent=2) if run.output_format == "json" else text)


def _element_model(a: AbstractElement) -> AbstractElementModel:
    return AbstractElementModel.model_validate(element_to_json(a))


def _label(command: Command) -> str:
    match command:
        case Skip():
            return "skip"
        case CNot(control, target):
            return f"CNot({control}, {target})"
        case If(cond, _, _):
            return f"if {cond}"
        case While(cond, _):
            return f"while {cond}"
        case _UnaryGate(target=target):
            return f"{command.symbol}({target})"
    return type(command).__name__


def _matrix_text(matrix: np.ndarray) -> str:
    return np.array2string(matrix, precision=6, suppress_small=True, max_line_width=120)


# -- abstract input -------------------------------------------------------------------------------


def _abstract_init(
    args: argparse.Namespace, program: Program, run: RunConfig, derive_by_default: bool = False
) -> AbstractElement:
    qubits = program.qubit_names
    explicit = args.flags is not None or args.blocks is not None
    if args.from_init or (derive_by_default and not explicit):
        spec = InitSpec.parse(args.init)
        ensemble = spec.build(qubits, run.max_qubits)
        return abstract_from_state(mixture(ensemble), spec.entangled_blocks, run.tolerance)
    return AbstractElement(
        parse_flags(args.flags or "", qubits), parse_blocks(args.blocks or "", qubits)
    )


# -- commands -------------------------------------------------------------------------------------


def cmd_simulate(args: argparse.Namespace, run: RunConfig) -> int:
    program = parse_file(args.file)
    ensemble = InitSpec.parse(args.init).build(program.qubit_names, run.max_qubits)
    initial = mixture(ensemble)
    final = evaluate(program.body, initial, run.loop)
    flags = beta(final, run.tolerance).flags

    branches: PureEnsemble | None = None
    branch_error: str | None = None
    try:
        branches = evaluate_ensemble(program.body, ensemble, run.loop)
    except BranchExplosion as exc:
        branch_error = exc.message

    reduced = {
        name: partial_trace(final.matrix, [program.index_of(name)])
        for name in program.qubit_names
    }
    state = StateDump(
        qubits=list(final.qubits),
        trace=final.trace,
        residual=final.residual,
        converged=final.converged,
        beta={q: flag.value for q, flag in flags.as_dict().items()},
        reduced={name: matrix_to_json(m) for name, m in reduced.items()},
        matrix=matrix_to_json(final.matrix) if args.matrix else None,
    )
    dump = EnsembleDump(
        ancillas=ensemble.ancillas,
        residual=branches.residual if branches else 0.0,
        branches=[
            BranchItem(weight=b.weight, path=list(b.path))
            for b in (branches.branches if branches else ())
        ],
        error=branch_error,
    )

    lines = [
        f"trace: {final.trace:.9f}  residual: {final.residual:.3e}  "
        f"converged: {'yes' if final.converged else 'no'}",
        f"beta: {format_flags(flags)}",
        "reduced states:",
    ]
    for name, m in reduced.items():
        lines.append(f"  {name}: " + _matrix_text(m).replace("\n", "\n" + " " * (len(name) + 4)))
    if args.matrix:
        lines.extend(["matrix:", _matrix_text(final.matrix)])
    if branch_error:
        lines.append(f"branches: unavailable ({branch_error})")
    elif branches is not None:
        lines.append(f"branches: {len(branches.branches)} (ancillas: {branches.ancillas})")
        for branch in branches.branches:
            path = "".join("T" if outcome else "F" for outcome in branch.path) or "-"
            lines.append(f"  {branch.weight:.6f}  {path}")
    response = SimulateResponse(program=unparse(program), state=state, ensemble=dump)
    _emit(run, response, "\n".join(lines))

    if run.strict:
        ensure_converged(final.residual, final.converged, run.loop)
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace, run: RunConfig) -> int:
    program = parse_file(args.file)
    initial = _abstract_init(args, program, run)
    overlaps: list[GuardOverlap] = []
    result = abstract_eval(program.body, initial, overlaps)

    lines: list[str] = []
    trace_items: list[TracePointItem] | None = None
    if args.trace:
        traced = trace_eval(program.body, initial)
        trace_items = []
        for point in iter_points(program.body):
            element = traced.points[point]
            command = resolve(program.body, point)
            trace_items.append(
                TracePointItem(
                    point=format_point(point),
                    command=_label(command),
                    element=_element_model(element),
                )
            )
            lines.append(
                f"{format_point(point):<28} {_label(command):<16} {format_element(element)}"
            )
        lines.append(f"{'exit':<28} {'':<16} {format_element(traced.exit)}")
    lines.append(format_element(result))

    response = AnalyzeResponse(
        program=unparse(program),
        input=_element_model(initial),
        result=_element_model(result),
        text=format_element(result),
        trace=trace_items,
        guard_overlaps=[
            GuardOverlapItem(
                point=format_point(overlap.point),
                control=overlap.control,
                target=overlap.target,
                matched_cases=list(overlap.matched_cases),
            )
            for overlap in overlaps
        ],
    )
    _emit(run, response, "\n".join(lines))
    return EXIT_OK


def _report_model(report: SoundnessReport) -> SoundnessReportModel:
    return SoundnessReportModel(
        verdict=report.verdict.value,
        beta_ok=report.beta_ok,
        beta={q: f.value for q, f in report.beta.flags.as_dict().items()} if report.beta else {},
        claimed_flags={q: f.value for q, f in report.claimed.basis.as_dict().items()},
        claimed_blocks=[list(block) for block in report.claimed.partition.blocks],
        witness=report.witness_verdict.value,
        residual=report.residual,
        converged=report.converged,
        seed=report.seed,
        program=report.program,
        reason=report.reason,
    )


def _report_text(report: SoundnessReport) -> str:
    lines = [
        f"verdict: {report.verdict}",
        f"claimed: {format_element(report.claimed)}",
    ]
    if report.beta is not None:
        status = "ok" if report.beta_ok else "EXCEEDS CLAIM"
        lines.append(f"beta: {format_flags(report.beta.flags)}  ({status})")
    lines.append(f"witness: {report.witness_verdict}")
    lines.append(f"residual: {report.residual:.3e}")
    lines.append(f"converged: {'yes' if report.converged else 'no'}")
    if report.reason:
        lines.append(f"reason: {report.reason}")
    return "\n".join(lines)


def _summary_model(summary: SuiteSummary, seed: int) -> FuzzSummaryModel:
    return FuzzSummaryModel(
        verdict=summary.verdict.value,
        cases=summary.cases,
        passed=summary.passed,
        failed=summary.failed,
        inconclusive=summary.inconclusive,
        seed=seed,
        failing_seeds=summary.failing_seeds,
        inconclusive_seeds=summary.inconclusive_seeds,
        summary=summary.headline(),
    )


def _summary_text(summary: SuiteSummary) -> str:
    lines = [summary.headline()]
    if summary.failing_seeds:
        lines.append("failing seeds: " + ", ".join(str(s) for s in summary.failing_seeds))
    if summary.inconclusive_seeds:
        lines.append("inconclusive seeds: " + ", ".join(str(s) for s in summary.inconclusive_seeds))
    return "\n".join(lines)


def _run_fuzz(args: argparse.Namespace, run: RunConfig, settings: Settings) -> int:
    config = SuiteConfig(
        cases=run.cases,
        seed=run.seed,
        generator=GeneratorConfig(
            max_qubits=settings.fuzz_max_qubits, max_depth=settings.fuzz_max_depth
        ),
        loop=LoopConfig(
            epsilon=run.epsilon,
            max_iterations=args.max_iter if args.max_iter is not None else settings.fuzz_loop_cap,
            branch_cap=run.branch_cap,
            max_qubits=run.max_qubits,
        ),
        workers=run.workers,
    )
    summary = run_suite(config)
    _emit(run, _summary_model(summary, run.seed), _summary_text(summary))
    return _VERDICT_EXIT[summary.verdict]


def cmd_check(args: argparse.Namespace, run: RunConfig, settings: Settings) -> int:
    if args.random:
        return _run_fuzz(args, run, settings)
    if args.file is None:
        raise InitSpecError("check needs a program file unless --random is given")
    program = parse_file(args.file)
    ensemble = InitSpec.parse(args.init).build(program.qubit_names, run.max_qubits)
    initial = _abstract_init(args, program, run, derive_by_default=True)
    report = check_sound(program, ensemble, initial, run.loop, run.tolerance)
    _emit(run, _report_model(report), _report_text(report))
    if run.strict and report.verdict is not Verdict.INCONCLUSIVE:
        ensure_converged(report.residual, report.converged, run.loop)
    return _VERDICT_EXIT[report.verdict]


def cmd_fuzz(args: argparse.Namespace, run: RunConfig, settings: Settings) -> int:
    return _run_fuzz(args, run, settings)


# -- parser ---------------------------------------------------------------------------------------


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "json"), help="report format")
    parser.add_argument("--epsilon", type=float, help="loop exit threshold on pending trace")
    parser.add_argument("--max-iter", dest="max_iter", type=int, help="loop iteration cap")
    parser.add_argument("--branch-cap", dest="branch_cap", type=int, help="live branch cap")
    parser.add_argument("--tolerance", type=float, help="numeric tolerance for basis tests")


def _add_init_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--init",
        help="initial state, e.g. 'q1=plus,q2=true,bell(q3,q4)', or a JSON state file; "
        "unlisted qubits start as true",
    )


def _add_abstract_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--flags", help="basis flags, e.g. 'q1=top,q2=s'; unlisted qubits are s")
    parser.add_argument(
        "--blocks", help="partition, e.g. '{q1,q4}'; unlisted qubits are singletons"
    )
    parser.add_argument(
        "--from-init",
        dest="from_init",
        action="store_true",
        help="derive the abstract input from --init (flags by beta, blocks from bell pairs)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qent", description="Simulate and analyze entanglement in quantum programs."
    )
    parser.add_argument("--log-level", dest="log_level", help="log level for stderr diagnostics")
    subparsers = parser.add_subparsers(dest="action", required=True)

    simulate = subparsers.add_parser("simulate", help="Run the exact density-matrix semantics")
    simulate.add_argument("file")
    _add_init_options(simulate)
    _add_run_options(simulate)
    simulate.add_argument("--matrix", action="store_true", help="print the full output matrix")
    simulate.add_argument("--strict", action="store_true", help="exit 5 if a loop was truncated")

    analyze = subparsers.add_parser("analyze", help="Run the abstract entanglement analysis")
    analyze.add_argument("file")
    _add_init_options(analyze)
    _add_abstract_options(analyze)
    _add_run_options(analyze)
    analyze.add_argument("--trace", action="store_true", help="print every program point")

    check = subparsers.add_parser("check", help="Compare concrete and abstract results")
    check.add_argument("file", nargs="?")
    _add_init_options(check)
    _add_abstract_options(check)
    _add_run_options(check)
    check.add_argument("--strict", action="store_true", help="exit 5 if a loop was truncated")
    check.add_argument("--random", action="store_true", help="run the randomized suite instead")
    check.add_argument("--cases", type=int, help="number of random cases")
    check.add_argument("--seed", type=int, help="first random seed")
    check.add_argument("--workers", type=int, help="worker processes for random cases")

    fuzz = subparsers.add_parser("fuzz", help="Run the randomized soundness suite")
    _add_run_options(fuzz)
    fuzz.add_argument("--cases", type=int, help="number of random cases")
    fuzz.add_argument("--seed", type=int, help="first random seed")
    fuzz.add_argument("--workers", type=int, help="worker processes")
    return parser


def _fail(run_format: str, exc: QentError, status: int) -> int:
    if run_format == "json":
        print(ErrorResponse(error=exc.code, message=exc.message).model_dump_json(indent=2))
    print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
    return status


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    configure_logging(args.log_level or settings.log_level, settings.log_json)
    run_format = getattr(args, "format", None) or settings.output_format

    try:
        run = RunConfig.from_args(args, settings)
    except ValueError as exc:
        print(f"error [invalid_option]: {exc}", file=sys.stderr)
        return EXIT_INPUT

    try:
        if args.action == "simulate":
            return cmd_simulate(args, run)
        if args.action == "analyze":
            return cmd_analyze(args, run)
        if args.action == "check":
            return cmd_check(args, run, settings)
        return cmd_fuzz(args, run, settings)
    except (
        ProgramSyntaxError,
        ProgramValidationError,
        InitSpecError,
        PreconditionViolated,
        MismatchedQubitSets,
    ) as exc:
        return _fail(run_format, exc, EXIT_INPUT)
    except AbstractSyntaxError as exc:
        return _fail(run_format, exc, EXIT_FAIL)
    except CapacityExceeded as exc:
        return _fail(run_format, exc, EXIT_CAPACITY)
    except NonTermination as exc:
        logger.warning("strict_non_termination", residual=exc.residual)
        return _fail(run_format, exc, EXIT_NON_TERMINATION)
    except BranchExplosion as exc:
        return _fail(run_format, exc, EXIT_INCONCLUSIVE)
    except OSError as exc:
        print(f"error [unreadable_input]: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
