from __future__ import annotations

import argparse

import pytest

from qent.cli.main import RunConfig, build_parser
from qent.concrete import LoopConfig
from qent.core.config import Settings
from qent.soundness import SuiteConfig


def test_settings_defaults() -> None:
    defaults = Settings(_env_file=None)

    assert defaults.max_qubits == 10
    assert defaults.epsilon == 1e-9
    assert defaults.max_iterations == 1000
    assert defaults.fuzz_cases == 1000
    assert defaults.output_format == "text"


def test_settings_read_prefixed_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("QENT_MAX_QUBITS", "6")
    monkeypatch.setenv("QENT_OUTPUT_FORMAT", "json")
    monkeypatch.setenv("QENT_FUZZ_SEED", "99")

    loaded = Settings(_env_file=None)

    assert loaded.max_qubits == 6
    assert loaded.output_format == "json"
    assert loaded.fuzz_seed == 99


def test_loop_config_from_settings() -> None:
    loop = LoopConfig.from_settings(Settings(_env_file=None, max_iterations=12, branch_cap=8))

    assert (loop.max_iterations, loop.branch_cap) == (12, 8)


def test_suite_config_from_settings() -> None:
    config = SuiteConfig.from_settings(
        Settings(_env_file=None, fuzz_cases=5, fuzz_seed=11, fuzz_loop_cap=16)
    )

    assert (config.cases, config.seed) == (5, 11)
    assert config.loop.max_iterations == 16


def test_run_config_prefers_command_line() -> None:
    args = build_parser().parse_args(
        ["analyze", "prog.qpl", "--max-iter", "7", "--format", "json"]
    )

    run = RunConfig.from_args(args, Settings(_env_file=None, max_iterations=50))

    assert run.max_iterations == 7
    assert run.output_format == "json"
    assert run.loop.max_iterations == 7
    assert not run.strict


@pytest.mark.parametrize(
    ("field", "value"),
    [
        ("epsilon", -1.0),
        ("max_iterations", 0),
        ("branch_cap", 0),
        ("tolerance", 0.0),
        ("cases", -1),
        ("workers", 0),
        ("output_format", "yaml"),
    ],
)
def test_run_config_rejects_bad_values(field: str, value: object) -> None:
    settings = Settings(_env_file=None)
    args = argparse.Namespace(action="fuzz")
    base = RunConfig.from_args(args, settings)
    values = {
        name: getattr(base, name)
        for name in (
            "epsilon",
            "max_iterations",
            "branch_cap",
            "max_qubits",
            "tolerance",
            "output_format",
            "seed",
            "cases",
            "workers",
        )
    }
    values[field] = value

    with pytest.raises(ValueError):
        RunConfig(**values)
