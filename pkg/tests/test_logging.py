from __future__ import annotations

from collections.abc import Iterator

import pytest
import structlog

from qent.concrete import LoopConfig, evaluate, prepare_density
from qent.core.logging import case_context, get_logger, install_default_logging
from qent.syntax import parse


@pytest.fixture
def default_logging() -> Iterator[None]:
    structlog.reset_defaults()
    install_default_logging()
    yield
    structlog.reset_defaults()
    install_default_logging()


def test_default_logging_keeps_stdout_clean(
    default_logging: None, capsys: pytest.CaptureFixture[str], caplog: pytest.LogCaptureFixture
) -> None:
    program = parse("qubits q; while q do { skip }")

    evaluate(program.body, prepare_density(("q",), {"q": "true"}), LoopConfig(max_iterations=3))
    get_logger("qent.tests").debug("debug_event")

    assert capsys.readouterr().out == ""
    messages = [record.getMessage() for record in caplog.records]
    assert any("loop_truncated" in message for message in messages)
    assert not any("debug_event" in message for message in messages)


def test_install_default_logging_keeps_existing_configuration(default_logging: None) -> None:
    wrapper = structlog.make_filtering_bound_logger(10)
    structlog.configure(wrapper_class=wrapper)

    install_default_logging()

    assert structlog.get_config()["wrapper_class"] is wrapper


def test_case_context_binds_fields(
    default_logging: None, caplog: pytest.LogCaptureFixture
) -> None:
    with case_context(seed=42):
        get_logger("qent.tests").warning("case_event")
    get_logger("qent.tests").warning("after_case")

    messages = [record.getMessage() for record in caplog.records]
    assert any("case_event" in message and "seed=42" in message for message in messages)
    assert not any("after_case" in message and "seed" in message for message in messages)