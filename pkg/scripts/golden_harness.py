from __future__ import annotations

import numpy as np

from qent.abstract import (
    AbstractElement,
    abstract_eval,
    format_element,
    parse_blocks,
    parse_flags,
)
from qent.concrete import evaluate, mixture, prepare_ensemble
from qent.linalg import partial_trace
from qent.soundness import abstract_from_state, beta, check_sound
from qent.testing.fixtures import GOLDEN_ANALYSES, GOLDEN_PROGRAMS, golden

_INITS: dict[str, dict[str, str]] = {
    "teleport": {"q1": "plus", "q2": "true", "q3": "true"},
    "teleport4": {"q2": "true", "q3": "true"},
    "trap": {"q1": "plus", "q2": "true"},
    "flip": {"q": "mixed"},
    "while_h": {"q": "mixed"},
}
_BELL: dict[str, tuple[tuple[str, str], ...]] = {"teleport4": (("q1", "q4"),)}


def run() -> None:
    for fixture in GOLDEN_PROGRAMS:
        program = fixture.program()
        bell = _BELL.get(fixture.key, ())
        ensemble = prepare_ensemble(program.qubit_names, _INITS[fixture.key], bell)
        final = evaluate(program.body, mixture(ensemble))

        print(f"=== {fixture.title} ({fixture.sample_file}) ===")
        print(f"trace={final.trace:.9f} residual={final.residual:.3e}")
        print("beta:", " ".join(f"{q}:{f}" for q, f in beta(final).flags.as_dict().items()))
        for idx, name in enumerate(final.qubits):
            reduced = np.round(partial_trace(final.matrix, [idx]), 6)
            print(f"  {name}: {reduced.tolist()}")

        initial = abstract_from_state(mixture(ensemble), [list(pair) for pair in bell])
        report = check_sound(program, ensemble, initial)
        print(f"abstract: {format_element(report.claimed)}")
        print(f"soundness: {report.verdict} (witness {report.witness_verdict})")
        print()

    print("=== GOLDEN ANALYSES ===")
    for analysis in GOLDEN_ANALYSES:
        program = golden(analysis.program_key).program()
        qubits = program.qubit_names
        initial_flags = parse_flags(analysis.flags, qubits)
        initial_blocks = parse_blocks(analysis.blocks, qubits)
        result = format_element(
            abstract_eval(program.body, AbstractElement(initial_flags, initial_blocks))
        )
        status = "ok" if result == analysis.expected else f"MISMATCH (expected {analysis.expected})"
        print(f"{analysis.program_key}: {result}  [{status}]")


if __name__ == "__main__":
    run()
