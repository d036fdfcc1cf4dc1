from __future__ import annotations

from dataclasses import dataclass

from qent.syntax import Program, parse


@dataclass(frozen=True, slots=True)
class GoldenProgram:
    key: str
    title: str
    source: str
    sample_file: str

    def program(self) -> Program:
        return parse(self.source)


@dataclass(frozen=True, slots=True)
class GoldenAnalysis:
    program_key: str
    flags: str
    blocks: str
    expected: str


TELEPORTATION_SOURCE = """qubits q1, q2, q3;
// Bell pair on q2, q3, then Bell measurement of q1, q2
H(q2);
CNot(q2, q3);
CNot(q1, q2);
H(q1);
if q1 then {
  if q2 then { skip } else { X(q3) }
} else {
  if q2 then { Z(q3) } else { Y(q3) }
}
"""

GOLDEN_PROGRAMS: tuple[GoldenProgram, ...] = (
    GoldenProgram(
        key="teleport",
        title="Teleportation of q1 to q3",
        source=TELEPORTATION_SOURCE,
        sample_file="teleport.qpl",
    ),
    GoldenProgram(
        key="teleport4",
        title="Teleportation with q4 entangled to q1",
        source=TELEPORTATION_SOURCE.replace("qubits q1, q2, q3;", "qubits q1, q2, q3, q4;"),
        sample_file="teleport4.qpl",
    ),
    GoldenProgram(
        key="trap",
        title="Two CNots that cancel",
        source="qubits q1, q2;\nCNot(q1, q2);\nCNot(q1, q2)\n",
        sample_file="trap.qpl",
    ),
    GoldenProgram(
        key="flip",
        title="Reset a qubit to true by measurement",
        source="qubits q;\nif q then { skip } else { X(q) }\n",
        sample_file="flip.qpl",
    ),
    GoldenProgram(
        key="while_h",
        title="Repeat H until the qubit measures false",
        source="qubits q;\nwhile q do { H(q) }\n",
        sample_file="while_h.qpl",
    ),
)

GOLDEN_ANALYSES: tuple[GoldenAnalysis, ...] = (
    GoldenAnalysis(
        program_key="teleport",
        flags="q1=top,q2=s,q3=s",
        blocks="",
        expected="q1:s q2:s q3:top | {q1}{q2}{q3}",
    ),
    GoldenAnalysis(
        program_key="teleport4",
        flags="q1=top,q2=s,q3=s,q4=top",
        blocks="{q1,q4}",
        expected="q1:s q2:s q3:top q4:top | {q1}{q2}{q3,q4}",
    ),
    GoldenAnalysis(
        program_key="trap",
        flags="q1=d,q2=s",
        blocks="",
        expected="q1:top q2:top | {q1,q2}",
    ),
)


def golden(key: str) -> GoldenProgram:
    for fixture in GOLDEN_PROGRAMS:
        if fixture.key == key:
            return fixture
    raise KeyError(key)
