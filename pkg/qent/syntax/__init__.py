"""Abstract syntax, concrete grammar, parser and validation for qent programs."""
from qent.syntax.ast import (
    CNot,
    Command,
    H,
    If,
    PauliX,
    PauliY,
    PauliZ,
    Program,
    ProgramPoint,
    QubitId,
    Seq,
    Skip,
    T,
    While,
    sequence,
)
from qent.syntax.parser import parse, parse_file, parse_unchecked
from qent.syntax.printer import unparse
from qent.syntax.validation import Diagnostic, validate

__all__ = [
    "CNot",
    "Command",
    "Diagnostic",
    "H",
    "If",
    "PauliX",
    "PauliY",
    "PauliZ",
    "Program",
    "ProgramPoint",
    "QubitId",
    "Seq",
    "Skip",
    "T",
    "While",
    "parse",
    "parse_file",
    "parse_unchecked",
    "sequence",
    "unparse",
    "validate",
]
