from __future__ import annotations

from pathlib import Path

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from qent.core.errors import ProgramSyntaxError, ProgramValidationError
from qent.syntax.ast import (
    UNARY_GATES,
    CNot,
    Command,
    If,
    Program,
    Skip,
    While,
    sequence,
)
from qent.syntax.validation import validate

_GRAMMAR_PATH = Path(__file__).with_name("grammar.lark")

_PARSER = Lark(
    _GRAMMAR_PATH.read_text(encoding="utf-8"),
    parser="lalr",
    lexer="contextual",
    propagate_positions=True,
    maybe_placeholders=False,
)

# Anonymous terminals as lark names them, mapped back to their spelling.
_TERMINAL_SPELLING = {
    "SEMICOLON": "';'",
    "COMMA": "','",
    "LPAR": "'('",
    "RPAR": "')'",
    "LBRACE": "'{'",
    "RBRACE": "'}'",
    "IDENT": "identifier",
    "GATE1": "gate",
    "$END": "end of input",
}


class _ToAst(Transformer):
    def start(self, children: list) -> Program:
        *names, body = children
        return Program.declare([str(name) for name in names], body)

    def stmts(self, children: list[Command]) -> Command:
        return sequence(list(children))

    def skip(self, _children: list) -> Command:
        return Skip()

    def unary_gate(self, children: list[Token]) -> Command:
        gate, target = children
        return UNARY_GATES[str(gate)](str(target))

    def cnot(self, children: list[Token]) -> Command:
        control, target = children
        return CNot(str(control), str(target))

    def cond(self, children: list) -> Command:
        qubit, then, orelse = children
        return If(str(qubit), then, orelse)

    def loop(self, children: list) -> Command:
        qubit, body = children
        return While(str(qubit), body)

    def block(self, children: list[Command]) -> Command:
        return children[0]


def _spell(terminal: str) -> str:
    if terminal in _TERMINAL_SPELLING:
        return _TERMINAL_SPELLING[terminal]
    if terminal.isupper() and terminal.isalpha():
        # keyword terminals are named after their text, e.g. WHILE
        return f"'{terminal.lower()}'" if terminal != "CNOT" else "'CNot'"
    return terminal


def _syntax_error(exc: UnexpectedInput) -> ProgramSyntaxError:
    if isinstance(exc, UnexpectedToken):
        found = "end of input" if exc.token.type == "$END" else str(exc.token)
        expected = exc.expected
    elif isinstance(exc, UnexpectedCharacters):
        found = exc.char
        expected = exc.allowed or set()
    elif isinstance(exc, UnexpectedEOF):
        found = "end of input"
        expected = exc.expected
    else:
        found = "input"
        expected = set()
    line = getattr(exc, "line", -1) or -1
    column = getattr(exc, "column", -1) or -1
    return ProgramSyntaxError(
        line=line,
        column=column,
        expected=[_spell(name) for name in expected],
        found=found,
    )


def parse_unchecked(source: str) -> Program:
    """Parse without well-formedness validation."""
    try:
        tree = _PARSER.parse(source)
    except UnexpectedInput as exc:
        raise _syntax_error(exc) from exc
    return _ToAst().transform(tree)


def parse(source: str) -> Program:
    program = parse_unchecked(source)
    diagnostics = validate(program)
    if diagnostics:
        raise ProgramValidationError(diagnostics)
    return program


def parse_file(path: str | Path) -> Program:
    return parse(Path(path).read_text(encoding="utf-8"))
