from __future__ import annotations

from qent.syntax.ast import CNot, Command, If, Program, Seq, Skip, While, _UnaryGate

_INDENT = "  "


def unparse(program: Program) -> str:
    header = f"qubits {', '.join(program.qubit_names)};"
    return "\n".join([header, *_statements(program.body, 0)])


def _statements(command: Command, depth: int) -> list[str]:
    """Lines of a statement list; separators are attached to line ends."""
    if isinstance(command, Seq):
        if isinstance(command.first, Seq):
            # left-nested sequences need an explicit block to survive a re-parse
            inner = _statements(command.first, depth + 1)
            head = [f"{_INDENT * depth}{{", *inner, f"{_INDENT * depth}}}"]
        else:
            head = _statement(command.first, depth)
        head[-1] += ";"
        return head + _statements(command.second, depth)
    return _statement(command, depth)


def _statement(command: Command, depth: int) -> list[str]:
    pad = _INDENT * depth
    match command:
        case Skip():
            return [f"{pad}skip"]
        case CNot(control, target):
            return [f"{pad}CNot({control}, {target})"]
        case If(cond, then, orelse):
            return [
                f"{pad}if {cond} then {{",
                *_statements(then, depth + 1),
                f"{pad}}} else {{",
                *_statements(orelse, depth + 1),
                f"{pad}}}",
            ]
        case While(cond, body):
            return [
                f"{pad}while {cond} do {{",
                *_statements(body, depth + 1),
                f"{pad}}}",
            ]
        case Seq():
            return _statements(command, depth)
        case _UnaryGate(target=target):
            return [f"{pad}{command.symbol}({target})"]
    raise TypeError(f"not a command: {command!r}")
