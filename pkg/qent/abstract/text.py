"""Text and JSON spellings of abstract elements.

Report form:  ``q1:s q2:d q3:top | {q1,q4}{q2}{q3}``
CLI form:     ``--flags q1=top,q2=s`` and ``--blocks "{q1,q4}"``
JSON form:    ``{"flags": {"q1": "s"}, "blocks": [["q1", "q4"], ["q2"]]}``
"""
from __future__ import annotations

import re
from collections.abc import Mapping, Sequence
from typing import Any

from qent.abstract.domain import AbstractElement
from qent.abstract.lattice import BasisFlag, BasisMap
from qent.abstract.partition import Partition
from qent.core.errors import AbstractSyntaxError, MismatchedQubitSets

FLAG_ALIASES: dict[str, BasisFlag] = {
    "bot": BasisFlag.BOT,
    "⊥": BasisFlag.BOT,
    "s": BasisFlag.STD,
    "std": BasisFlag.STD,
    "d": BasisFlag.DIAG,
    "diag": BasisFlag.DIAG,
    "top": BasisFlag.TOP,
    "⊤": BasisFlag.TOP,
}

_FLAG_ITEM = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*[:=]\s*(\S+)\s*$")
_BLOCK = re.compile(r"\{([^{}]*)\}")


def parse_flag(text: str) -> BasisFlag:
    try:
        return FLAG_ALIASES[text.strip().lower()]
    except KeyError:
        raise AbstractSyntaxError(
            f"unknown basis flag {text!r}; expected one of bot, s, d, top"
        ) from None


def parse_flags(
    text: str, qubits: Sequence[str], default: BasisFlag = BasisFlag.STD
) -> BasisMap:
    """Parse ``q1=top,q2=s`` or ``q1:top q2:s``; omitted qubits take `default`."""
    flags: dict[str, BasisFlag] = {}
    for item in re.split(r"[,\s]+", text.strip()):
        if not item:
            continue
        match = _FLAG_ITEM.match(item)
        if match is None:
            raise AbstractSyntaxError(f"malformed flag assignment {item!r}")
        name, value = match.groups()
        if name in flags:
            raise AbstractSyntaxError(f"flag for {name} given twice")
        flags[name] = parse_flag(value)
    try:
        return BasisMap.from_mapping(tuple(qubits), flags, default)
    except MismatchedQubitSets as exc:
        raise AbstractSyntaxError(exc.message) from exc


def parse_blocks(text: str, qubits: Sequence[str]) -> Partition:
    """Parse ``{q1,q4}{q2}``; qubits left out are singletons."""
    stripped = text.strip()
    if _BLOCK.sub("", stripped).strip():
        raise AbstractSyntaxError(f"malformed partition {text!r}")
    blocks = [
        [name.strip() for name in body.split(",") if name.strip()]
        for body in _BLOCK.findall(stripped)
    ]
    try:
        return Partition.from_blocks(qubits, blocks, complete=False)
    except (ValueError, MismatchedQubitSets) as exc:
        raise AbstractSyntaxError(str(exc)) from exc


def parse_element(text: str, qubits: Sequence[str]) -> AbstractElement:
    flags_text, _, blocks_text = text.partition("|")
    return AbstractElement(parse_flags(flags_text, qubits), parse_blocks(blocks_text, qubits))


def format_flags(basis: BasisMap) -> str:
    return " ".join(f"{q}:{flag}" for q, flag in zip(basis.qubits, basis.flags, strict=True))


def format_blocks(partition: Partition) -> str:
    return "".join("{" + ",".join(block) + "}" for block in partition.blocks)


def format_element(a: AbstractElement) -> str:
    return f"{format_flags(a.basis)} | {format_blocks(a.partition)}"


def element_to_json(a: AbstractElement) -> dict[str, Any]:
    return {
        "flags": {q: flag.value for q, flag in a.basis.as_dict().items()},
        "blocks": [list(block) for block in a.partition.blocks],
    }


def element_from_json(data: Mapping[str, Any], qubits: Sequence[str]) -> AbstractElement:
    try:
        flags = {name: parse_flag(str(value)) for name, value in dict(data["flags"]).items()}
        blocks = [list(block) for block in data.get("blocks", [])]
    except (KeyError, TypeError) as exc:
        raise AbstractSyntaxError(f"malformed abstract element JSON: {exc}") from exc
    missing = [q for q in qubits if q not in flags]
    if missing:
        raise AbstractSyntaxError(f"no flag given for {', '.join(missing)}")
    try:
        basis = BasisMap.from_mapping(tuple(qubits), flags, BasisFlag.BOT)
        partition = Partition.from_blocks(qubits, blocks, complete=False)
    except (ValueError, MismatchedQubitSets) as exc:
        raise AbstractSyntaxError(str(exc)) from exc
    return AbstractElement(basis, partition)
