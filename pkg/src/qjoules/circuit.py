# -*- coding: utf-8 -*-
"""gate counts and the circuit-text gate counter"""

from __future__ import annotations

__copyright__ = "Copyright (c) 2026 qjoules contributors"

import logging
import re
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Tuple

from qjoules.errors import ValidationError

__all__ = ["GateCounts", "UnknownGatePolicy", "countGatesCircuitText", "KNOWN_GATES"]

logger = logging.getLogger(__name__)

# name -> number of qubit operands
KNOWN_GATES: Dict[str, int] = {
    **{name: 1 for name in (
        "id", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "sx", "sxdg",
        "rx", "ry", "rz", "p", "u", "U", "u1", "u2", "u3", "delay",
    )},
    **{name: 2 for name in (
        "cx", "CX", "cy", "cz", "ch", "swap", "crx", "cry", "crz", "cp", "cu1", "cu3",
        "rxx", "ryy", "rzz", "ecr", "ms",
    )},
    **{name: 3 for name in ("ccx", "cswap")},
    "measure": 1,
    "reset": 1,
}

_NAME = re.compile(r"^(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*")
_OPERAND = re.compile(r"^(?P<reg>[A-Za-z_][A-Za-z0-9_]*)\s*(?:\[\s*(?P<idx>\d+)\s*\])?$")
_DECLARATION = re.compile(r"^(?P<kind>qreg|creg)\s+(?P<reg>[A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(?P<size>\d+)\s*\]$")


@dataclass(frozen=True)
class GateCounts:
    """gate name -> N_g, plus the register width and (optional) depth"""

    counts: Mapping[str, int] = field(default_factory=dict)
    qubitCount: int = 0
    depth: int = 0

    def __post_init__(self) -> None:
        for name, count in self.counts.items():
            if isinstance(count, bool) or not isinstance(count, int) or count < 0:
                raise ValidationError(
                    f"gate count must be a non-negative integer, got {count!r}",
                    ["counts", name],
                    "min",
                )
        if self.qubitCount < 0 or self.depth < 0:
            raise ValidationError("qubit_count and depth must be >= 0", [], "min")
        if self.total > 0 and self.qubitCount < 1:
            raise ValidationError(
                "qubit_count must be >= 1 when the circuit has gates", ["qubit_count"], "min"
            )

    @property
    def total(self) -> int:
        """sum of all N_g"""
        return sum(self.counts.values())

    def merged(self, extra: Mapping[str, int]) -> GateCounts:
        """adds insertions (e.g. dynamical decoupling pulses) to the counts"""
        counts = dict(self.counts)
        for name, count in extra.items():
            counts[name] = counts.get(name, 0) + count
        return GateCounts(counts, self.qubitCount, self.depth)


class UnknownGatePolicy(Enum):
    """what to do with gate names the counter does not know"""

    ERROR = "error"
    COUNT_AS_OTHER = "count_as_other"


class _Program:
    """mutable state of one counting pass"""

    def __init__(self, policy: UnknownGatePolicy) -> None:
        self.policy = policy
        self.qregs: Dict[str, int] = {}
        self.cregs: Dict[str, int] = {}
        self.counts: Dict[str, int] = defaultdict(int)
        self.levels: Dict[Tuple[str, int], int] = defaultdict(int)

    def fail(self, line: int, message: str) -> ValidationError:
        return ValidationError(f"line {line}: {message}", [], "circuit")

    def operands(self, line: int, text: str, registers: Dict[str, int]) -> List[List[Tuple[str, int]]]:
        """each operand as its list of (register, index) wires"""
        resolved: List[List[Tuple[str, int]]] = []
        for raw in (part.strip() for part in text.split(",")):
            match = _OPERAND.match(raw)
            if match is None:
                raise self.fail(line, f"malformed operand {raw!r}")
            reg = match.group("reg")
            if reg not in registers:
                raise self.fail(line, f"undeclared register {reg!r}")
            if match.group("idx") is None:
                resolved.append([(reg, i) for i in range(registers[reg])])
                continue
            index = int(match.group("idx"))
            if index >= registers[reg]:
                raise self.fail(line, f"index {reg}[{index}] out of range (size {registers[reg]})")
            resolved.append([(reg, index)])
        return resolved

    def broadcast(self, line: int, operands: List[List[Tuple[str, int]]]) -> List[List[Tuple[str, int]]]:
        """expands whole-register operands into one application per index"""
        widths = {len(op) for op in operands if len(op) > 1}
        if len(widths) > 1:
            raise self.fail(line, "register operands of different sizes")
        width = widths.pop() if widths else 1
        return [[op[i] if len(op) > 1 else op[0] for op in operands] for i in range(width)]

    def skipParameters(self, line: int, rest: str) -> str:
        """drops a leading (possibly nested) parameter list, returns the operands"""
        if not rest.startswith("("):
            return rest
        depth = 0
        for i, char in enumerate(rest):
            if char == "(":
                depth += 1
            elif char == ")":
                depth -= 1
                if depth == 0:
                    return rest[i + 1:]
        raise self.fail(line, f"unbalanced parentheses in {rest!r}")

    def apply(self, name: str, wires: List[Tuple[str, int]], line: int) -> None:
        if len(set(wires)) != len(wires):
            raise self.fail(line, f"{name} repeats a qubit operand")
        self.counts[name] += 1
        level = max(self.levels[w] for w in wires) + 1
        for wire in wires:
            self.levels[wire] = level

    def barrier(self, wires: List[Tuple[str, int]]) -> None:
        level = max(self.levels[w] for w in wires)
        for wire in wires:
            self.levels[wire] = level

    def statement(self, text: str, line: int) -> None:
        declaration = _DECLARATION.match(text)
        if declaration is not None:
            reg, size = declaration.group("reg"), int(declaration.group("size"))
            if size < 1:
                raise self.fail(line, f"register {reg!r} must have size >= 1, got {size}")
            if reg in self.qregs or reg in self.cregs:
                raise self.fail(line, f"register {reg!r} declared twice")
            target = self.qregs if declaration.group("kind") == "qreg" else self.cregs
            target[reg] = size
            return
        if text.startswith("include"):
            return

        match = _NAME.match(text)
        if match is None:
            raise self.fail(line, f"malformed statement {text!r}")
        name = match.group("name")
        args = self.skipParameters(line, text[match.end():]).strip()
        if name in ("OPENQASM", "gate", "opaque", "if", "qreg", "creg"):
            raise self.fail(line, f"unsupported statement {text!r}")
        if not args:
            raise self.fail(line, f"{name} without operands")

        if name == "measure":
            source, arrow, target = args.partition("->")
            if not arrow:
                raise self.fail(line, "measure needs 'qubit -> bit'")
            qubits = self.operands(line, source, self.qregs)
            bits = self.operands(line, target, self.cregs)
            if len(qubits) != 1 or len(bits) != 1 or len(qubits[0]) != len(bits[0]):
                raise self.fail(line, "measure operands do not match")
            for wire in qubits[0]:
                self.apply("measure", [wire], line)
            return

        operands = self.operands(line, args, self.qregs)
        if name == "barrier":
            self.barrier([w for op in operands for w in op])
            return

        counted = name
        if name not in KNOWN_GATES:
            if self.policy is UnknownGatePolicy.ERROR:
                raise self.fail(line, f"unknown gate {name!r}")
            counted = "other"
        elif KNOWN_GATES[name] != len(operands):
            raise self.fail(
                line, f"{name} takes {KNOWN_GATES[name]} qubit(s), got {len(operands)}"
            )
        for wires in self.broadcast(line, operands):
            self.apply(counted, wires, line)


def _statements(text: str) -> List[Tuple[int, str]]:
    """(line number, statement) pairs; comments stripped"""
    statements: List[Tuple[int, str]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        code = raw.split("//", 1)[0]
        *complete, rest = code.split(";")
        statements.extend((number, s.strip()) for s in complete if s.strip())
        if rest.strip():
            raise ValidationError(
                f"line {number}: missing ';' after {rest.strip()!r}", [], "circuit"
            )
    return statements


def countGatesCircuitText(
    text: str, unknownGatePolicy: UnknownGatePolicy = UnknownGatePolicy.ERROR
) -> GateCounts:
    """
    counts gates of an OpenQASM 2 style program

    supported: header, include, qreg/creg, gate applications (with optional
    parameters), measure, reset, barrier. Whole-register operands broadcast
    to one application per index.

    depth is the longest per-qubit chain of counted statements; barriers only
    synchronise the qubits they name.
    """
    statements = _statements(text)
    if not statements or not re.match(r"^OPENQASM\s+\S+$", statements[0][1]):
        line = statements[0][0] if statements else 1
        raise ValidationError(f"line {line}: expected 'OPENQASM <version>;' header", [], "circuit")

    program = _Program(unknownGatePolicy)
    for line, statement in statements[1:]:
        program.statement(statement, line)

    counts = GateCounts(
        dict(program.counts),
        sum(program.qregs.values()),
        max(program.levels.values(), default=0),
    )
    logger.debug(
        "counted %d gates on %d qubits, depth %d", counts.total, counts.qubitCount, counts.depth
    )
    return counts

