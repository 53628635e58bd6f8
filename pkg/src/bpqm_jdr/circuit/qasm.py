"""OpenQASM 2.0 emission and a reader for the emitted dialect.

Every classical bit gets its own one-bit register ``c<k>`` so that a condition
on a single bit can be written ``if(c<k>==v)``.  An X-basis measurement is
written as ``h; measure; h`` on the same qubit.
"""
from __future__ import annotations

import re

from ..errors import EmissionError
from .ir import Circuit, Gate, IfBit, Measure, Reset

_HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'
_NAMED = {"id", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "cx", "cz", "rx", "ry", "rz", "u1", "u3"}


def _fmt(x: float) -> str:
    text = f"{x:.9g}"
    return "0" if text == "-0" else text


def _gate_line(g: Gate) -> str:
    if g.name not in _NAMED:
        raise EmissionError(f"gate {g.name!r} has no QASM name; decompose it into named rotations first")
    args = ",".join(f"q[{q}]" for q in g.qubits)
    if g.params:
        return f"{g.name}({','.join(_fmt(p) for p in g.params)}) {args};"
    return f"{g.name} {args};"


def emit_qasm(circuit: Circuit) -> str:
    lines = [_HEADER.rstrip("\n")]
    lines.append(f"qreg q[{circuit.num_qubits}];")
    lines.extend(f"creg c{k}[1];" for k in range(circuit.num_cbits))
    for op in circuit.ops:
        if isinstance(op, Gate):
            lines.append(_gate_line(op))
        elif isinstance(op, IfBit):
            lines.append(f"if(c{op.cbit}=={op.value}) {_gate_line(op.op)}")
        elif isinstance(op, Measure):
            m = f"measure q[{op.qubit}] -> c{op.cbit}[0];"
            if op.basis == "X":
                lines.extend([f"h q[{op.qubit}];", m, f"h q[{op.qubit}];"])
            else:
                lines.append(m)
        elif isinstance(op, Reset):
            lines.append(f"reset q[{op.qubit}];")
        else:
            raise EmissionError(f"cannot emit {op!r}")
    return "\n".join(lines) + "\n"


_QREG = re.compile(r"qreg\s+q\[(\d+)\];")
_CREG = re.compile(r"creg\s+c(\d+)\[1\];")
_MEASURE = re.compile(r"measure\s+q\[(\d+)\]\s*->\s*c(\d+)\[0\];")
_RESET = re.compile(r"reset\s+q\[(\d+)\];")
_IF = re.compile(r"if\s*\(\s*c(\d+)\s*==\s*([01])\s*\)\s*(.*)")
_GATE = re.compile(r"([a-z][a-z0-9]*)\s*(?:\(([^)]*)\))?\s+(q\[\d+\](?:\s*,\s*q\[\d+\])*)\s*;")


def _parse_gate(text: str) -> Gate:
    match = _GATE.fullmatch(text.strip())
    if not match:
        raise ValueError(f"cannot parse gate statement {text!r}")
    name, params, args = match.groups()
    qubits = tuple(int(q) for q in re.findall(r"q\[(\d+)\]", args))
    values = tuple(float(p) for p in params.split(",")) if params else ()
    return Gate(name, qubits, values)


def parse_qasm(text: str) -> Circuit:
    """Read text produced by :func:`emit_qasm` back into a circuit."""
    num_qubits = None
    cbits = []
    ops = []
    for raw in text.splitlines():
        line = raw.split("//", 1)[0].strip()
        if not line or line.startswith("OPENQASM") or line.startswith("include"):
            continue
        if m := _QREG.fullmatch(line):
            num_qubits = int(m.group(1))
        elif m := _CREG.fullmatch(line):
            cbits.append(int(m.group(1)))
        elif m := _MEASURE.fullmatch(line):
            ops.append(Measure(int(m.group(1)), int(m.group(2))))
        elif m := _RESET.fullmatch(line):
            ops.append(Reset(int(m.group(1))))
        elif m := _IF.fullmatch(line):
            ops.append(IfBit(int(m.group(1)), int(m.group(2)), _parse_gate(m.group(3))))
        else:
            ops.append(_parse_gate(line))
    if num_qubits is None:
        raise ValueError("no qreg declaration")
    return Circuit(num_qubits, len(cbits), _fold_x_measurements(ops))


def _fold_x_measurements(ops: list) -> list:
    out = []
    i = 0
    while i < len(ops):
        window = ops[i:i + 3]
        if (
            len(window) == 3
            and isinstance(window[0], Gate) and window[0].name == "h"
            and isinstance(window[1], Measure) and window[1].basis == "Z"
            and isinstance(window[2], Gate) and window[2].name == "h"
            and window[0].qubits == window[2].qubits == (window[1].qubit,)
        ):
            out.append(Measure(window[1].qubit, window[1].cbit, "X"))
            i += 3
        else:
            out.append(ops[i])
            i += 1
    return out
