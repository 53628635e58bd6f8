"""Gate-level circuit representation.

Qubit 0 is the most significant bit of every state index.  Two-qubit gate
matrices act on ``(qubits[0], qubits[1])`` with ``qubits[0]`` as the high bit,
so ``cx`` is written ``Gate("cx", (control, target))``.
"""
from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Union

import numpy as np

_UNITARY_TOL = 1e-10

_FIXED = {
    "id": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.diag([1, -1]).astype(complex),
    "h": np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2),
    "s": np.diag([1, 1j]),
    "sdg": np.diag([1, -1j]),
    "t": np.diag([1, cmath.exp(1j * math.pi / 4)]),
    "tdg": np.diag([1, cmath.exp(-1j * math.pi / 4)]),
    "cx": np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
    "cz": np.diag([1, 1, 1, -1]).astype(complex),
}
_SELF_INVERSE = {"id", "x", "y", "z", "h", "cx", "cz"}
_DAGGER = {"s": "sdg", "sdg": "s", "t": "tdg", "tdg": "t"}
_PARAM_COUNT = {"rx": 1, "ry": 1, "rz": 1, "u1": 1, "u3": 3}


def rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(phi: float) -> np.ndarray:
    return np.diag([cmath.exp(-0.5j * phi), cmath.exp(0.5j * phi)])


def u1(lam: float) -> np.ndarray:
    return np.diag([1.0, cmath.exp(1j * lam)])


def u3(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [
            [c, -cmath.exp(1j * lam) * s],
            [cmath.exp(1j * phi) * s, cmath.exp(1j * (phi + lam)) * c],
        ]
    )


_PARAMETRIC = {"rx": rx, "ry": ry, "rz": rz, "u1": u1, "u3": u3}


def is_unitary(m: np.ndarray, tol: float = _UNITARY_TOL) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and np.allclose(m.conj().T @ m, np.eye(m.shape[0]), atol=tol)


@dataclass(frozen=True, eq=False)
class Gate:
    """A named gate, or a raw ``unitary`` carrying its own matrix."""

    name: str
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()
    matrix: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"repeated qubit in {self.name} {self.qubits}")
        if self.name == "unitary":
            if self.matrix is None:
                raise ValueError("a unitary gate needs a matrix")
            m = np.array(self.matrix, dtype=complex)
            if m.shape != (2 ** len(self.qubits),) * 2:
                raise ValueError(f"matrix shape {m.shape} does not match {len(self.qubits)} qubits")
            if not is_unitary(m):
                raise ValueError("matrix is not unitary")
            m.setflags(write=False)
            object.__setattr__(self, "matrix", m)
            return
        if self.name in _FIXED:
            width = 2 if self.name in ("cx", "cz") else 1
            expected_params = 0
        elif self.name in _PARAMETRIC:
            width, expected_params = 1, _PARAM_COUNT[self.name]
        else:
            raise ValueError(f"unknown gate {self.name!r}")
        if len(self.qubits) != width or len(self.params) != expected_params:
            raise ValueError(f"bad arity for {self.name}: qubits={self.qubits}, params={self.params}")

    @property
    def num_qubits(self) -> int:
        return len(self.qubits)

    def to_matrix(self) -> np.ndarray:
        if self.name == "unitary":
            return self.matrix
        if self.name in _FIXED:
            return _FIXED[self.name]
        return _PARAMETRIC[self.name](*self.params)

    def inverse(self) -> "Gate":
        if self.name in _SELF_INVERSE:
            return self
        if self.name in _DAGGER:
            return Gate(_DAGGER[self.name], self.qubits)
        if self.name in ("rx", "ry", "rz", "u1"):
            return Gate(self.name, self.qubits, (-self.params[0],))
        if self.name == "u3":
            theta, phi, lam = self.params
            return Gate("u3", self.qubits, (-theta, -lam, -phi))
        return Gate("unitary", self.qubits, matrix=self.matrix.conj().T)

    def same_as(self, other: "Gate", atol: float = 0.0) -> bool:
        if not isinstance(other, Gate) or self.name != other.name or self.qubits != other.qubits:
            return False
        if self.name == "unitary":
            return np.allclose(self.matrix, other.matrix, atol=atol, rtol=0)
        return len(self.params) == len(other.params) and all(
            abs(a - b) <= atol for a, b in zip(self.params, other.params)
        )


@dataclass(frozen=True)
class Measure:
    """Projective measurement in the Z or X basis; X outcome ``+`` is recorded as 0."""

    qubit: int
    cbit: int
    basis: str = "Z"

    def __post_init__(self):
        if self.basis not in ("Z", "X"):
            raise ValueError(f"basis must be 'Z' or 'X', got {self.basis!r}")


@dataclass(frozen=True)
class Reset:
    qubit: int


@dataclass(frozen=True, eq=False)
class IfBit:
    """Apply ``op`` only when classical bit ``cbit`` equals ``value``."""

    cbit: int
    value: int
    op: Gate

    def __post_init__(self):
        if self.value not in (0, 1):
            raise ValueError(f"condition value must be 0 or 1, got {self.value!r}")
        if not isinstance(self.op, Gate):
            raise TypeError("only gates can be classically conditioned")


Op = Union[Gate, Measure, Reset, IfBit]


@dataclass(frozen=True, eq=False)
class Circuit:
    num_qubits: int
    num_cbits: int
    ops: tuple[Op, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        for op in self.ops:
            gate = op.op if isinstance(op, IfBit) else op
            if isinstance(op, IfBit) and not 0 <= op.cbit < self.num_cbits:
                raise ValueError(f"condition bit {op.cbit} out of range")
            if isinstance(gate, Gate):
                qubits = gate.qubits
            elif isinstance(gate, (Measure, Reset)):
                qubits = (gate.qubit,)
                if isinstance(gate, Measure) and not 0 <= gate.cbit < self.num_cbits:
                    raise ValueError(f"classical bit {gate.cbit} out of range")
            else:
                raise TypeError(f"unsupported operation {op!r}")
            if any(not 0 <= q < self.num_qubits for q in qubits):
                raise ValueError(f"qubit index out of range in {op!r}")

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    @property
    def two_qubit_count(self) -> int:
        """Static count of two-qubit gates, conditioned ones included."""
        count = 0
        for op in self.ops:
            gate = op.op if isinstance(op, IfBit) else op
            if isinstance(gate, Gate) and gate.num_qubits == 2:
                count += 1
        return count

    def count_ops(self) -> Counter:
        names = Counter()
        for op in self.ops:
            if isinstance(op, IfBit):
                names[f"if:{op.op.name}"] += 1
            elif isinstance(op, Gate):
                names[op.name] += 1
            elif isinstance(op, Measure):
                names[f"measure_{op.basis.lower()}"] += 1
            else:
                names["reset"] += 1
        return names

    def gates(self) -> list[Gate]:
        """Every gate, unwrapping classical conditions."""
        return [op.op if isinstance(op, IfBit) else op for op in self.ops if isinstance(op, (Gate, IfBit))]


def inverse_gates(gates) -> list[Gate]:
    return [g.inverse() for g in reversed(list(gates))]


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """``|tr(a^dagger b)| / d == 1`` within ``tol``."""
    a = np.asarray(a)
    b = np.asarray(b)
    d = a.shape[0]
    return abs(abs(np.trace(a.conj().T @ b)) / d - 1.0) <= tol


def embed(gate: Gate, num_qubits: int) -> np.ndarray:
    """Dense matrix of ``gate`` on ``num_qubits`` qubits (small circuits only)."""
    m = gate.to_matrix()
    k = gate.num_qubits
    others = [q for q in range(num_qubits) if q not in gate.qubits]
    order = list(gate.qubits) + others
    full = np.kron(m, np.eye(2 ** len(others)))
    t = full.reshape([2] * (2 * num_qubits))
    inv = np.argsort(order)
    perm = list(inv) + [num_qubits + i for i in inv]
    return t.transpose(perm).reshape(2**num_qubits, 2**num_qubits)


def gates_matrix(gates, num_qubits: int) -> np.ndarray:
    """Product of a time-ordered gate list."""
    out = np.eye(2**num_qubits, dtype=complex)
    for g in gates:
        out = embed(g, num_qubits) @ out
    return out


def zyz_angles(u: np.ndarray) -> tuple[float, float, float, float]:
    """``(alpha, beta, gamma, delta)`` with ``u = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta)``."""
    u = np.asarray(u, dtype=complex)
    alpha = 0.5 * cmath.phase(np.linalg.det(u))
    v = u * cmath.exp(-1j * alpha)
    a, b = v[0, 0], v[1, 0]
    gamma = 2.0 * math.atan2(abs(b), abs(a))
    if abs(a) < 1e-14:
        plus, minus = 0.0, 2.0 * cmath.phase(b)
    elif abs(b) < 1e-14:
        plus, minus = -2.0 * cmath.phase(a), 0.0
    else:
        plus, minus = -2.0 * cmath.phase(a), 2.0 * cmath.phase(b)
    beta = 0.5 * (plus + minus)
    delta = 0.5 * (plus - minus)
    # e^{i alpha} is only fixed up to a sign by the determinant; settle it here.
    recon = cmath.exp(1j * alpha) * (rz(beta) @ ry(gamma) @ rz(delta))
    if np.abs(recon - u).max() > 1e-9:
        alpha += math.pi
    return alpha, beta, gamma, delta


def controlled_gates(gate: Gate, control: int, value: int = 1) -> list[Gate]:
    """Lower ``gate`` with one extra control line to cx and one-qubit gates.

    One-qubit gates use the two-CNOT construction with a phase on the control;
    ``cx`` becomes a six-CNOT Toffoli.  ``value=0`` conjugates the control with X.
    """
    if control in gate.qubits:
        raise ValueError("control overlaps the gate's qubits")
    if gate.num_qubits == 1:
        (t,) = gate.qubits
        alpha, beta, gamma, delta = zyz_angles(gate.to_matrix())
        body = [
            Gate("rz", (t,), ((delta - beta) / 2,)),
            Gate("cx", (control, t)),
            Gate("rz", (t,), (-(delta + beta) / 2,)),
            Gate("ry", (t,), (-gamma / 2,)),
            Gate("cx", (control, t)),
            Gate("ry", (t,), (gamma / 2,)),
            Gate("rz", (t,), (beta,)),
            Gate("u1", (control,), (alpha,)),
        ]
    elif gate.name == "cx":
        a, b = control, gate.qubits[0]
        c = gate.qubits[1]
        body = [
            Gate("h", (c,)), Gate("cx", (b, c)), Gate("tdg", (c,)), Gate("cx", (a, c)),
            Gate("t", (c,)), Gate("cx", (b, c)), Gate("tdg", (c,)), Gate("cx", (a, c)),
            Gate("t", (b,)), Gate("t", (c,)), Gate("h", (c,)), Gate("cx", (a, b)),
            Gate("t", (a,)), Gate("tdg", (b,)), Gate("cx", (a, b)),
        ]
    else:
        raise ValueError(f"no controlled lowering for {gate.name!r}")
    if value == 0:
        return [Gate("x", (control,))] + body + [Gate("x", (control,))]
    if value != 1:
        raise ValueError(f"control value must be 0 or 1, got {value!r}")
    return body


def drop_identities(gates) -> list[Gate]:
    """Remove rotations whose angle is exactly zero."""
    out = []
    for g in gates:
        if g.name in ("rx", "ry", "rz", "u1") and g.params[0] == 0.0:
            continue
        out.append(g)
    return out
