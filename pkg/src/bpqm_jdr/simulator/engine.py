"""Exact branch enumeration, noisy density-matrix evolution and seeded sampling.

Qubit 0 is the most significant bit of a basis index.  A classical record is a
tuple with one entry per classical bit; bits never written read as 0.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ..circuit.ir import Circuit, Gate, IfBit, Measure, Reset
from ..errors import ConsistencyError
from . import kernels
from .noise import NoiseModel, apply_depolarizing, mix_qubits

log = logging.getLogger(__name__)

PRUNE_THRESHOLD = 1e-15
TRACE_TOLERANCE = 1e-9
MAX_DENSITY_QUBITS = 5
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)


@dataclass
class BranchState:
    amplitudes: np.ndarray
    classical_record: tuple[int, ...]
    weight: float


@dataclass
class ExactResult:
    branches: list[BranchState]
    pruned_mass: float = 0.0
    num_cbits: int = 0

    def distribution(self) -> dict[tuple[int, ...], float]:
        dist: dict[tuple[int, ...], float] = {}
        for b in self.branches:
            dist[b.classical_record] = dist.get(b.classical_record, 0.0) + b.weight
        return dict(sorted(dist.items()))

    @property
    def total_weight(self) -> float:
        return float(sum(b.weight for b in self.branches))


def initial_vector(initial, num_qubits: int) -> np.ndarray:
    """Accept a full 2^n vector or a sequence of n single-qubit vectors."""
    arr = np.asarray(initial, dtype=complex)
    if arr.ndim == 1 and arr.shape[0] == 2 ** num_qubits:
        psi = arr.copy()
    elif arr.ndim == 2 and arr.shape == (num_qubits, 2):
        psi = arr[0]
        for v in arr[1:]:
            psi = np.kron(psi, v)
    else:
        raise ValueError(f"initial state of shape {arr.shape} fits neither 2^n amplitudes nor n qubits")
    norm = np.vdot(psi, psi).real
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"initial state is not normalized (norm^2 = {norm!r})")
    return np.ascontiguousarray(psi, dtype=np.complex128)


def _apply(psi: np.ndarray, u: np.ndarray, qubits: tuple[int, ...], n: int) -> None:
    if len(qubits) <= 2:
        kernels.apply_gate(psi, u, qubits, n)
        return
    k = len(qubits)
    tensor = psi.reshape((2,) * n)
    moved = np.moveaxis(tensor, qubits, range(k))
    out = (u @ moved.reshape(2 ** k, -1)).reshape(moved.shape)
    tensor[...] = np.moveaxis(out, range(k), qubits)


def _bit_mask(qubit: int, n: int) -> np.ndarray:
    return ((np.arange(2 ** n) >> (n - 1 - qubit)) & 1).astype(bool)


def _set(record: tuple[int, ...], cbit: int, value: int) -> tuple[int, ...]:
    return record[:cbit] + (value,) + record[cbit + 1:]


def run_exact(circuit: Circuit, initial) -> ExactResult:
    """Enumerate every measurement branch with its exact probability."""
    n = circuit.num_qubits
    branches = [BranchState(initial_vector(initial, n), (0,) * circuit.num_cbits, 1.0)]
    pruned = 0.0
    for op in circuit.ops:
        if isinstance(op, Gate):
            u = op.to_matrix()
            for b in branches:
                _apply(b.amplitudes, u, op.qubits, n)
        elif isinstance(op, IfBit):
            u = op.op.to_matrix()
            for b in branches:
                if b.classical_record[op.cbit] == op.value:
                    _apply(b.amplitudes, u, op.op.qubits, n)
        elif isinstance(op, (Measure, Reset)):
            is_reset = isinstance(op, Reset)
            basis = "Z" if is_reset else op.basis
            ones = _bit_mask(op.qubit, n)
            children = []
            for b in branches:
                psi = b.amplitudes
                if basis == "X":
                    _apply(psi, _H, (op.qubit,), n)
                p1 = float(np.sum(np.abs(psi[ones]) ** 2))
                p0 = float(np.sum(np.abs(psi[~ones]) ** 2))
                if abs(p0 + p1 - 1.0) > TRACE_TOLERANCE:
                    raise ConsistencyError(f"branch state norm drifted to {p0 + p1!r}")
                for outcome, p in ((0, p0), (1, p1)):
                    weight = b.weight * p
                    if weight < PRUNE_THRESHOLD:
                        if weight > 0.0:
                            pruned += weight
                            log.debug("pruned branch %s outcome %d, weight %.3e", b.classical_record, outcome, weight)
                        continue
                    child = np.where(ones if outcome else ~ones, psi, 0.0) / np.sqrt(p)
                    child = np.ascontiguousarray(child)
                    if is_reset:
                        if outcome:
                            _apply(child, _X, (op.qubit,), n)
                        record = b.classical_record
                    else:
                        if basis == "X":
                            _apply(child, _H, (op.qubit,), n)
                        record = _set(b.classical_record, op.cbit, outcome)
                    children.append(BranchState(child, record, weight))
            branches = children
        else:
            raise TypeError(f"unsupported operation {op!r}")
    if pruned > 0.0:
        log.info("run_exact pruned total mass %.3e", pruned)
    total = sum(b.weight for b in branches) + pruned
    if abs(total - 1.0) > TRACE_TOLERANCE:
        raise ConsistencyError(f"branch weights sum to {total!r}")
    return ExactResult(branches, pruned, circuit.num_cbits)


def _apply_density(vec: np.ndarray, u: np.ndarray, qubits: tuple[int, ...], n: int) -> None:
    _apply(vec, u, qubits, 2 * n)
    _apply(vec, np.conj(u), tuple(q + n for q in qubits), 2 * n)


def _gate_noise(rho: np.ndarray, qubits, noise: NoiseModel, n: int) -> np.ndarray:
    p = noise.p1 if len(qubits) == 1 else noise.p2
    if p == 0.0 or len(qubits) > 2:
        return rho
    return apply_depolarizing(rho.reshape(2 ** n, 2 ** n), qubits, p, n).reshape(-1)


def initial_density(initial, num_qubits: int, noise: NoiseModel) -> np.ndarray:
    psi = initial_vector(initial, num_qubits)
    rho = np.outer(psi, psi.conj())
    if noise.prep_fail > 0.0:
        f = noise.prep_fail
        for q in range(num_qubits):
            rho = (1.0 - f) * rho + f * mix_qubits(rho, (q,), num_qubits)
    return rho


def run_density(circuit: Circuit, initial, noise: NoiseModel | None = None) -> dict[tuple[int, ...], float]:
    """Outcome distribution over classical records under depolarizing gate noise."""
    noise = noise or NoiseModel()
    n = circuit.num_qubits
    if n > MAX_DENSITY_QUBITS:
        raise ValueError(f"density simulation supports at most {MAX_DENSITY_QUBITS} qubits, got {n}")
    dim = 2 ** n
    start = initial_density(initial, n, noise)
    states = {(0,) * circuit.num_cbits: np.ascontiguousarray(start.reshape(-1))}
    for op in circuit.ops:
        if isinstance(op, (Gate, IfBit)):
            gate = op.op if isinstance(op, IfBit) else op
            u = gate.to_matrix()
            for record, vec in list(states.items()):
                if isinstance(op, IfBit) and record[op.cbit] != op.value:
                    continue
                _apply_density(vec, u, gate.qubits, n)
                states[record] = np.ascontiguousarray(_gate_noise(vec, gate.qubits, noise, n))
        elif isinstance(op, (Measure, Reset)):
            ones = _bit_mask(op.qubit, n)
            rows = np.repeat(ones, dim)
            cols = np.tile(ones, dim)
            keep = [(~rows) & (~cols), rows & cols]
            x_basis = isinstance(op, Measure) and op.basis == "X"
            new: dict[tuple[int, ...], np.ndarray] = {}
            for record, vec in states.items():
                if x_basis:
                    _apply_density(vec, _H, (op.qubit,), n)
                for outcome in (0, 1):
                    part = np.ascontiguousarray(np.where(keep[outcome], vec, 0.0))
                    if isinstance(op, Reset):
                        if outcome:
                            _apply_density(part, _X, (op.qubit,), n)
                        key = record
                    else:
                        if x_basis:
                            _apply_density(part, _H, (op.qubit,), n)
                        key = _set(record, op.cbit, outcome)
                    new[key] = new[key] + part if key in new else part
            states = new
        else:
            raise TypeError(f"unsupported operation {op!r}")
    dist = {}
    total = 0.0
    for record, vec in sorted(states.items()):
        tr = np.trace(vec.reshape(dim, dim))
        total += tr.real
        dist[record] = float(max(tr.real, 0.0))
    if abs(total - 1.0) > TRACE_TOLERANCE:
        raise ConsistencyError(f"density trace drifted to {total!r}")
    return dist


def sample(circuit: Circuit, initial, shots: int, seed: int, noise: NoiseModel | None = None) -> dict[tuple[int, ...], int]:
    """Seeded shot counts drawn from the exact (or noisy) record distribution."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots!r}")
    if noise is None or noise.is_noiseless:
        dist = run_exact(circuit, initial).distribution()
    else:
        dist = run_density(circuit, initial, noise)
    records = sorted(dist)
    probs = np.array([dist[r] for r in records])
    probs = probs / probs.sum()
    counts = np.random.default_rng(seed).multinomial(shots, probs)
    return {r: int(c) for r, c in zip(records, counts) if c}
