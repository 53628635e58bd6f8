"""Depolarizing noise and preparation failure."""
from __future__ import annotations

import string
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class NoiseModel:
    """Gate depolarizing strengths and per-qubit preparation failure probability.

    ``prep_fail`` replaces an input qubit by I/2.  The default 1e-6 reads a
    quoted "0.0001% fail rate" literally; 1e-4 is the other plausible reading.
    """

    p1: float = 0.0
    p2: float = 0.0
    prep_fail: float = 0.0

    def __post_init__(self):
        for name in ("p1", "p2", "prep_fail"):
            value = float(getattr(self, name))
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
            object.__setattr__(self, name, value)

    @classmethod
    def hardware_default(cls) -> "NoiseModel":
        return cls(p1=1e-4, p2=5e-3, prep_fail=1e-6)

    @property
    def is_noiseless(self) -> bool:
        return self.p1 == self.p2 == self.prep_fail == 0.0

    def scaled(self, factor: float) -> "NoiseModel":
        return NoiseModel(min(1.0, self.p1 * factor), min(1.0, self.p2 * factor), min(1.0, self.prep_fail * factor))


def mix_qubits(rho: np.ndarray, qubits, n: int) -> np.ndarray:
    """Replace the listed qubits by the maximally mixed state: ``I/2^k ⊗ tr_Q(rho)``."""
    qubits = sorted(set(qubits))
    letters = iter(string.ascii_letters)
    rows = [next(letters) for _ in range(n)]
    cols = [next(letters) for _ in range(n)]
    new_rows = list(rows)
    new_cols = list(cols)
    for q in qubits:
        cols[q] = rows[q]
        new_rows[q] = next(letters)
        new_cols[q] = next(letters)
    kept_rows = [rows[q] if q not in qubits else "" for q in range(n)]
    kept_cols = [cols[q] if q not in qubits else "" for q in range(n)]
    reduced = np.einsum(
        "".join(rows + cols) + "->" + "".join(kept_rows + kept_cols),
        rho.reshape((2,) * (2 * n)),
    )
    operands = [reduced] + [np.eye(2) / 2.0 for _ in qubits]
    subs = ["".join(kept_rows + kept_cols)] + [new_rows[q] + new_cols[q] for q in qubits]
    out = np.einsum(",".join(subs) + "->" + "".join(new_rows + new_cols), *operands)
    dim = 2 ** n
    return out.reshape(dim, dim)


def apply_depolarizing(rho: np.ndarray, qubits, p: float, n: int | None = None) -> np.ndarray:
    """``(1-p) rho + p/(4^k-1) * sum of P rho P`` over the non-identity Paulis on ``qubits``.

    Uses the twirl identity: the sum over all 4^k Paulis divided by 4^k is the
    maximal mixing of those qubits.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    qubits = tuple(qubits)
    if len(qubits) not in (1, 2):
        raise ValueError("depolarizing acts on one or two qubits")
    rho = np.asarray(rho, dtype=complex)
    if n is None:
        n = int(round(np.log2(rho.shape[0])))
    if p == 0.0:
        return rho.copy()
    d = 4 ** len(qubits)
    lam = p * d / (d - 1)
    return (1.0 - lam) * rho + lam * mix_qubits(rho, qubits, n)
