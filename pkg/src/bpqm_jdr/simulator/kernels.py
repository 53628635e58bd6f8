"""Select the gate kernels at import.

The compiled module is used when it imports; setting ``BPQM_JDR_PURE_PYTHON``
to a non-empty value forces the numpy fallback.
"""
from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

try:
    from . import _kernels_cy
except ImportError:  # not built
    _kernels_cy = None

_BACKENDS = {"python": _kernels_py}
if _kernels_cy is not None:
    _BACKENDS["cython"] = _kernels_cy

BACKEND = "python" if os.environ.get("BPQM_JDR_PURE_PYTHON") or _kernels_cy is None else "cython"
_impl = _BACKENDS[BACKEND]


def available_backends() -> tuple[str, ...]:
    return tuple(_BACKENDS)


def set_backend(name: str) -> str:
    """Switch kernels for the whole process; returns the previous backend name."""
    global BACKEND, _impl
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}")
    previous = BACKEND
    BACKEND, _impl = name, _BACKENDS[name]
    return previous


def apply_gate(psi: np.ndarray, u: np.ndarray, qubits: tuple[int, ...], n: int) -> None:
    """Apply a 1- or 2-qubit unitary to ``psi`` in place."""
    u = np.ascontiguousarray(u, dtype=np.complex128)
    if len(qubits) == 1:
        _impl.apply_1q(psi, u, qubits[0], n)
    elif len(qubits) == 2:
        _impl.apply_2q(psi, u, qubits[0], qubits[1], n)
    else:
        raise ValueError(f"kernels handle 1 or 2 qubits, got {len(qubits)}")
