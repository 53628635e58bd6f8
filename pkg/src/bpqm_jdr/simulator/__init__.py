"""Circuit execution engines."""
from . import kernels
from .engine import BranchState, ExactResult, initial_vector, run_density, run_exact, sample
from .noise import NoiseModel, apply_depolarizing, mix_qubits

__all__ = [
    "BranchState",
    "ExactResult",
    "NoiseModel",
    "apply_depolarizing",
    "initial_vector",
    "kernels",
    "mix_qubits",
    "run_density",
    "run_exact",
    "sample",
]
