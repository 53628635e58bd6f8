"""Gate IR, the bit-node unitary family, decoder builders and QASM I/O."""
from .builders import (
    build_first_bit_circuit,
    build_full_circuit,
    combine_stage,
    full_decisions,
    mux_ry,
)
from .ir import (
    Circuit,
    Gate,
    IfBit,
    Measure,
    Reset,
    controlled_gates,
    embed,
    equal_up_to_phase,
    gates_matrix,
    inverse_gates,
    zyz_angles,
)
from .qasm import emit_qasm, parse_qasm
from .ustar import UStarParams, branch_angles, decompose_u_star, u_star_matrix, u_star_params

__all__ = [
    "Circuit",
    "Gate",
    "IfBit",
    "Measure",
    "Reset",
    "UStarParams",
    "branch_angles",
    "build_first_bit_circuit",
    "build_full_circuit",
    "combine_stage",
    "controlled_gates",
    "decompose_u_star",
    "embed",
    "emit_qasm",
    "equal_up_to_phase",
    "full_decisions",
    "gates_matrix",
    "inverse_gates",
    "mux_ry",
    "parse_qasm",
    "u_star_matrix",
    "u_star_params",
    "zyz_angles",
]
