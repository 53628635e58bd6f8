"""Decoder circuits for the 3-bit tree code.

Qubits 0, 1, 2 carry the received symbols x1, x2, x3.  The check node is a
CNOT from qubit 1 onto qubit 2, whose value ``m`` selects which bit-node
unitary combines qubits 0 and 1.

Classical bits:

* first-bit circuit: ``c0 = m``, ``c1 = x1_hat``
* full decoder: ``c0 = x1_hat``, ``c1 = x2_hat``, ``c2`` = a check bit that is
  0 in the noiseless circuit; ``x3_hat = x1_hat ^ x2_hat``
"""
from __future__ import annotations

import math

from .ir import Circuit, Gate, IfBit, Measure, Reset, controlled_gates, inverse_gates
from .ustar import branch_angles, decompose_u_star, u_star_params

Q1, Q2, Q3 = 0, 1, 2
STYLES = ("multiplexed", "per_gate")


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not 0.0 < theta < math.pi / 2:
        raise ValueError(f"theta must lie in (0, pi/2), got {theta!r}")
    return theta


def _check_style(style: str) -> str:
    if style not in STYLES:
        raise ValueError(f"style must be one of {STYLES}, got {style!r}")
    return style


def mux_ry(angle0: float, angle1: float, control: int, target: int) -> list[Gate]:
    """``Ry(angle_c)`` on ``target`` where ``c`` is the value of ``control``; two CNOTs."""
    return [
        Gate("ry", (target,), (0.5 * (angle0 + angle1),)),
        Gate("cx", (control, target)),
        Gate("ry", (target,), (0.5 * (angle0 - angle1),)),
        Gate("cx", (control, target)),
    ]


def _bit_node_variants(theta: float) -> list[list[Gate]]:
    """U_star(theta, theta_m) for m = 0, 1 as aligned gate lists on qubits 0, 1."""
    thetas = branch_angles(theta, theta)
    return [
        decompose_u_star(u_star_params(theta, t), (Q1, Q2), simplify=False)
        for t in thetas
    ]


def _select_classical(variants, cbit: int) -> list:
    ops = []
    for g0, g1 in zip(*variants):
        if g0.same_as(g1):
            ops.append(g0)
        else:
            ops.extend([IfBit(cbit, 0, g0), IfBit(cbit, 1, g1)])
    return ops


def _select_quantum(variants, control: int, style: str) -> list[Gate]:
    if style == "per_gate":
        ops = [Gate("x", (control,))]
        for g in variants[0]:
            ops.extend(controlled_gates(g, control, 1))
        ops.append(Gate("x", (control,)))
        for g in variants[1]:
            ops.extend(controlled_gates(g, control, 1))
        return ops
    ops = []
    for g0, g1 in zip(*variants):
        if g0.same_as(g1):
            ops.append(g0)
        elif g0.name == g1.name == "ry" and g0.qubits == g1.qubits:
            ops.extend(mux_ry(g0.params[0], g1.params[0], control, g0.qubits[0]))
        else:
            ops.extend(controlled_gates(g0, control, 0))
            ops.extend(controlled_gates(g1, control, 1))
    return ops


def combine_stage(theta: float, style: str = "multiplexed") -> list[Gate]:
    """Check node then coherently selected bit node (no measurement)."""
    return [Gate("cx", (Q2, Q3))] + _select_quantum(_bit_node_variants(theta), Q3, _check_style(style))


def build_first_bit_circuit(theta: float, coherent: bool = False) -> Circuit:
    """Decoder for x1 alone.

    The check qubit is measured and its outcome picks the bit-node unitary
    through classical conditions.  ``coherent=True`` keeps the selection
    quantum instead; the x1 statistics are the same.
    """
    theta = _check_theta(theta)
    if coherent:
        ops = combine_stage(theta)
    else:
        ops = [Gate("cx", (Q2, Q3)), Measure(Q3, 0)]
        ops += _select_classical(_bit_node_variants(theta), 0)
    ops.append(Measure(Q1, 1, "X"))
    name = "first_bit_coherent" if coherent else "first_bit"
    return Circuit(3, 2, ops, name=name)


def _if_one(cbit: int, gate: Gate) -> IfBit:
    return IfBit(cbit, 1, gate)


def _repreparation(theta: float, style: str) -> list:
    """Reset qubit 0 and re-prepare the compressed x1 belief for the decided sign.

    The compressed state is ``|s theta''_m>`` with ``cos theta''_m =
    cos theta cos theta_m`` and ``s = (-1)^x1_hat``; ``m`` is read coherently
    from qubit 2.
    """
    theta0, theta1 = branch_angles(theta, theta)
    angles = [math.acos(math.cos(theta) * math.cos(t)) for t in (theta0, theta1)]
    if style == "per_gate":
        prep = controlled_gates(Gate("ry", (Q1,), (angles[0],)), Q3, 0)
        prep += controlled_gates(Gate("ry", (Q1,), (angles[1],)), Q3, 1)
    else:
        prep = mux_ry(angles[0], angles[1], Q3, Q1)
    return [Reset(Q1)] + prep + [_if_one(0, Gate("z", (Q1,)))]


def _second_round(theta: float, style: str) -> list:
    """Decode x2 given x1_hat from the restored qubits 1 and 2.

    After the check-node CNOT, qubit 1 holds ``|s theta_m>`` in branch ``m``.
    A q2-selected rotation returns it to ``|0>``, which leaves the x3 sign on
    qubit 2 as ``b0|0> +- b1|1>``.  Two CNOTs swap that onto qubit 1, where an
    X measurement (after a Z flip when x1_hat = 1) yields x2_hat.
    """
    theta0, theta1 = branch_angles(theta, theta)
    flip = _if_one(0, Gate("z", (Q2,)))
    if style == "per_gate":
        undo = controlled_gates(Gate("ry", (Q2,), (-theta0,)), Q3, 0)
        undo += controlled_gates(Gate("ry", (Q2,), (-theta1,)), Q3, 1)
    else:
        undo = mux_ry(-theta0, -theta1, Q3, Q2)
    return (
        [Gate("cx", (Q2, Q3)), flip]
        + undo
        + [flip, Gate("cx", (Q3, Q2)), Gate("cx", (Q2, Q3)), flip, Measure(Q2, 1, "X"), Measure(Q3, 2)]
    )


def build_full_circuit(theta: float, style: str = "multiplexed") -> Circuit:
    """Full three-bit decoder.

    1. check-node CNOT; 2. bit node selected coherently by qubit 2;
    3. X measurement of qubit 0 -> x1_hat, reset, re-preparation;
    4. undo stages 2 and 1; 5. second round on qubits 1, 2 -> x2_hat.

    ``style="per_gate"`` adds a control line to every component of the bit-node
    unitaries; ``"multiplexed"`` shares gates common to both variants.
    """
    theta = _check_theta(theta)
    style = _check_style(style)
    forward = combine_stage(theta, style)
    ops = list(forward)
    ops.append(Measure(Q1, 0, "X"))
    ops += _repreparation(theta, style)
    ops += inverse_gates(forward)
    ops += _second_round(theta, style)
    return Circuit(3, 3, ops, name=f"full_{style}")


def full_decisions(record) -> tuple[int, int, int]:
    x1, x2 = record[0], record[1]
    return x1, x2, x1 ^ x2
