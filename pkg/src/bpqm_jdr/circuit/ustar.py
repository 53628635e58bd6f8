"""The bit-node combining unitary and its parameters.

``u_star_matrix(theta, theta_p)`` maps ``|s theta> (x) |s theta_p>`` to
``|s theta''> (x) |0>`` with ``cos theta'' = cos theta cos theta_p`` for either
sign ``s``: two beliefs about the same bit are compressed onto the first qubit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateInputError
from .ir import Gate, controlled_gates, drop_identities

_HALF_PI = math.pi / 2


@dataclass(frozen=True)
class UStarParams:
    theta: float
    theta_prime: float
    a_plus: float
    a_minus: float
    b_plus: float
    b_minus: float
    theta0: float
    theta1: float
    gamma1: float
    gamma2: float


def check_angles(theta: float, theta_prime: float) -> None:
    for name, value in (("theta", theta), ("theta_prime", theta_prime)):
        if not (0.0 <= value <= _HALF_PI):
            raise ValueError(f"{name} must lie in [0, pi/2], got {value!r}")
    if theta == 0.0 and theta_prime == 0.0:
        raise DegenerateInputError("theta = theta' = 0 leaves theta1 undefined (0/0)")


def branch_angles(theta: float, theta_prime: float) -> tuple[float, float]:
    """Check-node output angles ``(theta0, theta1)``.

    ``cos theta0 = (c + c')/(1 + c c')`` and ``cos theta1 = (c - c')/(1 - c c')``
    are evaluated through ``tan(theta0/2) = t t'`` and ``tan(theta1/2) = t / t'``
    with ``t = tan(theta/2)``, which stays accurate at small angles.
    """
    check_angles(theta, theta_prime)
    t, tp = math.tan(0.5 * theta), math.tan(0.5 * theta_prime)
    theta0 = 2.0 * math.atan(t * tp)
    theta1 = _HALF_PI if theta == theta_prime else 2.0 * math.atan2(t, tp)
    return theta0, theta1


def u_star_params(theta: float, theta_prime: float) -> UStarParams:
    check_angles(theta, theta_prime)
    # sum-to-product forms of the defining ratios, free of cancellation
    c, s = math.cos(0.5 * theta), math.sin(0.5 * theta)
    cp, sp = math.cos(0.5 * theta_prime), math.sin(0.5 * theta_prime)
    norm_a = math.hypot(c * cp, s * sp)
    norm_b = math.hypot(c * sp, s * cp)
    a_plus, a_minus = c * cp / norm_a, s * sp / norm_a
    b_plus, b_minus = c * sp / norm_b, s * cp / norm_b
    theta0, theta1 = branch_angles(theta, theta_prime)
    return UStarParams(
        theta=theta,
        theta_prime=theta_prime,
        a_plus=a_plus,
        a_minus=a_minus,
        b_plus=b_plus,
        b_minus=b_minus,
        theta0=theta0,
        theta1=theta1,
        gamma1=2.0 * math.asin(min(1.0, a_minus)),
        gamma2=2.0 * math.asin(min(1.0, b_plus)),
    )


def u_star_matrix(theta: float, theta_prime: float) -> np.ndarray:
    """4x4 matrix in basis |00>, |01>, |10>, |11> (first qubit is the high bit)."""
    p = u_star_params(theta, theta_prime)
    return np.array(
        [
            [p.a_plus, 0, 0, p.a_minus],
            [p.a_minus, 0, 0, -p.a_plus],
            [0, p.b_plus, p.b_minus, 0],
            [0, p.b_minus, -p.b_plus, 0],
        ],
        dtype=complex,
    )


def decompose_u_star(params: UStarParams, qubits=(0, 1), controlled_on=None, simplify: bool = True) -> list[Gate]:
    """Time-ordered gates realizing ``U_star`` on ``qubits`` (first = high bit).

    Structure: a CNOT moves the input parity onto the first qubit, which then
    selects ``Ry(gamma1) Z`` (even) or ``Ry(-gamma2)`` (odd) on the second.
    That selection costs two CNOTs, three in total.  The product equals
    ``-1j * u_star_matrix`` exactly, the same phase for every angle pair.

    ``controlled_on=(qubit, value)`` adds a control line to every gate.
    ``simplify=False`` keeps zero-angle rotations so that decompositions for
    different angles line up gate by gate.
    """
    a, b = qubits
    g1, g2 = params.gamma1, params.gamma2
    gates = (
        [
            Gate("cx", (b, a)),
            Gate("sdg", (a,)),
            Gate("rz", (b,), (_HALF_PI,)),
            Gate("cx", (a, b)),
            Gate("rz", (b,), (_HALF_PI,)),
            Gate("ry", (b,), (0.5 * (g1 + g2),)),
            Gate("cx", (a, b)),
            Gate("ry", (b,), (0.5 * (g1 - g2),)),
        ]
    )
    if simplify:
        gates = drop_identities(gates)
    if controlled_on is None:
        return gates
    control, value = controlled_on
    lowered = []
    for g in gates:
        lowered.extend(controlled_gates(g, control, 1))
    if value == 0:
        lowered = [Gate("x", (control,))] + lowered + [Gate("x", (control,))]
    elif value != 1:
        raise ValueError(f"control value must be 0 or 1, got {value!r}")
    return lowered
