import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.stats import unitary_group

from bpqm_jdr.circuit.ir import (
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
    is_unitary,
    ry,
    rz,
    zyz_angles,
)

angles = st.floats(-2 * math.pi, 2 * math.pi)


def controlled(u, value=1):
    """Control on the first (high) qubit."""
    d = u.shape[0]
    out = np.eye(2 * d, dtype=complex)
    sl = slice(d, 2 * d) if value == 1 else slice(0, d)
    out[sl, sl] = u
    return out


class TestGate:
    def test_validation(self):
        with pytest.raises(ValueError):
            Gate("foo", (0,))
        with pytest.raises(ValueError):
            Gate("cx", (0,))
        with pytest.raises(ValueError):
            Gate("cx", (1, 1))
        with pytest.raises(ValueError):
            Gate("ry", (0,))
        with pytest.raises(ValueError):
            Gate("unitary", (0,), matrix=np.array([[1, 1], [0, 1]]))
        with pytest.raises(ValueError):
            Gate("unitary", (0, 1), matrix=np.eye(2))

    @pytest.mark.parametrize("name", ["x", "y", "z", "h", "s", "sdg", "t", "tdg", "cx", "cz"])
    def test_fixed_inverse(self, name):
        g = Gate(name, (0, 1) if name in ("cx", "cz") else (0,))
        assert is_unitary(g.to_matrix())
        assert np.allclose(g.inverse().to_matrix() @ g.to_matrix(), np.eye(g.to_matrix().shape[0]))

    @given(angles, angles, angles)
    def test_parametric_inverse(self, a, b, c):
        for g in (Gate("rx", (0,), (a,)), Gate("ry", (0,), (a,)), Gate("rz", (0,), (a,)),
                  Gate("u1", (0,), (a,)), Gate("u3", (0,), (a, b, c))):
            assert np.allclose(g.inverse().to_matrix() @ g.to_matrix(), np.eye(2), atol=1e-12)

    def test_raw_unitary_inverse(self):
        u = unitary_group.rvs(4, random_state=3)
        g = Gate("unitary", (0, 1), matrix=u)
        assert np.allclose(g.inverse().to_matrix() @ u, np.eye(4))

    def test_same_as(self):
        assert Gate("ry", (0,), (0.1,)).same_as(Gate("ry", (0,), (0.1 + 1e-12,)), atol=1e-9)
        assert not Gate("ry", (0,), (0.1,)).same_as(Gate("ry", (1,), (0.1,)))
        assert not Gate("ry", (0,), (0.1,)).same_as(Gate("rz", (0,), (0.1,)))


class TestMatrices:
    def test_embed_against_kron(self):
        u = unitary_group.rvs(2, random_state=1)
        g = Gate("unitary", (1,), matrix=u)
        assert np.allclose(embed(g, 3), np.kron(np.kron(np.eye(2), u), np.eye(2)))

    def test_embed_reversed_pair(self):
        # cx with control 1, target 0 equals SWAP . CX(0,1) . SWAP
        swap = np.eye(4)[[0, 2, 1, 3]]
        cx = embed(Gate("cx", (0, 1)), 2)
        assert np.allclose(embed(Gate("cx", (1, 0)), 2), swap @ cx @ swap)

    def test_gates_matrix_order(self):
        gs = [Gate("h", (0,)), Gate("cx", (0, 1))]
        expected = embed(gs[1], 2) @ embed(gs[0], 2)
        assert np.allclose(gates_matrix(gs, 2), expected)
        assert np.allclose(gates_matrix(gs + inverse_gates(gs), 2), np.eye(4))

    def test_equal_up_to_phase(self):
        u = unitary_group.rvs(4, random_state=2)
        assert equal_up_to_phase(u, np.exp(0.7j) * u)
        assert not equal_up_to_phase(u, np.eye(4))

    @pytest.mark.parametrize("seed", range(20))
    def test_zyz_reconstructs(self, seed):
        u = unitary_group.rvs(2, random_state=seed)
        alpha, beta, gamma, delta = zyz_angles(u)
        assert np.allclose(np.exp(1j * alpha) * rz(beta) @ ry(gamma) @ rz(delta), u, atol=1e-10)

    @pytest.mark.parametrize("u", [np.eye(2), np.array([[0, 1], [1, 0]]), np.diag([1, 1j]), np.array([[0, -1j], [1j, 0]])])
    def test_zyz_special_cases(self, u):
        alpha, beta, gamma, delta = zyz_angles(u)
        assert np.allclose(np.exp(1j * alpha) * rz(beta) @ ry(gamma) @ rz(delta), u, atol=1e-10)


class TestControlled:
    @pytest.mark.parametrize("seed", range(10))
    @pytest.mark.parametrize("value", [0, 1])
    def test_one_qubit(self, seed, value):
        u = unitary_group.rvs(2, random_state=seed)
        gates = controlled_gates(Gate("unitary", (1,), matrix=u), 0, value)
        assert np.allclose(gates_matrix(gates, 2), controlled(u, value), atol=1e-10)
        assert sum(g.num_qubits == 2 for g in gates) == 2

    def test_toffoli(self):
        gates = controlled_gates(Gate("cx", (1, 2)), 0)
        assert np.allclose(gates_matrix(gates, 3), controlled(embed(Gate("cx", (0, 1)), 2)), atol=1e-10)
        assert sum(g.num_qubits == 2 for g in gates) == 6

    def test_rejects_overlap(self):
        with pytest.raises(ValueError):
            controlled_gates(Gate("x", (0,)), 0)


class TestCircuit:
    def test_validation(self):
        with pytest.raises(ValueError):
            Circuit(2, 1, [Gate("x", (2,))])
        with pytest.raises(ValueError):
            Circuit(2, 1, [Measure(0, 1)])
        with pytest.raises(ValueError):
            Circuit(2, 1, [IfBit(3, 0, Gate("x", (0,)))])
        with pytest.raises(ValueError):
            Measure(0, 0, "Y")
        with pytest.raises(TypeError):
            IfBit(0, 1, Measure(0, 0))

    def test_counts(self):
        c = Circuit(3, 1, [Gate("cx", (0, 1)), Measure(0, 0), IfBit(0, 1, Gate("cz", (1, 2))), Reset(0), Gate("h", (2,))])
        assert c.two_qubit_count == 2
        assert c.count_ops()["if:cz"] == 1 and c.count_ops()["measure_z"] == 1 and c.count_ops()["reset"] == 1
        assert len(c.gates()) == 3
        assert len(c) == 5
