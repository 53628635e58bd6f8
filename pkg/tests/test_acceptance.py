"""The ten acceptance criteria, each reported as one PASS/FAIL line."""
import math

import numpy as np
import pytest

from bpqm_jdr import capacity, receiver, transduction
from bpqm_jdr.channel import channel_from_mean_photon, helstrom_binary_error
from bpqm_jdr.circuit import build_first_bit_circuit, build_full_circuit, emit_qasm
from bpqm_jdr.simulator import NoiseModel, run_exact, sample
from bpqm_jdr.tree_code import classical_bound
from conftest import ACCEPTANCE_LINES, N_GRID

N01 = 0.01
BETA_GRID = np.linspace(0.02, 1.0, 50)
WORDS = [(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)]


def report(number: int, title: str, checks: list[tuple[str, bool]]):
    failed = [name for name, ok in checks if not ok]
    line = f"criterion {number}: {'PASS' if not failed else 'FAIL'} {title}"
    if failed:
        line += " (failed: " + ", ".join(failed) + ")"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert not failed, line


def test_criterion_1_first_bit_triple_agreement():
    checks = []
    for N in N_GRID:
        gate = receiver.first_bit_error(N)
        closed = receiver.first_bit_closed_form(N)
        oracle = receiver.bitwise_helstrom_oracle(N, 1)
        checks.append((f"N={N:.4g}", abs(gate - closed) <= 1e-9 and abs(gate - oracle) <= 1e-9))
    checks.append(("value at N=0.01", abs(receiver.first_bit_error(N01) - 0.392655) <= 1e-5))
    report(1, "first-bit gate level = closed form = 8x8 oracle", checks)


def test_criterion_2_full_decoder_oracle_equality():
    checks = [
        (f"N={N:.4g}", abs(receiver.block_error(N) - receiver.staged_oracle_block_error(N)) <= 1e-9)
        for N in N_GRID
    ]
    report(2, "full decoder gate level = staged oracle", checks)


def test_criterion_3_quantum_advantage_ordering():
    checks = []
    for N in N_GRID:
        srm = receiver.srm_block_limit(N)
        bpqm = receiver.block_error(N)
        hel = classical_bound(N, "helstrom")
        hom = classical_bound(N, "homodyne")
        checks.append((f"N={N:.4g}", srm <= bpqm + 1e-12 and bpqm <= hel and hel <= hom))
    checks.append(("srm at N=0.01", abs(receiver.srm_block_limit(N01) - 0.588984) <= 1e-4))
    checks.append(("classical at N=0.01", abs(classical_bound(N01, "helstrom") - 0.641190) <= 1e-4))
    sym = helstrom_binary_error(channel_from_mean_photon(N01).sigma)
    checks.append(("first bit beats symbol Helstrom", receiver.first_bit_error(N01) < sym))
    checks.append(("symbol Helstrom value", abs(sym - 0.400992) <= 1e-5))
    report(3, "srm <= bpqm <= Helstrom+ML <= homodyne+ML", checks)


def test_criterion_4_transduction_optimum():
    checks = []
    for beta in (0.05, 0.1, 0.5, 1.0):
        phi, _ = transduction.optimize_phi(beta, 0)
        checks.append((f"beta={beta}", abs(phi - math.pi / 2) <= 1e-6))
    _, err = transduction.optimize_phi(1.0, 0)
    checks.append(("error at beta=1", abs(err - 0.264241) <= 1e-6))
    report(4, "optimal pulse area is pi/2", checks)


def test_criterion_5_transduction_curve_ordering():
    checks = []
    for beta in BETA_GRID:
        hel = helstrom_binary_error(math.exp(-2 * beta * beta))
        opt = transduction.optimize_phi(beta, 0)[1]
        ipp = transduction.overall_error_n0(beta, transduction.phi_inner_product_preserving(beta))
        phi = math.pi / 2
        pnr = [transduction.pnr_receiver_error(beta, phi, k) for k in range(6)]
        ok = hel <= opt + 1e-12 and opt <= ipp + 1e-12
        ok = ok and all(b <= a + 1e-15 for a, b in zip(pnr, pnr[1:]))
        checks.append((f"beta={beta:.3f}", ok))
    report(5, "Helstrom <= optimal <= ipp and truncation monotone", checks)


def _noisy_block(N, noise):
    return receiver.evaluate(N, "block", "noisy", noise).error


def test_criterion_6_noise_model():
    checks = []
    grid = N_GRID
    p2s = (0.0, 2.5e-3, 5e-3, 1e-2)
    for N in grid:
        exact = receiver.block_error(N)
        errs = [_noisy_block(N, NoiseModel(1e-4, p2, 0.0)) for p2 in p2s]
        hw = _noisy_block(N, NoiseModel(1e-4, 5e-3, 0.0))
        zero = receiver.evaluate(N, "block", "noisy", NoiseModel()).error
        ok = hw > exact and all(b > a for a, b in zip(errs, errs[1:])) and abs(zero - exact) <= 1e-12
        checks.append((f"N={N:.4g}", ok))
    report(6, "noise raises the error, monotone in p2, zero noise exact", checks)


def test_criterion_7_link_budget():
    rows = {r["link"]: r for r in capacity.link_budget_table()}
    checks = [
        ("mars uplink N", 0.005 <= rows["mars_uplink"]["N"] <= 0.02),
        ("moon uplink N", abs(rows["moon_uplink"]["N"] - 2.1) <= 0.2 * 2.1),
        ("mars uplink ratio", 3.5 <= rows["mars_uplink"]["ratio_homodyne"] <= 6.0),
    ]
    report(7, "link budget operating points", checks)


def test_criterion_8_srm_optimality_witness():
    checks = []
    for sigma in np.linspace(0.0, 0.98, 10):
        cert = receiver.srm_certificate(float(sigma))
        checks.append((f"sigma={sigma:.3f}", cert.min_witness_eigenvalue >= -1e-10))
    checks.append(("sigma=0", receiver.srm_error_from_overlap(0.0) == 0.0))
    checks.append(("sigma=1", receiver.srm_error_from_overlap(1.0) == 0.75))
    report(8, "square-root measurement optimality", checks)


def test_criterion_9_sampling_statistics():
    theta = channel_from_mean_photon(N01).theta
    circuit = build_first_bit_circuit(theta)
    shots = 100_000
    checks = []
    for i, bits in enumerate(WORDS):
        init = [receiver.symbol_state(theta, b) for b in bits]
        exact = run_exact(circuit, init).distribution()
        counts = sample(circuit, init, shots, 1000 + i)
        for record, p in exact.items():
            sd = math.sqrt(shots * p * (1 - p))
            checks.append((f"{bits} {record}", abs(counts.get(record, 0) - shots * p) <= 4 * sd))
        checks.append((f"{bits} reproducible", sample(circuit, init, shots, 1000 + i) == counts))
    report(9, "sampled frequencies within 4 sd, seeded runs identical", checks)


def test_criterion_10_circuit_artifacts():
    theta = channel_from_mean_photon(N01).theta
    first = build_first_bit_circuit(theta)
    full = build_full_circuit(theta)
    checks = [
        ("first bit <= 6 two-qubit gates", first.two_qubit_count <= 6),
        # reported alongside the 81 used by the reference hardware decoder
        ("full decoder count reported", full.two_qubit_count > 0),
        ("first-bit emission deterministic", emit_qasm(first).encode() == emit_qasm(build_first_bit_circuit(theta)).encode()),
        ("full emission deterministic", emit_qasm(full).encode() == emit_qasm(build_full_circuit(theta)).encode()),
    ]
    print(f"full decoder two-qubit gates: {full.two_qubit_count} (reference hardware decoder: 81)")
    report(10, "circuit gate counts and deterministic emission", checks)
