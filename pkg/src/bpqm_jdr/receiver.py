"""End-to-end decoder evaluation, exact optimality oracles and the heralded composition.

Every error here is averaged over the four codewords with equal priors.  The
gate-level numbers come from :mod:`bpqm_jdr.simulator`; the oracles are built
from plain linear algebra on the codeword states and share no code with the
circuit builders.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import transduction
from .channel import channel_from_mean_photon, trace_norm_binary_helstrom
from .circuit.builders import build_first_bit_circuit, build_full_circuit, full_decisions
from .circuit.ustar import branch_angles, u_star_matrix
from .simulator import NoiseModel, run_density, run_exact, sample
from .tree_code import codebook

MODES = ("exact", "noisy", "sampled")
TARGETS = ("first_bit", "block")
WITNESS_TOL = 1e-10

_PLUS = np.array([1.0, 1.0]) / math.sqrt(2.0)
_MINUS = np.array([1.0, -1.0]) / math.sqrt(2.0)


class OptimalityWarning(UserWarning):
    """The square-root measurement failed the numerical optimality check."""


@dataclass
class DecodeResult:
    N: float
    mode: str
    target: str
    error: float
    per_codeword: dict[tuple[int, int, int], float]
    shots: int | None = None
    seed: int | None = None
    noise: NoiseModel | None = None
    two_qubit_gates: int = 0

    @property
    def first_bit_error(self) -> float | None:
        return self.error if self.target == "first_bit" else None

    @property
    def block_error(self) -> float | None:
        return self.error if self.target == "block" else None


def _check_N(N: float) -> float:
    N = float(N)
    if not N > 0 or not math.isfinite(N):
        raise ValueError(f"N must be positive and finite, got {N!r}")
    return N


def _check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


def symbol_state(theta: float, bit: int) -> np.ndarray:
    """``|(-1)^bit theta>`` on one qubit."""
    return np.array([math.cos(theta / 2), (1 - 2 * bit) * math.sin(theta / 2)])


def codeword_states(N: float) -> dict[tuple[int, int, int], list[np.ndarray]]:
    theta = channel_from_mean_photon(_check_N(N)).theta
    return {w.bits: [symbol_state(theta, b) for b in w.bits] for w in codebook()}


def _is_wrong(target: str, record: tuple[int, ...], bits: tuple[int, int, int]) -> bool:
    if target == "first_bit":
        return record[1] != bits[0]
    return full_decisions(record) != bits


@lru_cache(maxsize=256)
def _circuit(target: str, theta: float, style: str):
    if target == "first_bit":
        return build_first_bit_circuit(theta)
    return build_full_circuit(theta, style)


def evaluate(
    N: float,
    target: str = "block",
    mode: str = "exact",
    noise: NoiseModel | None = None,
    shots: int | None = None,
    seed: int | None = None,
    style: str = "multiplexed",
) -> DecodeResult:
    """Run the decoder circuit on each codeword and average the error."""
    N = _check_N(N)
    mode = _check_mode(mode)
    if target not in TARGETS:
        raise ValueError(f"target must be one of {TARGETS}, got {target!r}")
    theta = channel_from_mean_photon(N).theta
    circuit = _circuit(target, theta, style)
    if mode == "noisy" and noise is None:
        noise = NoiseModel.hardware_default()
    if mode == "sampled":
        shots = 1000 if shots is None else int(shots)
        seed = 0 if seed is None else int(seed)
    per = {}
    for index, (bits, init) in enumerate(codeword_states(N).items()):
        if mode == "exact":
            dist = run_exact(circuit, init).distribution()
        elif mode == "noisy":
            dist = run_density(circuit, init, noise)
        else:
            counts = sample(circuit, init, shots, [seed, index], noise)
            dist = {r: c / shots for r, c in counts.items()}
        per[bits] = float(sum(p for r, p in dist.items() if _is_wrong(target, r, bits)))
    error = sum(per.values()) / len(per)
    return DecodeResult(
        N=N,
        mode=mode,
        target=target,
        error=float(min(1.0, max(0.0, error))),
        per_codeword=per,
        shots=shots if mode == "sampled" else None,
        seed=seed if mode == "sampled" else None,
        noise=noise,
        two_qubit_gates=circuit.two_qubit_count,
    )


def first_bit_error(N: float, mode: str = "exact", noise=None, shots=None, seed=None) -> float:
    return evaluate(N, "first_bit", mode, noise, shots, seed).error


def block_error(N: float, mode: str = "exact", noise=None, shots=None, seed=None, style: str = "multiplexed") -> float:
    return evaluate(N, "block", mode, noise, shots, seed, style).error


def first_bit_closed_form(N: float) -> float:
    s2 = channel_from_mean_photon(_check_N(N)).sigma ** 2
    return 0.25 * ((1.0 + s2) - math.sqrt((1.0 - s2) * (1.0 + 3.0 * s2)))


def _product(vectors) -> np.ndarray:
    out = np.ones(1)
    for v in vectors:
        out = np.kron(out, v)
    return out


def bitwise_helstrom_oracle(N: float, bit_index: int) -> float:
    """Helstrom error for one code bit, treating the other bits as unknown."""
    if bit_index not in (1, 2, 3):
        raise ValueError(f"bit_index must be 1, 2 or 3, got {bit_index!r}")
    rhos = [np.zeros((8, 8)), np.zeros((8, 8))]
    for bits, states in codeword_states(N).items():
        psi = _product(states)
        rhos[bits[bit_index - 1]] += 0.5 * np.outer(psi, psi)
    return trace_norm_binary_helstrom(rhos[0], rhos[1], 0.5)


def _check_node_branches(theta: float, bits) -> list[np.ndarray]:
    """Unnormalized qubit-2 states for check outcome m = 0, 1 after CNOT 2 -> 3."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    a, b = 1 - 2 * bits[1], 1 - 2 * bits[2]
    return [
        np.array([c * c, a * b * s * s]),
        c * s * np.array([b, a]),
    ]


def staged_oracle_block_error(N: float) -> float:
    """Block error of the decoding strategy, computed without gates.

    After the check node, the bit-node unitary for each outcome ``m`` acts
    coherently on qubits 1 and 2.  Qubit 1 is read in the X basis to give
    ``x1_hat``; the residual state of qubits 2 and 3 then carries the two
    codewords still consistent with ``x1_hat``, which are separated by a
    Helstrom measurement.
    """
    theta = channel_from_mean_photon(_check_N(N)).theta
    unitaries = [u_star_matrix(theta, t) for t in branch_angles(theta, theta)]
    projectors = [np.kron(v, np.eye(4)) for v in (_PLUS, _MINUS)]
    residual = {}
    for w in codebook():
        q1 = symbol_state(theta, w.bits[0])
        state = np.zeros(8, dtype=complex)
        for m, v in enumerate(_check_node_branches(theta, w.bits)):
            pair = unitaries[m] @ np.kron(q1, v)
            state += np.kron(pair, np.eye(2)[m])
        residual[w.bits] = [p @ state for p in projectors]
    success = 0.0
    for guess in (0, 1):
        candidates = [bits for bits in residual if bits[0] == guess]
        vecs = [residual[bits][guess] for bits in candidates]
        weights = [0.25 * float(np.vdot(v, v).real) for v in vecs]
        total = sum(weights)
        if total <= 0.0:
            continue
        rhos = []
        for v, wt in zip(vecs, weights):
            rhos.append(np.outer(v, v.conj()) / (4.0 * wt) if wt > 0 else np.eye(4) / 4)
        success += total * (1.0 - trace_norm_binary_helstrom(rhos[0], rhos[1], weights[0] / total))
    return float(1.0 - success)


def srm_error_from_overlap(sigma: float) -> float:
    """Square-root measurement error for four equiprobable codewords."""
    if not 0.0 <= sigma <= 1.0:
        raise ValueError(f"sigma must lie in [0, 1], got {sigma!r}")
    s2 = sigma * sigma
    return 1.0 - ((math.sqrt(1.0 + 3.0 * s2) + 3.0 * math.sqrt(1.0 - s2)) / 4.0) ** 2


@dataclass
class SRMCertificate:
    error: float
    numeric_error: float
    min_witness_eigenvalue: float
    optimal: bool
    povm: list[np.ndarray] = field(repr=False, default_factory=list)


def _inverse_sqrt_psd(g: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(g)
    if vals.min() <= 0:
        raise np.linalg.LinAlgError("Gram matrix is singular")
    return (vecs / np.sqrt(vals)) @ vecs.conj().T


def srm_certificate(sigma: float) -> SRMCertificate:
    """Build the square-root measurement and check the minimum-error optimality conditions.

    With ``Y = sum_i p_i Pi_i rho_i`` the measurement is optimal when
    ``Y - p_i rho_i`` is positive semidefinite for every ``i``.
    """
    if not 0.0 <= sigma < 1.0:
        raise ValueError(f"the measurement needs linearly independent states; sigma must lie in [0, 1), got {sigma!r}")
    theta = math.acos(sigma)
    psis = np.array([_product(symbol_state(theta, b) for b in w.bits) for w in codebook()]).T
    gram = psis.conj().T @ psis
    mus = psis @ _inverse_sqrt_psd(gram)
    povm = [np.outer(mus[:, i], mus[:, i].conj()) for i in range(4)]
    rhos = [np.outer(psis[:, i], psis[:, i].conj()) for i in range(4)]
    upsilon = sum(0.25 * p @ r for p, r in zip(povm, rhos))
    upsilon = 0.5 * (upsilon + upsilon.conj().T)
    min_eig = min(float(np.linalg.eigvalsh(upsilon - 0.25 * r).min()) for r in rhos)
    numeric = 1.0 - sum(0.25 * float(np.trace(p @ r).real) for p, r in zip(povm, rhos))
    return SRMCertificate(
        error=srm_error_from_overlap(sigma),
        numeric_error=numeric,
        min_witness_eigenvalue=min_eig,
        optimal=min_eig >= -WITNESS_TOL,
        povm=povm,
    )


def srm_block_limit(N: float, verify: bool = True) -> float:
    """Minimum block error over all quantum measurements on the codeword states."""
    sigma = channel_from_mean_photon(_check_N(N)).sigma
    value = srm_error_from_overlap(sigma)
    if verify and sigma < 1.0:
        cert = srm_certificate(sigma)
        if not cert.optimal:
            warnings.warn(
                f"N={N}: achievable, optimality unverified (witness eigenvalue {cert.min_witness_eigenvalue:.3e})",
                OptimalityWarning,
                stacklevel=2,
            )
    return value


def _heralded_channel(N: float, phi: str) -> tuple[float, float]:
    """(n=0 herald probability, overlap of the heralded ion states)."""
    beta = math.sqrt(N)
    if phi == "ipp":
        return transduction.herald_prob_ipp(beta), math.exp(-2.0 * N)
    if phi == "optimal":
        p0 = transduction.herald_probability(beta, math.pi / 2, 0)
        return p0, abs(transduction.sigma_at_half_pi(beta))
    raise ValueError(f"phi must be 'ipp' or 'optimal', got {phi!r}")


def jdr_error(N: float, target: str = "block", phi: str = "ipp", k: int = 3) -> float:
    """Decoder error with transduction; a failed herald on any of ``k`` symbols counts as an error.

    ``phi="ipp"`` keeps the optical overlap on the ion.  ``phi="optimal"`` uses
    pulse area pi/2, which raises the herald probability but changes the ion
    overlap to ``|1 - N| / (1 + N)``; the decoder is then evaluated at that
    overlap.
    """
    N = _check_N(N)
    if target not in TARGETS:
        raise ValueError(f"target must be one of {TARGETS}, got {target!r}")
    p0, sigma = _heralded_channel(N, phi)
    if sigma < 1e-12:
        decoder = 0.0
    else:
        n_eff = -0.5 * math.log(sigma)
        decoder = first_bit_error(n_eff) if target == "first_bit" else block_error(n_eff)
    return compose_herald(p0, decoder, k)


def compose_herald(p0: float, decoder_error: float, k: int = 3) -> float:
    """``1 - p0^k (1 - decoder_error)``."""
    if not 0.0 <= p0 <= 1.0 or not 0.0 <= decoder_error <= 1.0:
        raise ValueError("probabilities must lie in [0, 1]")
    return 1.0 - p0 ** k * (1.0 - decoder_error)
