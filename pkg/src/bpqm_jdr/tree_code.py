"""The 3-bit single-parity-check tree code and hard-decision ML baselines."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import channel

_TIE_RTOL = 1e-12


@dataclass(frozen=True)
class Codeword:
    bits: tuple[int, int, int]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if len(bits) != 3 or any(b not in (0, 1) for b in bits):
            raise ValueError(f"codeword needs three bits, got {self.bits!r}")
        if bits[0] ^ bits[1] ^ bits[2]:
            raise ValueError(f"{bits} violates the parity check x1^x2^x3 = 0")
        object.__setattr__(self, "bits", bits)

    def __str__(self):
        return "".join(map(str, self.bits))

    def signs(self) -> tuple[int, int, int]:
        """BPSK signs (-1)^x_i."""
        return tuple(1 - 2 * b for b in self.bits)


@dataclass(frozen=True)
class Codebook:
    words: tuple[Codeword, ...]

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)

    def __contains__(self, bits) -> bool:
        bits = tuple(bits.bits) if isinstance(bits, Codeword) else tuple(bits)
        return any(w.bits == bits for w in self.words)


_CODEBOOK = Codebook(tuple(Codeword(b) for b in ((0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1))))


def codebook() -> Codebook:
    """Codewords 000, 110, 101, 011 in that order."""
    return _CODEBOOK


def _hamming(a, b) -> int:
    return sum(x != y for x, y in zip(a, b))


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 0.5:
        raise ValueError(f"symbol error probability must lie in [0, 0.5], got {p!r}")
    return p


def _pattern_probability(sent, received, p: float) -> float:
    d = _hamming(sent, received)
    return p**d * (1.0 - p) ** (3 - d)


def ml_block_error_bsc(p: float) -> float:
    """Block error of minimum-distance decoding after i.i.d. bit flips.

    Every (codeword, received word) pair is enumerated; ties between nearest
    codewords are split uniformly and credited fractionally.
    """
    p = _check_p(p)
    words = [w.bits for w in codebook()]
    success = 0.0
    for sent in words:
        for received in itertools.product((0, 1), repeat=3):
            dists = [_hamming(w, received) for w in words]
            nearest = [w for w, d in zip(words, dists) if d == min(dists)]
            if sent in nearest:
                success += 0.25 * _pattern_probability(sent, received, p) / len(nearest)
    return 1.0 - success


def ml_first_bit_error_bsc(p: float) -> float:
    """First-bit error of bitwise-MAP decoding after i.i.d. bit flips.

    On a tree factor graph this is what classical belief propagation computes.
    """
    p = _check_p(p)
    words = [w.bits for w in codebook()]
    success = 0.0
    for sent in words:
        for received in itertools.product((0, 1), repeat=3):
            posterior = [0.0, 0.0]
            for w in words:
                posterior[w[0]] += _pattern_probability(w, received, p)
            if math.isclose(posterior[0], posterior[1], rel_tol=_TIE_RTOL, abs_tol=0.0):
                credit = 0.5
            else:
                credit = 1.0 if posterior[sent[0]] > posterior[1 - sent[0]] else 0.0
            success += 0.25 * _pattern_probability(sent, received, p) * credit
    return 1.0 - success


def symbol_error(N: float, detector: str) -> float:
    params = channel.channel_from_mean_photon(N)
    if detector == "helstrom":
        return channel.helstrom_binary_error(params.sigma)
    if detector == "homodyne":
        return channel.homodyne_error(params.theta)
    raise ValueError(f"unknown detector {detector!r}; expected 'helstrom' or 'homodyne'")


def classical_bound(N: float, detector: str = "helstrom", target: str = "block") -> float:
    """Symbol-by-symbol detection followed by classical ML decoding."""
    if not N > 0:
        raise ValueError(f"N must be positive, got {N!r}")
    p = symbol_error(N, detector)
    if target == "block":
        return ml_block_error_bsc(p)
    if target == "first_bit":
        return ml_first_bit_error_bsc(p)
    raise ValueError(f"unknown target {target!r}; expected 'block' or 'first_bit'")
