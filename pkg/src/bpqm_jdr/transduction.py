"""Jaynes-Cummings photon-to-ion transduction with photon-number heralding.

A coherent pulse ``|+-beta>`` interacts with a ground-state ion for a pulse area
``phi`` (the time integral of the coupling; the coupling profile itself never
enters).  Counting ``n`` photons afterwards heralds the ion in

    cos(sqrt(n) phi) b_n |0>  -  i sin(sqrt(n+1) phi) b_{n+1} |1>     (normalized)

where ``b_n = exp(-beta^2/2) (+-beta)^n / sqrt(n!)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateOutcomeError

# Relative size below which a herald probability is treated as exactly zero.
_DEGENERATE_P = 1e-300

_GRID_POINTS = 1000
_REFINE_STEPS = 40
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class DegenerateLimitWarning(UserWarning):
    """A formula was evaluated at its removable singularity and the limit returned."""


@dataclass(frozen=True)
class TransductionConfig:
    beta: float
    phi: float
    n_trunc: int = 0

    def __post_init__(self):
        _check_beta(self.beta)
        _check_phi(self.phi)
        if int(self.n_trunc) != self.n_trunc or self.n_trunc < 0:
            raise ValueError(f"n_trunc must be a non-negative integer, got {self.n_trunc!r}")


@dataclass(frozen=True)
class HeraldedOutcome:
    """Photon count ``n``, its probability and the two heralded ion states."""

    n: int
    p_n: float
    sigma_n: float
    state_plus: np.ndarray
    state_minus: np.ndarray

    def overlap(self) -> complex:
        """Amplitude inner product <state_minus|state_plus>."""
        return complex(np.vdot(self.state_minus, self.state_plus))

    def real_convention(self) -> tuple[np.ndarray, np.ndarray]:
        """States after the fixed phase gate diag(1, i).

        This removes the ``-i`` on ``|1>`` so the pair takes the real form
        ``a|0> +- b|1>`` expected by the decoder circuits.
        """
        s = np.array([1.0, 1.0j])
        return s * self.state_plus, s * self.state_minus


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not math.isfinite(beta) or beta < 0:
        raise ValueError(f"beta must be finite and non-negative, got {beta!r}")
    return beta


def _check_phi(phi: float) -> float:
    phi = float(phi)
    if not 0.0 <= phi <= math.pi:
        raise ValueError(f"phi must lie in [0, pi], got {phi!r}")
    return phi


def _check_n(n: int) -> int:
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    return int(n)


def _log_abs_coefficient(beta: float, n: int) -> float:
    """log |b_n|; -inf when the coefficient vanishes."""
    if beta == 0.0:
        return 0.0 if n == 0 else -math.inf
    return -0.5 * beta * beta + n * math.log(beta) - 0.5 * math.lgamma(n + 1)


def fock_coefficient(beta: float, n: int, sign: int = 1) -> float:
    """Fock amplitude ``exp(-beta^2/2) (sign*beta)^n / sqrt(n!)`` of a coherent state."""
    beta = _check_beta(beta)
    n = _check_n(n)
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    magnitude = math.exp(_log_abs_coefficient(beta, n))
    return magnitude if (sign == 1 or n % 2 == 0) else -magnitude


def _branch_weights(beta: float, phi: float, n: int) -> tuple[float, float]:
    """Unnormalized populations of |0> and |1> heralded by n photons."""
    c = math.cos(math.sqrt(n) * phi)
    s = math.sin(math.sqrt(n + 1) * phi)
    w0 = c * c * math.exp(2.0 * _log_abs_coefficient(beta, n))
    w1 = s * s * math.exp(2.0 * _log_abs_coefficient(beta, n + 1))
    return w0, w1


def herald_probability(beta: float, phi: float, n: int) -> float:
    """Probability of counting ``n`` photons (identical for both signs)."""
    w0, w1 = _branch_weights(_check_beta(beta), _check_phi(phi), _check_n(n))
    return w0 + w1


def sigma_closed_form(beta: float, phi: float, n: int) -> float:
    """Inner product of the two n-photon heralded states.

    Written as the ratio ``(cos^2 - r sin^2) / (cos^2 + r sin^2)`` with
    ``r = beta^2/(n+1)``.  The amplitude inner product equals this value times
    ``(-1)^n``.
    """
    c2 = math.cos(math.sqrt(n) * phi) ** 2
    s2 = math.sin(math.sqrt(n + 1) * phi) ** 2 * beta * beta / (n + 1)
    denom = c2 + s2
    if denom == 0.0:
        raise DegenerateOutcomeError(f"outcome n={n} has zero probability at beta={beta}, phi={phi}")
    return (c2 - s2) / denom


def heralded_outcome(beta: float, phi: float, n: int) -> HeraldedOutcome:
    beta = _check_beta(beta)
    phi = _check_phi(phi)
    n = _check_n(n)
    p_n = herald_probability(beta, phi, n)
    if p_n <= _DEGENERATE_P:
        raise DegenerateOutcomeError(f"outcome n={n} has zero probability at beta={beta}, phi={phi}")
    states = []
    for sign in (1, -1):
        a0 = math.cos(math.sqrt(n) * phi) * fock_coefficient(beta, n, sign)
        a1 = -1j * math.sin(math.sqrt(n + 1) * phi) * fock_coefficient(beta, n + 1, sign)
        vec = np.array([a0, a1], dtype=complex)
        states.append(vec / np.linalg.norm(vec))
    return HeraldedOutcome(
        n=n,
        p_n=p_n,
        sigma_n=sigma_closed_form(beta, phi, n),
        state_plus=states[0],
        state_minus=states[1],
    )


def phi_inner_product_preserving(beta: float) -> float:
    """Pulse area whose n=0 herald keeps the optical overlap ``exp(-2 beta^2)``.

    At ``beta == 0`` the expression is 0/0; the limit pi/2 is returned together
    with a :class:`DegenerateLimitWarning`.
    """
    beta = _check_beta(beta)
    if beta == 0.0:
        warnings.warn("beta=0: returning the limiting pulse area pi/2", DegenerateLimitWarning, stacklevel=2)
        return math.pi / 2
    x = beta * beta
    s = math.sqrt(math.tanh(x) / x)
    if s > 1.0 + 1e-12:
        raise ArithmeticError(f"sin(phi) = {s} exceeds 1")
    return math.asin(min(s, 1.0))


def herald_prob_ipp(beta: float) -> float:
    """n=0 herald probability under the inner-product-preserving pulse area."""
    beta = _check_beta(beta)
    x = beta * beta
    return math.exp(-x) * (1.0 + math.tanh(x))


def overall_error_n0(beta: float, phi: float) -> float:
    """Average error when only n=0 is accepted and other counts are declared errors."""
    beta = _check_beta(beta)
    phi = _check_phi(phi)
    x = math.sin(phi) ** 2 * beta * beta
    p0 = math.exp(-beta * beta) * (1.0 + x)
    # sqrt(1 - sigma0^2) with sigma0 = (1-x)/(1+x), written without cancellation
    return 1.0 - 0.5 * p0 * (1.0 + 2.0 * math.sqrt(x) / (1.0 + x))


def optimal_phi_bound(beta: float) -> tuple[float, float]:
    """Optimal pulse area (pi/2, independent of beta) and the resulting error."""
    beta = _check_beta(beta)
    return math.pi / 2, 1.0 - 0.5 * math.exp(-beta * beta) * (1.0 + beta) ** 2


def sigma_at_half_pi(beta: float) -> float:
    """Overlap of the n=0 heralded states at phi = pi/2."""
    beta = _check_beta(beta)
    return (1.0 - beta * beta) / (1.0 + beta * beta)


def pnr_receiver_error(beta: float, phi: float, n_trunc: int) -> float:
    """Error with photon-number-resolved heralds ``n = 0..n_trunc``.

    Each resolved outcome is followed by a Helstrom measurement on the ion;
    counts above ``n_trunc`` contribute no success.
    """
    beta = _check_beta(beta)
    phi = _check_phi(phi)
    n_trunc = _check_n(n_trunc)
    success = 0.0
    for n in range(n_trunc + 1):
        w0, w1 = _branch_weights(beta, phi, n)
        p_n = w0 + w1
        if p_n <= _DEGENERATE_P:
            continue
        # 1 - sigma_n^2 = 4 w0 w1 / p_n^2
        success += 0.5 * (p_n + 2.0 * math.sqrt(w0 * w1))
    return 1.0 - success


def _golden_refine(f, lo: float, hi: float, steps: int) -> float:
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(steps):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def optimize_phi(beta: float, n_trunc: int = 0) -> tuple[float, float]:
    """Minimize :func:`pnr_receiver_error` over ``phi in [0, pi]``.

    Deterministic: a 1000-point grid locates the best cell, then 40
    golden-section steps refine inside the neighbouring cells.
    """
    beta = _check_beta(beta)
    if beta == 0.0:
        raise ValueError("beta must be positive")
    n_trunc = _check_n(n_trunc)

    def f(phi):
        return pnr_receiver_error(beta, phi, n_trunc)

    grid = np.linspace(0.0, math.pi, _GRID_POINTS)
    values = [f(p) for p in grid]
    k = int(np.argmin(values))
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, _GRID_POINTS - 1)]
    phi = _golden_refine(f, lo, hi, _REFINE_STEPS)
    best = f(phi)
    if values[k] < best:
        phi, best = float(grid[k]), values[k]
    return phi, best
