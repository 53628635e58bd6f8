"""Coherent-state BPSK channel parameters and single-symbol detection limits.

The received pair ``|+beta>, |-beta>`` with mean photon number ``N = |beta|^2``
has overlap ``sigma = exp(-2N)``.  On the qubit side the same pair is written as
``cos(theta/2)|0> +- sin(theta/2)|1>`` with ``cos(theta) = sigma``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_CONSISTENCY_TOL = 1e-12


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ChannelParams:
    """Mean photon number, overlap and qubit angle of the induced binary channel.

    All three are stored; construction checks that they agree instead of
    silently recomputing one from another.
    """

    N: float
    sigma: float
    theta: float

    def __post_init__(self):
        if self.N < 0 or not math.isfinite(self.N):
            raise ValueError(f"N must be a finite non-negative number, got {self.N!r}")
        if not 0.0 < self.sigma <= 1.0:
            raise ValueError(f"sigma must lie in (0, 1], got {self.sigma!r}")
        if not 0.0 <= self.theta < math.pi / 2:
            raise ValueError(f"theta must lie in [0, pi/2), got {self.theta!r}")
        scale = max(self.sigma, 1e-300)
        if abs(self.sigma - math.exp(-2.0 * self.N)) > _CONSISTENCY_TOL * max(1.0, scale):
            raise ValueError("sigma is inconsistent with exp(-2N)")
        if abs(math.cos(self.theta) - self.sigma) > _CONSISTENCY_TOL:
            raise ValueError("theta is inconsistent with arccos(sigma)")

    @classmethod
    def from_mean_photon(cls, N: float) -> "ChannelParams":
        return channel_from_mean_photon(N)

    @classmethod
    def from_overlap(cls, sigma: float) -> "ChannelParams":
        sigma = _require_finite("sigma", sigma)
        if not 0.0 < sigma <= 1.0:
            raise ValueError(f"sigma must lie in (0, 1], got {sigma!r}")
        return cls(N=-0.5 * math.log(sigma), sigma=sigma, theta=math.acos(sigma))

    @classmethod
    def from_angle(cls, theta: float) -> "ChannelParams":
        theta = _require_finite("theta", theta)
        if not 0.0 <= theta < math.pi / 2:
            raise ValueError(f"theta must lie in [0, pi/2), got {theta!r}")
        sigma = math.cos(theta)
        return cls(N=-0.5 * math.log(sigma), sigma=sigma, theta=theta)


def channel_from_mean_photon(N: float) -> ChannelParams:
    """Channel parameters for received mean photon number ``N >= 0``."""
    N = _require_finite("N", N)
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N!r}")
    sigma = math.exp(-2.0 * N)
    return ChannelParams(N=N, sigma=sigma, theta=math.acos(sigma))


def helstrom_binary_error(sigma: float) -> float:
    """Minimum error for two equiprobable pure states with overlap ``sigma``."""
    sigma = _require_finite("sigma", sigma)
    if not 0.0 <= sigma <= 1.0:
        raise ValueError(f"sigma must lie in [0, 1], got {sigma!r}")
    return 0.5 * (1.0 - math.sqrt((1.0 - sigma) * (1.0 + sigma)))


def homodyne_error(theta: float) -> float:
    """Symbol error of homodyne detection, ``erfc(sqrt(-ln cos theta)) / 2``.

    ``math.erfc`` is accurate to a few ulp over the whole real line, well inside
    the 1e-12 absolute budget.
    """
    theta = _require_finite("theta", theta)
    if not 0.0 < theta < math.pi / 2:
        raise ValueError(f"theta must lie in the open interval (0, pi/2), got {theta!r}")
    return 0.5 * math.erfc(math.sqrt(-math.log(math.cos(theta))))


def binary_entropy(p: float) -> float:
    """Shannon entropy of a Bernoulli(p) variable, in bits."""
    p = _require_finite("p", p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def _check_density(name: str, rho: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise ValueError(f"{name} is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise ValueError(f"{name} does not have unit trace")
    return rho


def trace_norm_binary_helstrom(rho0, rho1, p0: float = 0.5) -> float:
    """Helstrom error ``(1 - ||p0 rho0 - (1-p0) rho1||_1) / 2`` for two density operators."""
    rho0 = _check_density("rho0", rho0)
    rho1 = _check_density("rho1", rho1)
    if rho0.shape != rho1.shape:
        raise ValueError("rho0 and rho1 must have the same dimension")
    p0 = _require_finite("p0", p0)
    if not 0.0 <= p0 <= 1.0:
        raise ValueError(f"p0 must lie in [0, 1], got {p0!r}")
    gamma = p0 * rho0 - (1.0 - p0) * rho1
    gamma = 0.5 * (gamma + gamma.conj().T)
    norm = float(np.sum(np.abs(np.linalg.eigvalsh(gamma))))
    return 0.5 * (1.0 - norm)
