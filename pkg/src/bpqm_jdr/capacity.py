"""Binary-alphabet capacities and free-space link budgets."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from . import transduction
from .channel import binary_entropy
from .tree_code import symbol_error

# CODATA 2018 exact values
PLANCK = 6.62607015e-34
SPEED_OF_LIGHT = 299792458.0

MOON_DISTANCE = 3.844e8
# Not a measured range: chosen so the Mars uplink delivers about 1e-2 photons per pulse.
MARS_DISTANCE = 5.57e10


@dataclass(frozen=True)
class LinkSpec:
    name: str
    wavelength: float
    tx_diameter: float
    rx_diameter: float
    distance: float
    power: float
    pulse_width: float

    def __post_init__(self):
        for key in ("wavelength", "tx_diameter", "rx_diameter", "distance", "pulse_width"):
            value = getattr(self, key)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{key} must be positive and finite, got {value!r}")
        if not (self.power >= 0 and math.isfinite(self.power)):
            raise ValueError(f"power must be non-negative, got {self.power!r}")

    def as_dict(self) -> dict:
        return asdict(self)


def _link(name, distance, tx, rx, power, pulse) -> LinkSpec:
    return LinkSpec(name, 1.6e-6, tx, rx, distance, power, pulse)


# Uplink: 0.4 m ground telescope to 0.1 m remote one at 10 W; downlink the reverse at 0.5 W.
BUILTIN_LINKS = (
    _link("moon_uplink", MOON_DISTANCE, 0.4, 0.1, 10.0, 10e-12),
    _link("moon_downlink", MOON_DISTANCE, 0.1, 0.4, 0.5, 10e-12),
    _link("mars_uplink", MARS_DISTANCE, 0.4, 0.1, 10.0, 1e-9),
    _link("mars_downlink", MARS_DISTANCE, 0.1, 0.4, 0.5, 1e-9),
)


def _check_N(N: float, allow_zero: bool = True) -> float:
    N = float(N)
    if N < 0 or (N == 0 and not allow_zero) or math.isnan(N):
        raise ValueError(f"N must be {'non-negative' if allow_zero else 'positive'}, got {N!r}")
    return N


def holevo_bpsk(N: float) -> float:
    """Holevo information of the equiprobable BPSK alphabet, bits per symbol."""
    N = _check_N(N)
    return binary_entropy(0.5 * (1.0 + math.exp(-2.0 * N)))


def achievable_rate(N: float) -> float:
    """Holevo rate discounted by the n=0 herald probability of transduction."""
    N = _check_N(N)
    return transduction.herald_prob_ipp(math.sqrt(N)) * holevo_bpsk(N)


def c1_rate(N: float, detector: str = "helstrom") -> float:
    """Capacity of the binary symmetric channel left by symbol-by-symbol detection."""
    N = _check_N(N, allow_zero=False)
    return 1.0 - binary_entropy(symbol_error(N, detector))


def link_transmissivity(spec: LinkSpec) -> float:
    """Diffraction-limited aperture-to-aperture coupling, capped at 1."""
    eta = (math.pi * spec.tx_diameter * spec.rx_diameter / (4.0 * spec.wavelength * spec.distance)) ** 2
    return min(1.0, eta)


def received_mean_photons(spec: LinkSpec) -> float:
    photon_energy = PLANCK * SPEED_OF_LIGHT / spec.wavelength
    return link_transmissivity(spec) * spec.power * spec.pulse_width / photon_energy


def link_row(spec: LinkSpec) -> dict:
    N = received_mean_photons(spec)
    rate = achievable_rate(N)
    c1_h = c1_rate(N, "helstrom") if N > 0 else 0.0
    c1_d = c1_rate(N, "homodyne") if N > 0 else 0.0
    return {
        "link": spec.name,
        "eta": link_transmissivity(spec),
        "N": N,
        "holevo": holevo_bpsk(N),
        "achievable_rate": rate,
        "c1_helstrom": c1_h,
        "c1_homodyne": c1_d,
        "ratio_homodyne": rate / c1_d if c1_d > 0 else math.inf,
        "ratio_helstrom": rate / c1_h if c1_h > 0 else math.inf,
    }


def link_budget_table(links=BUILTIN_LINKS) -> list[dict]:
    return [link_row(spec) for spec in links]
