"""Quantum decoding of a 3-bit tree code over pure-loss channels, with ion transduction and link budgets."""
from .capacity import LinkSpec, achievable_rate, c1_rate, holevo_bpsk, link_budget_table, received_mean_photons
from .channel import ChannelParams, binary_entropy, channel_from_mean_photon, helstrom_binary_error, homodyne_error
from .errors import ConsistencyError, DegenerateInputError, DegenerateOutcomeError, EmissionError
from .receiver import (
    DecodeResult,
    block_error,
    bitwise_helstrom_oracle,
    evaluate,
    first_bit_error,
    jdr_error,
    srm_block_limit,
    staged_oracle_block_error,
)
from .simulator import NoiseModel
from .tree_code import classical_bound, codebook

__version__ = "0.1.0"

__all__ = [
    "ChannelParams",
    "ConsistencyError",
    "DecodeResult",
    "DegenerateInputError",
    "DegenerateOutcomeError",
    "EmissionError",
    "LinkSpec",
    "NoiseModel",
    "achievable_rate",
    "binary_entropy",
    "bitwise_helstrom_oracle",
    "block_error",
    "c1_rate",
    "channel_from_mean_photon",
    "classical_bound",
    "codebook",
    "evaluate",
    "first_bit_error",
    "helstrom_binary_error",
    "holevo_bpsk",
    "homodyne_error",
    "jdr_error",
    "link_budget_table",
    "received_mean_photons",
    "srm_block_limit",
    "staged_oracle_block_error",
]
