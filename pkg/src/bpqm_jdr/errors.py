"""Exception types shared across the package."""


class DegenerateInputError(ValueError):
    """Inputs sit on a singular point of a formula (0/0, zero-probability outcome)."""


class DegenerateOutcomeError(DegenerateInputError):
    """A heralded outcome has zero probability, so its post-measurement state is undefined."""


class EmissionError(ValueError):
    """A circuit contains operations that cannot be written as OpenQASM."""


class ConsistencyError(RuntimeError):
    """An internal numerical invariant (trace, normalization) was violated."""
