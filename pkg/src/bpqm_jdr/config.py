"""Run configuration shared by the CLI commands, stored as INI text."""
from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, fields, replace

import numpy as np

from .capacity import BUILTIN_LINKS, LinkSpec
from .simulator import NoiseModel

DEFAULT_SEED = 0xC0DE
SECTION = "run"
LINK_PREFIX = "link."


@dataclass(frozen=True)
class SweepConfig:
    command: str = "sweep-decoder"
    n_min: float = 1e-3
    n_max: float = 1.0
    points: int = 30
    log: bool = True
    mode: str = "exact"
    p1: float = 1e-4
    p2: float = 5e-3
    prep_fail: float = 1e-6
    shots: int = 1000
    seed: int = DEFAULT_SEED
    out: str = "-"
    jobs: int = 1
    kind: str = "first_bit"
    n: float = 0.01
    style: str = "multiplexed"
    links: tuple[LinkSpec, ...] = BUILTIN_LINKS

    def __post_init__(self):
        if not 0 < self.n_min < self.n_max:
            raise ValueError(f"grid needs 0 < n_min < n_max, got {self.n_min!r}, {self.n_max!r}")
        if self.points < 2:
            raise ValueError(f"points must be >= 2, got {self.points!r}")
        if self.mode not in ("exact", "noisy", "sampled"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.shots < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots!r}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs!r}")
        if self.n <= 0:
            raise ValueError(f"n must be positive, got {self.n!r}")
        self.noise  # validates the probabilities

    @property
    def noise(self) -> NoiseModel:
        return NoiseModel(self.p1, self.p2, self.prep_fail)

    def grid(self) -> np.ndarray:
        if self.log:
            return np.geomspace(self.n_min, self.n_max, self.points)
        return np.linspace(self.n_min, self.n_max, self.points)

    def updated(self, **changes) -> "SweepConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


_SCALAR_FIELDS = [f for f in fields(SweepConfig) if f.name != "links"]
_LINK_FIELDS = [f.name for f in fields(LinkSpec) if f.name != "name"]


def _parse(kind, text: str):
    if kind in (bool, "bool"):
        lowered = text.strip().lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"not a boolean: {text!r}")
    if kind in (int, "int"):
        return int(text, 0)
    if kind in (float, "float"):
        return float(text)
    return text.strip()


def dump_config(cfg: SweepConfig) -> str:
    parser = configparser.ConfigParser(interpolation=None)
    parser[SECTION] = {}
    for f in _SCALAR_FIELDS:
        value = getattr(cfg, f.name)
        parser[SECTION][f.name] = repr(value) if isinstance(value, float) else str(value)
    for spec in cfg.links:
        parser[LINK_PREFIX + spec.name] = {k: repr(float(getattr(spec, k))) for k in _LINK_FIELDS}
    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue()


def loads_config(text: str, base: SweepConfig | None = None) -> SweepConfig:
    parser = configparser.ConfigParser(interpolation=None)
    parser.read_string(text)
    values = {}
    if parser.has_section(SECTION):
        known = {f.name: f.type for f in _SCALAR_FIELDS}
        for key, raw in parser[SECTION].items():
            key = key.replace("-", "_")
            if key not in known:
                raise ValueError(f"unknown config key {key!r}")
            values[key] = _parse(known[key], raw)
    links = [
        LinkSpec(name=section[len(LINK_PREFIX):], **{k: float(parser[section][k]) for k in _LINK_FIELDS})
        for section in parser.sections()
        if section.startswith(LINK_PREFIX)
    ]
    if links:
        values["links"] = tuple(links)
    return replace(base or SweepConfig(), **values)


def load_config(path: str, base: SweepConfig | None = None) -> SweepConfig:
    with open(path, encoding="utf-8") as fh:
        return loads_config(fh.read(), base)
