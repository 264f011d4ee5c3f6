"""Flat key-value run configuration (diff-friendly, no nesting)."""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

_KEYMAP = {
    "rng.seed": ("seed", int),
    "sim.ticks": ("ticks", int),
    "sim.engine": ("engine", str),
    "sim.walkers": ("walkers", int),
    "verify.alpha": ("alpha", float),
    "cache.capacity": ("cache_capacity", int),
    "gen.rejection_budget": ("rejection_budget", int),
}


@dataclass
class RunConfig:
    seed: int = 0
    ticks: int = 1000
    engine: str = "auto"
    walkers: int = 2
    alpha: float = 0.001
    cache_capacity: int = 4096
    rejection_budget: int = 10**5

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.ticks < 0 or self.walkers < 1:
            raise ValueError("ticks must be >= 0 and walkers >= 1")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must be in (0, 1)")
        if self.cache_capacity < 1 or self.rejection_budget < 1:
            raise ValueError("capacities must be positive")

    def to_text(self) -> str:
        rev = {attr: key for key, (attr, _) in _KEYMAP.items()}
        lines = [f"{rev[f.name]} = {getattr(self, f.name)}" for f in fields(self)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RunConfig":
        kwargs = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad config line {lineno}: {raw!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in _KEYMAP:
                raise ValueError(f"unknown config key {key!r} at line {lineno}")
            attr, conv = _KEYMAP[key]
            kwargs[attr] = conv(value.strip())
        return cls(**kwargs)

    def save(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path) -> "RunConfig":
        return cls.from_text(Path(path).read_text())
