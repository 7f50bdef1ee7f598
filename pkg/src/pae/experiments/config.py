"""Sweep configuration: a flat ``key = value`` file read with configparser."""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, fields
from pathlib import Path

OBSERVABLE_CHOICES = ("triangles", "tau", "clique_lb", "clique_exact")


@dataclass
class SweepConfig:
    p_values: list[float]
    t_grid: list[int]
    replicas: int = 1
    master_seed: int = 0
    observables: list[str] = field(default_factory=lambda: ["triangles", "tau", "clique_lb"])
    clique_pool_k: int = 200
    snapshot_times: list[int] = field(default_factory=list)
    output_dir: str = "pae-out"
    workers: int = 1

    def __post_init__(self):
        if not self.p_values or any(not 0.0 <= p <= 1.0 for p in self.p_values):
            raise ValueError(f"p_values must be a nonempty list in [0, 1], got {self.p_values}")
        if not self.t_grid or any(t < 1 for t in self.t_grid):
            raise ValueError(f"t_grid must be a nonempty list of positive integers, got {self.t_grid}")
        if any(b <= a for a, b in zip(self.t_grid, self.t_grid[1:])):
            raise ValueError(f"t_grid must be strictly increasing, got {self.t_grid}")
        if self.replicas < 1:
            raise ValueError(f"replicas must be >= 1, got {self.replicas}")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be an unsigned 64-bit integer")
        unknown = set(self.observables) - set(OBSERVABLE_CHOICES)
        if unknown:
            raise ValueError(f"unknown observables {sorted(unknown)}; choose from {OBSERVABLE_CHOICES}")
        if self.clique_pool_k < 1:
            raise ValueError("clique_pool_k must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    @property
    def records_path(self) -> Path:
        return Path(self.output_dir) / "records.csv"


def _list(raw: str, conv) -> list:
    return [conv(x) for x in raw.replace(",", " ").split()]


_PARSERS = {
    "p_values": lambda s: _list(s, float),
    "t_grid": lambda s: _list(s, lambda x: int(float(x))),
    "replicas": int,
    "master_seed": int,
    "observables": lambda s: _list(s, str),
    "clique_pool_k": int,
    "snapshot_times": lambda s: _list(s, lambda x: int(float(x))),
    "output_dir": str.strip,
    "workers": int,
}
assert set(_PARSERS) == {f.name for f in fields(SweepConfig)}


def parse_config(text: str) -> SweepConfig:
    """Parse ``key = value`` lines; lists are comma or space separated."""
    cp = configparser.ConfigParser(interpolation=None, delimiters=("=", ":"))
    cp.optionxform = str
    body = text if text.lstrip().startswith("[") else "[sweep]\n" + text
    cp.read_string(body)
    values: dict[str, str] = {}
    for section in cp.sections():
        values.update(cp[section])
    unknown = set(values) - set(_PARSERS)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    for required in ("p_values", "t_grid"):
        if required not in values:
            raise ValueError(f"missing required config key {required!r}")
    return SweepConfig(**{k: _PARSERS[k](v) for k, v in values.items()})


def load_config(path) -> SweepConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))
