"""Experiment configuration: one JSON file, every field optional.

Schema (defaults shown)::

    {
      "network":  {"node_count": 200, "field_size": 100.0, "initial_energy": 0.5,
                   "cluster_count": 5, "sink_position": null},
      "radio":    {"e_elec": 5e-08, "eps_fs": 1e-11, "eps_mp": 1.3e-15,
                   "e_da": 5e-09, "packet_bits": 4096},
      "wsa":      {"population_size": 30, "iterations": 50, "sigma": 1.0, "inertia": 0.5},
      "fcm":      {"fuzzifier": 2.0, "tolerance": 0.0001, "max_iterations": 100},
      "strategies": ["wsa-fcm", "fcm-only", "random"],
      "seeds": [1, 2, ..., 10],
      "round_cap": 5000,
      "recluster_every": 1,
      "checkpoints": [200, 400, 500, 600],
      "sweep": {"sizes": [200, 400, 800], "repetitions": 5},
      "out": "results"
    }

``cluster_count`` may be ``"auto"`` (round(sqrt(n)/2)); ``sink_position``
null puts the sink at the field centre.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .fcm import FcmConfig
from .metrics import DEFAULT_CHECKPOINTS
from .protocol import Strategy
from .radio import NetworkConfig, RadioParams
from .wsa import WsaConfig


@dataclass(frozen=True)
class SweepConfig:
    sizes: tuple = (200, 400, 800)
    repetitions: int = 5

    def __post_init__(self):
        sizes = tuple(self.sizes)
        if len(sizes) < 2:
            raise ConfigError("sweep.sizes", "needs at least two sizes")
        if any(not isinstance(n, int) or n < 1 for n in sizes):
            raise ConfigError("sweep.sizes", "sizes must be positive integers")
        object.__setattr__(self, "sizes", sizes)
        if not isinstance(self.repetitions, int) or self.repetitions < 5:
            raise ConfigError("sweep.repetitions", "must be an integer >= 5")


@dataclass(frozen=True)
class ExperimentSpec:
    network: NetworkConfig = field(default_factory=NetworkConfig)
    radio: RadioParams = field(default_factory=RadioParams)
    wsa: WsaConfig = field(default_factory=WsaConfig)
    fcm: FcmConfig = field(default_factory=FcmConfig)
    strategies: tuple = (Strategy.WSA_FCM, Strategy.FCM_ONLY, Strategy.RANDOM_CH)
    seeds: tuple = tuple(range(1, 11))
    round_cap: int = 5000
    recluster_every: int = 1
    checkpoints: tuple = DEFAULT_CHECKPOINTS
    sweep: SweepConfig = field(default_factory=SweepConfig)
    out: str = "results"

    def __post_init__(self):
        object.__setattr__(self, "strategies", tuple(Strategy.parse(s) for s in self.strategies))
        if not self.strategies:
            raise ConfigError("strategies", "must list at least one strategy")
        seeds = tuple(self.seeds)
        if not seeds:
            raise ConfigError("seeds", "must be non-empty")
        if any(not isinstance(s, int) or s < 0 for s in seeds):
            raise ConfigError("seeds", "seeds must be non-negative integers")
        object.__setattr__(self, "seeds", seeds)
        if not isinstance(self.round_cap, int) or self.round_cap < 1:
            raise ConfigError("round_cap", "must be an integer >= 1")
        if not isinstance(self.recluster_every, int) or self.recluster_every < 1:
            raise ConfigError("recluster_every", "must be an integer >= 1")
        object.__setattr__(self, "checkpoints", tuple(int(c) for c in self.checkpoints))

    def replace(self, **changes) -> "ExperimentSpec":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return {
            "network": dataclasses.asdict(self.network),
            "radio": dataclasses.asdict(self.radio),
            "wsa": dataclasses.asdict(self.wsa),
            "fcm": dataclasses.asdict(self.fcm),
            "strategies": [s.value for s in self.strategies],
            "seeds": list(self.seeds),
            "round_cap": self.round_cap,
            "recluster_every": self.recluster_every,
            "checkpoints": list(self.checkpoints),
            "sweep": {"sizes": list(self.sweep.sizes), "repetitions": self.sweep.repetitions},
            "out": self.out,
        }


_SECTIONS = {"network": NetworkConfig, "radio": RadioParams, "wsa": WsaConfig,
             "fcm": FcmConfig, "sweep": SweepConfig}


def _build(name, cls, values):
    if not isinstance(values, dict):
        raise ConfigError(name, "must be an object")
    known = {f.name for f in dataclasses.fields(cls)}
    for key in values:
        if key not in known:
            raise ConfigError(f"{name}.{key}", "unknown setting")
    try:
        return cls(**values)
    except ConfigError as exc:
        if "." in exc.field:
            raise
        raise ConfigError(f"{name}.{exc.field}", str(exc).split(": ", 1)[1]) from None


def spec_from_dict(data: dict) -> ExperimentSpec:
    if not isinstance(data, dict):
        raise ConfigError("config", "top level must be an object")
    known = {f.name for f in dataclasses.fields(ExperimentSpec)}
    kwargs = {}
    for key, value in data.items():
        if key not in known:
            raise ConfigError(key, "unknown setting")
        if key in _SECTIONS:
            kwargs[key] = _build(key, _SECTIONS[key], value)
        else:
            kwargs[key] = value
    return ExperimentSpec(**kwargs)


def load_spec(path) -> ExperimentSpec:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON in {path}: {exc}") from None
    return spec_from_dict(data)


def parse_seed_range(text: str) -> tuple:
    """``"1..10"`` -> (1, ..., 10); also accepts ``"3"`` and ``"1,4,7"``."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = (int(p) for p in text.split("..", 1))
            if hi < lo:
                raise ValueError
            return tuple(range(lo, hi + 1))
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ConfigError("seeds", f"cannot parse seed range {text!r}") from None


def parse_cluster_count(text: str):
    if text == "auto":
        return "auto"
    try:
        return int(text)
    except ValueError:
        raise ConfigError("cluster_count", f"expected an integer or 'auto', got {text!r}") from None
