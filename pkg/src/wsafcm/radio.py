"""First-order radio energy model, network configuration and node deployment."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class RadioParams:
    """Radio constants. Energies in J/bit, amplifier terms per m^2 / m^4."""

    e_elec: float = 50e-9
    eps_fs: float = 10e-12
    eps_mp: float = 0.0013e-12
    e_da: float = 5e-9
    packet_bits: int = 4096

    def __post_init__(self):
        for name in ("e_elec", "eps_fs", "eps_mp", "e_da", "packet_bits"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ConfigError(name, f"must be a finite positive number, got {value!r}")

    @property
    def d0(self) -> float:
        return threshold_distance(self)


def threshold_distance(params: RadioParams) -> float:
    """Crossover distance between the free-space and multipath regimes."""
    return math.sqrt(params.eps_fs / params.eps_mp)


def _check_non_negative(**values):
    for name, value in values.items():
        if np.any(np.asarray(value) < 0):
            raise ValueError(f"{name} must be non-negative")


def tx_energy(params: RadioParams, bits, distance):
    """Energy (J) to transmit ``bits`` over ``distance`` metres.

    Works elementwise on arrays of distances.
    """
    _check_non_negative(bits=bits, distance=distance)
    d = np.asarray(distance, dtype=float)
    return _tx_from_sq(params, bits, d * d)


def tx_energy_sq(params: RadioParams, bits, dist_sq):
    """Same as :func:`tx_energy` but takes squared distances (no sqrt needed)."""
    return _tx_from_sq(params, bits, np.asarray(dist_sq, dtype=float))


def _tx_from_sq(params, bits, d2):
    d0_sq = params.eps_fs / params.eps_mp
    amp = np.where(d2 < d0_sq, params.eps_fs * d2, params.eps_mp * d2 * d2)
    out = bits * params.e_elec + bits * amp
    return float(out) if np.ndim(out) == 0 else out


def rx_energy(params: RadioParams, bits) -> float:
    _check_non_negative(bits=bits)
    return bits * params.e_elec


def aggregation_energy(params: RadioParams, bits, signals) -> float:
    _check_non_negative(bits=bits, signals=signals)
    return bits * params.e_da * signals


def auto_cluster_count(node_count: int) -> int:
    """round(sqrt(n) / 2), rounding halves up, never below 1."""
    return max(1, math.floor(math.sqrt(node_count) / 2 + 0.5))


ClusterCount = Union[int, str]


@dataclass(frozen=True)
class NetworkConfig:
    node_count: int = 200
    field_size: float = 100.0
    initial_energy: float = 0.5
    cluster_count: ClusterCount = 5
    sink_position: tuple | None = None

    def __post_init__(self):
        if not isinstance(self.node_count, int) or isinstance(self.node_count, bool) or self.node_count < 1:
            raise ConfigError("node_count", f"must be an integer >= 1, got {self.node_count!r}")
        if not self.field_size > 0:
            raise ConfigError("field_size", "must be positive")
        if not self.initial_energy > 0:
            raise ConfigError("initial_energy", "must be positive")
        k = self.cluster_count
        if isinstance(k, str):
            if k != "auto":
                raise ConfigError("cluster_count", f"must be a positive integer or 'auto', got {k!r}")
        elif not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise ConfigError("cluster_count", f"must be a positive integer or 'auto', got {k!r}")
        elif k > self.node_count:
            raise ConfigError("cluster_count", f"{k} exceeds node_count {self.node_count}")
        if self.sink_position is None:
            half = self.field_size / 2
            object.__setattr__(self, "sink_position", (half, half))
        else:
            sink = tuple(float(c) for c in self.sink_position)
            if len(sink) != 2:
                raise ConfigError("sink_position", "must be a 2-D point")
            object.__setattr__(self, "sink_position", sink)

    @property
    def k(self) -> int:
        if self.cluster_count == "auto":
            return auto_cluster_count(self.node_count)
        return int(self.cluster_count)

    @property
    def sink(self) -> np.ndarray:
        return np.asarray(self.sink_position, dtype=float)


@dataclass
class Node:
    id: int
    position: tuple
    residual_energy: float = field(default=0.5)

    @property
    def alive(self) -> bool:
        return self.residual_energy > 0


def deploy_network(config: NetworkConfig, seed) -> list[Node]:
    """Scatter ``node_count`` nodes uniformly over the square field.

    ``seed`` may be an int or a ``numpy.random.Generator`` (PCG64 when seeded
    from an int).
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    xy = rng.uniform(0.0, config.field_size, size=(config.node_count, 2))
    return [
        Node(i, (float(x), float(y)), float(config.initial_energy))
        for i, (x, y) in enumerate(xy)
    ]
