"""Water strider population search over sets of k cluster-head positions.

Every agent holds k candidate centroids. The cost of a candidate set is the
mean per-node energy of one round where each node sends a packet to its
nearest centroid and that centroid forwards it to the sink.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import nearest_centroid_cost
from .errors import ConfigError, NetworkDepleted
from .fcm import fcm_objective
from .radio import RadioParams


@dataclass(frozen=True)
class WsaConfig:
    population_size: int = 30
    iterations: int = 50
    sigma: float = 1.0
    inertia: float = 0.5

    def __post_init__(self):
        if not isinstance(self.population_size, int) or self.population_size < 2:
            raise ConfigError("population_size", "must be an integer >= 2")
        if not isinstance(self.iterations, int) or self.iterations < 0:
            raise ConfigError("iterations", "must be a non-negative integer")
        if not self.sigma >= 0:
            raise ConfigError("sigma", "must be >= 0")
        if not 0 <= self.inertia <= 1:
            raise ConfigError("inertia", "must lie in [0, 1]")


@dataclass
class StriderPopulation:
    """All agents of a swarm, stored as stacked arrays.

    ``centroids`` and ``velocity`` have shape (P, k, 2); ``fitness`` is (P,).
    ``velocity`` is the displacement each agent actually made on its last
    accepted move (zero after a rejected one).
    """

    centroids: np.ndarray
    velocity: np.ndarray
    fitness: np.ndarray

    def __len__(self):
        return len(self.fitness)

    def best_index(self) -> int:
        return int(np.argmin(self.fitness))


@dataclass
class WsaResult:
    best_centroids: np.ndarray
    best_fitness: float
    convergence_curve: list = field(default_factory=list)


@dataclass(frozen=True)
class FitnessContext:
    """Everything a fitness evaluation reads: alive positions, sink, radio, field."""

    positions: np.ndarray
    sink: np.ndarray
    radio: RadioParams
    field_size: float

    def __post_init__(self):
        object.__setattr__(self, "positions", np.asarray(self.positions, dtype=float).reshape(-1, 2))
        object.__setattr__(self, "sink", np.asarray(self.sink, dtype=float))

    def evaluate(self, centroids: np.ndarray) -> np.ndarray:
        return population_fitness(centroids, self.positions, self.sink, self.radio)


def population_fitness(centroids, positions, sink, radio: RadioParams) -> np.ndarray:
    """Fitness of a stack of candidate sets, shape (P, k, 2) -> (P,)."""
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    if len(positions) == 0:
        raise NetworkDepleted("fitness needs at least one alive node")
    c = np.ascontiguousarray(centroids, dtype=float)
    sink = np.asarray(sink, dtype=float)
    return nearest_centroid_cost(c, np.ascontiguousarray(positions), sink, float(radio.packet_bits),
                                 radio.e_elec, radio.eps_fs, radio.eps_mp)


def fitness(centroids, positions, sink, radio: RadioParams) -> float:
    """Mean per-node round energy (J) when every node uses its nearest centroid as CH."""
    c = np.asarray(centroids, dtype=float).reshape(1, -1, 2)
    return float(population_fitness(c, positions, sink, radio)[0])


def init_population(ctx: FitnessContext, k: int, size: int, rng) -> StriderPopulation:
    centroids = rng.uniform(0.0, ctx.field_size, size=(size, k, 2))
    return StriderPopulation(
        centroids=centroids,
        velocity=np.zeros_like(centroids),
        fitness=ctx.evaluate(centroids),
    )


def wsa_step(population: StriderPopulation, best: np.ndarray, rng,
             config: WsaConfig, ctx: FitnessContext) -> StriderPopulation:
    """Move every agent once and keep each move only if it does not worsen fitness.

    ``best`` is the global-best centroid set (k, 2). The partner for each agent
    is drawn uniformly from the other agents.
    """
    x = population.centroids
    size = len(population)
    if size < 2:
        raise ValueError("population needs at least two agents")

    # partner index uniform over the other size-1 agents
    partner = rng.integers(0, size - 1, size=size)
    partner += partner >= np.arange(size)
    x_rand = x[partner]

    r1 = rng.random(x.shape)
    r2 = rng.random(x.shape)
    v = config.inertia * population.velocity
    moved = x + v + config.sigma * (r1 * (best[None] - x) + r2 * (x_rand - x))
    np.clip(moved, 0.0, ctx.field_size, out=moved)

    new_fit = ctx.evaluate(moved)
    accept = new_fit <= population.fitness
    keep = accept[:, None, None]
    centroids = np.where(keep, moved, x)
    velocity = np.where(keep, moved - x, 0.0)
    fit = np.where(accept, new_fit, population.fitness)
    return StriderPopulation(centroids, velocity, fit)


def run_wsa(positions, sink, radio: RadioParams, k: int, config: WsaConfig = WsaConfig(),
            rng=None, field_size: float = 100.0) -> WsaResult:
    """Search for k centroid positions minimising :func:`fitness`.

    The curve holds the global-best fitness after each iteration (length
    ``config.iterations``).
    """
    rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    ctx = FitnessContext(positions, sink, radio, field_size)
    if len(ctx.positions) == 0:
        raise NetworkDepleted("run_wsa needs at least one alive node")

    pop = init_population(ctx, k, config.population_size, rng)
    i = pop.best_index()
    best = pop.centroids[i].copy()
    best_fit = float(pop.fitness[i])

    curve = []
    for _ in range(config.iterations):
        pop = wsa_step(pop, best, rng, config, ctx)
        i = pop.best_index()
        if pop.fitness[i] < best_fit:
            best = pop.centroids[i].copy()
            best_fit = float(pop.fitness[i])
        curve.append(best_fit)

    return WsaResult(best_centroids=best, best_fitness=best_fit, convergence_curve=curve)


def hybrid_objective(centroids, memberships, positions, residual_energy, initial_energy,
                     sink, radio: RadioParams, weights=(1.0, 1.0, 1.0), m: float = 2.0) -> float:
    """Weighted sum of routing cost, FCM compactness and mean energy deficit.

    Diagnostic only; the search itself minimises :func:`fitness`. The third
    term is ``initial_energy`` minus the mean residual of the alive nodes.
    """
    alpha, beta, gamma = weights
    if min(weights) < 0:
        raise ValueError("weights must be non-negative")
    residual = np.asarray(residual_energy, dtype=float)
    alive = residual[residual > 0]
    deficit = initial_energy - (alive.mean() if len(alive) else 0.0)
    total = 0.0
    if alpha:
        total += alpha * fitness(centroids, positions, sink, radio)
    if beta:
        total += beta * fcm_objective(positions, centroids, memberships, m)
    if gamma:
        total += gamma * deficit
    return total
