"""Fuzzy C-Means refinement of cluster centroids."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class FcmConfig:
    fuzzifier: float = 2.0
    tolerance: float = 1e-4
    max_iterations: int = 100

    def __post_init__(self):
        if not self.fuzzifier > 1:
            raise ConfigError("fuzzifier", "must be > 1")
        if not self.tolerance > 0:
            raise ConfigError("tolerance", "must be > 0")
        if not isinstance(self.max_iterations, int) or self.max_iterations < 0:
            raise ConfigError("max_iterations", "must be a non-negative integer")


@dataclass
class FcmResult:
    centroids: np.ndarray
    memberships: np.ndarray
    objective_history: list = field(default_factory=list)
    iterations_run: int = 0
    converged: bool = False


def _sq_distances(positions, centroids):
    dx = positions[:, 0, None] - centroids[None, :, 0]
    dy = positions[:, 1, None] - centroids[None, :, 1]
    return dx * dx + dy * dy


def update_memberships(positions, centroids, m: float = 2.0) -> np.ndarray:
    """Membership matrix (n x k) for fixed centroids.

    A point sitting exactly on one or more centroids gets its membership split
    uniformly among those centroids and zero elsewhere.
    """
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    centroids = np.asarray(centroids, dtype=float).reshape(-1, 2)
    if len(centroids) == 0:
        raise ValueError("need at least one centroid")
    if not m > 1:
        raise ValueError("fuzzifier must be > 1")
    d2 = _sq_distances(positions, centroids)
    u = np.empty_like(d2)

    zero = d2 == 0.0
    singular = zero.any(axis=1)
    if singular.any():
        z = zero[singular].astype(float)
        u[singular] = z / z.sum(axis=1, keepdims=True)

    regular = ~singular
    if regular.any():
        r = d2[regular]
        # (d_min / d_ij)^(2/(m-1)) keeps every ratio in (0, 1]
        ratio = r.min(axis=1, keepdims=True) / r
        if m != 2.0:
            ratio **= 1.0 / (m - 1.0)
        u[regular] = ratio / ratio.sum(axis=1, keepdims=True)
    return u


def update_centroids(positions, memberships, m: float = 2.0, previous=None) -> np.ndarray:
    """Weighted means of the positions with weights u_ij^m.

    A cluster whose weight column is all zero keeps its ``previous`` centroid
    (or NaN when no previous value is given).
    """
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    w = np.asarray(memberships, dtype=float)
    w = w * w if m == 2.0 else w ** m
    mass = w.sum(axis=0)
    out = np.full((w.shape[1], 2), np.nan)
    nz = mass > 0
    out[nz] = (w[:, nz].T @ positions) / mass[nz, None]
    if previous is not None and not nz.all():
        out[~nz] = np.asarray(previous, dtype=float)[~nz]
    return out


def fcm_objective(positions, centroids, memberships, m: float = 2.0) -> float:
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    centroids = np.asarray(centroids, dtype=float).reshape(-1, 2)
    d2 = _sq_distances(positions, centroids)
    return float(np.sum(np.asarray(memberships, dtype=float) ** m * d2))


def run_fcm(positions, init_centroids, config: FcmConfig = FcmConfig()) -> FcmResult:
    """Alternate membership and centroid updates from ``init_centroids``.

    Stops once no centroid moves by ``config.tolerance`` or more, or after
    ``config.max_iterations``. The objective is recorded after every centroid
    update, so the history is non-increasing.
    """
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    if len(positions) == 0:
        raise ValueError("run_fcm needs at least one position")
    m = config.fuzzifier
    centroids = np.array(init_centroids, dtype=float).reshape(-1, 2)

    history = []
    converged = False
    it = 0
    while it < config.max_iterations:
        u = update_memberships(positions, centroids, m)
        new = update_centroids(positions, u, m, previous=centroids)
        history.append(fcm_objective(positions, new, u, m))
        shift = np.sqrt(((new - centroids) ** 2).sum(axis=1)).max()
        centroids = new
        it += 1
        if shift < config.tolerance:
            converged = True
            break

    return FcmResult(
        centroids=centroids,
        memberships=update_memberships(positions, centroids, m),
        objective_history=history,
        iterations_run=it,
        converged=converged,
    )
