"""Compiled inner loops for the swarm fitness evaluation."""

import numba
import numpy as np


@numba.njit(cache=True)
def _amp(d2, d0_sq, eps_fs, eps_mp):
    if d2 < d0_sq:
        return eps_fs * d2
    return eps_mp * d2 * d2


@numba.njit(cache=True)
def nearest_centroid_cost(centroids, positions, sink, bits, e_elec, eps_fs, eps_mp):
    """Mean over nodes of tx(node -> nearest centroid) + tx(centroid -> sink), per agent."""
    n_agents, k, _ = centroids.shape
    n = positions.shape[0]
    d0_sq = eps_fs / eps_mp
    out = np.empty(n_agents)
    for p in range(n_agents):
        sink_amp = np.empty(k)
        for j in range(k):
            sx = centroids[p, j, 0] - sink[0]
            sy = centroids[p, j, 1] - sink[1]
            sink_amp[j] = _amp(sx * sx + sy * sy, d0_sq, eps_fs, eps_mp)
        total = 0.0
        for i in range(n):
            best = np.inf
            best_j = 0
            for j in range(k):
                dx = positions[i, 0] - centroids[p, j, 0]
                dy = positions[i, 1] - centroids[p, j, 1]
                d2 = dx * dx + dy * dy
                if d2 < best:
                    best = d2
                    best_j = j
            member = bits * e_elec + bits * _amp(best, d0_sq, eps_fs, eps_mp)
            relay = bits * e_elec + bits * sink_amp[best_j]
            total += member + relay
        out[p] = total / n
    return out
