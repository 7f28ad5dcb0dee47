"""Round-based network simulation: clustering, CH election, transmission, energy accounting."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, NetworkDepleted
from .fcm import FcmConfig, run_fcm, update_memberships
from .radio import (
    NetworkConfig,
    Node,
    RadioParams,
    aggregation_energy,
    deploy_network,
    rx_energy,
    tx_energy,
    tx_energy_sq,
)
from .wsa import WsaConfig, run_wsa


class Strategy(str, enum.Enum):
    WSA_FCM = "wsa-fcm"
    FCM_ONLY = "fcm-only"
    RANDOM_CH = "random"

    @classmethod
    def parse(cls, name) -> "Strategy":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            try:
                return cls[str(name).upper().replace("-", "_")]
            except KeyError:
                choices = ", ".join(s.value for s in cls)
                raise ConfigError("strategy", f"unknown strategy {name!r} (choose from {choices})") from None


@dataclass
class Clustering:
    """Output of one clustering pass over the alive nodes.

    ``memberships`` rows follow ``node_ids``; crisp strategies store 0/1 rows.
    """

    node_ids: list
    centroids: np.ndarray
    memberships: np.ndarray
    convergence_curve: list = field(default_factory=list)


@dataclass
class ClusterAssignment:
    membership_of: dict
    cluster_heads: dict
    centroids: np.ndarray

    def members(self, cluster: int) -> list:
        return [i for i, c in self.membership_of.items() if c == cluster]


@dataclass
class RoundLog:
    round_index: int
    alive_count: int
    total_residual_energy: float
    dead_this_round: list
    assignment: ClusterAssignment
    mean_intra_cluster_distance: float
    energy_spent: float = 0.0
    predicted_energy: float = float("nan")
    convergence_curve: list = field(default_factory=list)


@dataclass
class SimulationTrace:
    config: NetworkConfig
    strategy: Strategy
    seed: int
    rounds: list = field(default_factory=list)
    terminated_at: int = 0
    initial_energy_total: float = 0.0

    @property
    def node_count(self) -> int:
        return self.config.node_count


def _alive_arrays(nodes):
    alive = [n for n in nodes if n.alive]
    if not alive:
        raise NetworkDepleted("no alive nodes left")
    ids = [n.id for n in alive]
    pos = np.array([n.position for n in alive], dtype=float).reshape(-1, 2)
    return ids, pos


def _crisp_nearest(positions, centroids):
    d2 = ((positions[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    u = np.zeros_like(d2)
    u[np.arange(len(positions)), np.argmin(d2, axis=1)] = 1.0
    return u


def form_clusters(strategy, nodes, config: NetworkConfig, radio: RadioParams, rng,
                  wsa_config: WsaConfig = WsaConfig(), fcm_config: FcmConfig = FcmConfig(),
                  k: int | None = None) -> Clustering:
    """Cluster the alive nodes with the given strategy.

    ``k`` defaults to the configured cluster count and is capped by the number
    of alive nodes.
    """
    strategy = Strategy.parse(strategy)
    ids, pos = _alive_arrays(nodes)
    k = min(config.k if k is None else k, len(ids))
    curve = []

    if strategy is Strategy.WSA_FCM:
        res = run_wsa(pos, config.sink, radio, k, wsa_config, rng, config.field_size)
        curve = res.convergence_curve
        fcm = run_fcm(pos, res.best_centroids, fcm_config)
        centroids, u = fcm.centroids, fcm.memberships
    elif strategy is Strategy.FCM_ONLY:
        init = rng.uniform(0.0, config.field_size, size=(k, 2))
        fcm = run_fcm(pos, init, fcm_config)
        centroids, u = fcm.centroids, fcm.memberships
    else:
        chosen = rng.choice(len(ids), size=k, replace=False)
        centroids = pos[np.sort(chosen)]
        u = _crisp_nearest(pos, centroids)

    return Clustering(node_ids=ids, centroids=centroids, memberships=u, convergence_curve=curve)


def elect_cluster_heads(nodes, clustering: Clustering) -> ClusterAssignment:
    """Pick one head per non-empty cluster.

    Nodes go to their highest-membership cluster (lowest index on ties). The
    head is the alive member with the most residual energy, then the one
    closest to the centroid, then the lowest id.
    """
    by_id = {n.id: n for n in nodes}
    crisp = np.argmax(clustering.memberships, axis=1)
    membership_of = {}
    for nid, c in zip(clustering.node_ids, crisp):
        if by_id[nid].alive:
            membership_of[nid] = int(c)

    heads = {}
    for c in sorted(set(membership_of.values())):
        cx, cy = clustering.centroids[c]

        def rank(nid):
            node = by_id[nid]
            dx, dy = node.position[0] - cx, node.position[1] - cy
            return (-node.residual_energy, dx * dx + dy * dy, nid)

        heads[c] = min((nid for nid, cc in membership_of.items() if cc == c), key=rank)
    return ClusterAssignment(membership_of, heads, np.asarray(clustering.centroids, dtype=float))


def _distance(a, b) -> float:
    return float(np.hypot(a[0] - b[0], a[1] - b[1]))


def intra_cluster_distance(assignment: ClusterAssignment, nodes) -> float:
    """Mean distance from each non-head member to its cluster head (0 if none)."""
    by_id = {n.id: n for n in nodes}
    total, count = 0.0, 0
    for nid, c in assignment.membership_of.items():
        head = assignment.cluster_heads.get(c)
        if head is None or head == nid:
            continue
        total += _distance(by_id[nid].position, by_id[head].position)
        count += 1
    return total / count if count else 0.0


def _spend(node: Node, cost: float) -> float:
    """Charge ``cost`` to ``node``; a node that cannot pay is drained instead."""
    if node.residual_energy >= cost:
        node.residual_energy -= cost
        return cost
    lost = node.residual_energy
    node.residual_energy = 0.0
    return lost


def run_round(nodes, assignment: ClusterAssignment, sink, radio: RadioParams,
              round_index: int = 1) -> RoundLog:
    """Play one round of member -> CH -> sink traffic and deduct its energy.

    Mutates the nodes' residual energy. A node that cannot afford an action is
    zeroed and does nothing further this round; the zeroed remainder counts as
    spent so that energy stays conserved.
    """
    by_id = {n.id: n for n in nodes}
    bits = radio.packet_bits
    alive_before = {n.id for n in nodes if n.alive}
    intra = intra_cluster_distance(assignment, nodes)
    spent = 0.0

    for c in sorted(assignment.cluster_heads):
        head = by_id[assignment.cluster_heads[c]]
        if not head.alive:
            continue
        received = 0
        for nid in sorted(i for i, cc in assignment.membership_of.items() if cc == c):
            if nid == head.id:
                continue
            member = by_id[nid]
            if not member.alive:
                continue
            cost = tx_energy(radio, bits, _distance(member.position, head.position))
            ok = member.residual_energy >= cost
            spent += _spend(member, cost)
            if ok:
                received += 1

        actions = [rx_energy(radio, bits)] * received
        actions.append(aggregation_energy(radio, bits, received + 1))
        actions.append(tx_energy(radio, bits, _distance(head.position, sink)))
        for cost in actions:
            if not head.alive:
                break
            spent += _spend(head, cost)

    alive_after = [n for n in nodes if n.alive]
    return RoundLog(
        round_index=round_index,
        alive_count=len(alive_after),
        total_residual_energy=float(sum(n.residual_energy for n in alive_after)),
        dead_this_round=sorted(alive_before - {n.id for n in alive_after}),
        assignment=assignment,
        mean_intra_cluster_distance=intra,
        energy_spent=spent,
    )


def expected_round_energy(positions, memberships, centroids, sink, radio: RadioParams,
                          m: float = 2.0) -> float:
    """Membership-weighted prediction of one round's energy.

    Sum over nodes and clusters of u^m * (tx(node -> centroid) + aggregation
    of one packet), plus one centroid -> sink transmission per cluster.
    """
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    centroids = np.asarray(centroids, dtype=float).reshape(-1, 2)
    bits = radio.packet_bits
    d2 = ((positions[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    per_link = tx_energy_sq(radio, bits, d2) + aggregation_energy(radio, bits, 1)
    w = np.asarray(memberships, dtype=float) ** m
    sink_d2 = ((centroids - np.asarray(sink, dtype=float)) ** 2).sum(axis=1)
    return float(np.sum(w * per_link) + np.sum(tx_energy_sq(radio, bits, sink_d2)))


def _restrict(clustering: Clustering, nodes) -> Clustering:
    """Drop dead nodes from a clustering reused across rounds."""
    alive = {n.id for n in nodes if n.alive}
    keep = [i for i, nid in enumerate(clustering.node_ids) if nid in alive]
    return Clustering(
        node_ids=[clustering.node_ids[i] for i in keep],
        centroids=clustering.centroids,
        memberships=clustering.memberships[keep],
    )


def simulation_rngs(seed):
    """Independent (deployment, protocol) generators derived from one seed.

    Deployment depends on the seed only, so every strategy sees the same field.
    """
    deploy_seq, proto_seq = np.random.SeedSequence(seed).spawn(2)
    return np.random.default_rng(deploy_seq), np.random.default_rng(proto_seq)


def simulate(config: NetworkConfig, strategy, radio: RadioParams = RadioParams(), seed: int = 1,
             round_cap: int = 5000, recluster_every: int = 1,
             wsa_config: WsaConfig = WsaConfig(), fcm_config: FcmConfig = FcmConfig(),
             fuzzifier_for_prediction: float | None = None) -> SimulationTrace:
    """Run rounds until every node is dead or ``round_cap`` is reached."""
    if round_cap < 1:
        raise ConfigError("round_cap", "must be >= 1")
    if recluster_every < 1:
        raise ConfigError("recluster_every", "must be >= 1")
    strategy = Strategy.parse(strategy)
    deploy_rng, rng = simulation_rngs(seed)
    nodes = deploy_network(config, deploy_rng)
    sink = config.sink
    m = fuzzifier_for_prediction or fcm_config.fuzzifier

    trace = SimulationTrace(config=config, strategy=strategy, seed=seed,
                            initial_energy_total=sum(n.residual_energy for n in nodes))
    clustering = None
    for r in range(1, round_cap + 1):
        if clustering is None or (r - 1) % recluster_every == 0:
            clustering = form_clusters(strategy, nodes, config, radio, rng, wsa_config, fcm_config)
        else:
            clustering = _restrict(clustering, nodes)
        assignment = elect_cluster_heads(nodes, clustering)
        by_id = {n.id: n for n in nodes}
        predicted = expected_round_energy(
            [by_id[i].position for i in clustering.node_ids],
            clustering.memberships, clustering.centroids, sink, radio, m,
        )
        log = run_round(nodes, assignment, sink, radio, round_index=r)
        log.predicted_energy = predicted
        log.convergence_curve = clustering.convergence_curve
        trace.rounds.append(log)
        trace.terminated_at = r
        if log.alive_count == 0:
            break
    return trace
