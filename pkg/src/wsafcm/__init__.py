"""Wireless sensor network clustering with a water strider search refined by fuzzy c-means."""

from .errors import ConfigError, NetworkDepleted
from .fcm import FcmConfig, FcmResult, fcm_objective, run_fcm, update_centroids, update_memberships
from .metrics import LifetimeMetrics, RunSummary, aggregate_runs, lifetime_metrics, summarize_run
from .protocol import (
    ClusterAssignment,
    RoundLog,
    SimulationTrace,
    Strategy,
    elect_cluster_heads,
    expected_round_energy,
    form_clusters,
    run_round,
    simulate,
)
from .radio import (
    NetworkConfig,
    Node,
    RadioParams,
    aggregation_energy,
    auto_cluster_count,
    deploy_network,
    rx_energy,
    threshold_distance,
    tx_energy,
)
from .stats import cohens_d, paired_t_test
from .wsa import WsaConfig, WsaResult, fitness, hybrid_objective, run_wsa, wsa_step

__version__ = "0.1.0"
