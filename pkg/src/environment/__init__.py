"""Multi-agent MEC environment and the episode scoring path."""

from .episode import (
    METRIC_COLUMNS,
    EpisodeMetrics,
    EpisodeRecorder,
    MetricsError,
    Policy,
    metrics_frame,
    run_episode,
    smooth_metrics,
)
from .jccra_env import (
    ACTION_DIM,
    OBSERVATION_DIM,
    Action,
    EnvironmentStateError,
    JccraEnv,
    Observation,
    cooperative_reward,
)

__all__ = [
    "ACTION_DIM",
    "METRIC_COLUMNS",
    "OBSERVATION_DIM",
    "Action",
    "EnvironmentStateError",
    "EpisodeMetrics",
    "EpisodeRecorder",
    "JccraEnv",
    "MetricsError",
    "Observation",
    "Policy",
    "cooperative_reward",
    "metrics_frame",
    "run_episode",
    "smooth_metrics",
]
