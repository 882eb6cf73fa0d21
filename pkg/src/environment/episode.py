"""Episode scoring shared by every algorithm, plus a generic rollout helper."""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from computing.offload import StepOutcome

from .jccra_env import JccraEnv, Observation

Policy = Callable[[Sequence[Observation]], np.ndarray]

METRIC_COLUMNS = ("episode", "reward", "success_rate", "mean_energy_j", "mean_latency_s")


class MetricsError(RuntimeError):
    """Raised when an episode cannot be scored."""


@dataclass(frozen=True)
class EpisodeMetrics:
    """Scores of one episode; ``success_rate`` counts user-steps within the deadline."""

    episode: int
    reward: float
    success_rate: float
    mean_energy_j: float
    mean_latency_s: float
    noise_sigma: Optional[float] = None
    critic_loss: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        """Serialize for CSV/JSON output; unset training fields are dropped."""
        return {key: value for key, value in asdict(self).items() if value is not None or key in METRIC_COLUMNS}

    def with_training(self, noise_sigma: float, critic_loss: Optional[float]) -> "EpisodeMetrics":
        return replace(self, noise_sigma=noise_sigma, critic_loss=critic_loss)


class EpisodeRecorder:
    """Accumulate step outcomes and rewards into ``EpisodeMetrics``."""

    def __init__(self) -> None:
        self.reset()

    def reset(self) -> None:
        self._reward = 0.0
        self._met = 0
        self._opportunities = 0
        self._energy = 0.0
        self._latencies: List[np.ndarray] = []

    @property
    def steps_recorded(self) -> int:
        return len(self._latencies)

    def record(self, outcome: StepOutcome, reward: float) -> None:
        met = np.atleast_1d(outcome.deadline_met)
        self._reward += float(reward)
        self._met += int(met.sum())
        self._opportunities += int(met.size)
        self._energy += float(np.sum(outcome.e_total_j))
        self._latencies.append(np.atleast_1d(outcome.t_total_s))

    def finish(self, episode: int) -> EpisodeMetrics:
        if not self._opportunities:
            raise MetricsError(f"Episode {episode} recorded no steps.")
        latencies = np.concatenate(self._latencies)
        # Infinite latencies mark offloads that can never finish; they are
        # already counted as misses, so the mean covers finite entries only.
        finite = latencies[np.isfinite(latencies)]
        metrics = EpisodeMetrics(
            episode=episode,
            reward=self._reward,
            success_rate=self._met / self._opportunities,
            mean_energy_j=self._energy / self._opportunities,
            mean_latency_s=float(finite.mean()) if finite.size else float("nan"),
        )
        self.reset()
        return metrics


def run_episode(
    env: JccraEnv,
    policy: Policy,
    episode: int,
    *,
    seed: Optional[int] = None,
    recorder: Optional[EpisodeRecorder] = None,
) -> EpisodeMetrics:
    """Roll ``policy`` through one full episode and score it."""
    recorder = recorder or EpisodeRecorder()
    observations = env.reset(seed)
    done = False
    while not done:
        joint_action = policy(observations)
        observations, rewards, outcome, done = env.step(joint_action)
        recorder.record(outcome, float(rewards[0]))
    return recorder.finish(episode)


def metrics_frame(metrics: Sequence[EpisodeMetrics]) -> pd.DataFrame:
    """Tabulate a metrics series, one row per episode."""
    if not metrics:
        return pd.DataFrame(columns=list(METRIC_COLUMNS))
    return pd.DataFrame([item.to_dict() for item in metrics])


def smooth_metrics(frame: pd.DataFrame, window: int = 50) -> pd.DataFrame:
    """Trailing moving average of every metric column; episodes are left as-is."""
    if window < 1:
        raise ValueError("window must be at least 1")
    smoothed = frame.copy()
    for column in METRIC_COLUMNS[1:]:
        if column in smoothed:
            smoothed[column] = smoothed[column].rolling(window, min_periods=1).mean()
    return smoothed
