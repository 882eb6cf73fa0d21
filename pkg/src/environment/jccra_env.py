"""Shared multi-agent environment for joint communication and computing allocation."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from computing.offload import StepOutcome, evaluate_allocation
from radio.channel import ChannelRealization, draw_channels
from radio.scenario import NetworkScenario
from radio.sinr import achievable_rate, uplink_sinr
from system_config import SystemConfig

logger = logging.getLogger(__name__)

OBSERVATION_DIM = 3
ACTION_DIM = 2


class EnvironmentStateError(RuntimeError):
    """Raised when the environment is stepped outside of an active episode."""


@dataclass(frozen=True)
class Observation:
    """What one agent sees at the start of a step: raw values plus the network input."""

    user_index: int
    task_bits: float
    deadline_s: float
    prev_rate_bps: float
    vector: np.ndarray


@dataclass(frozen=True)
class Action:
    """Fraction of the local clock (alpha) and of the maximum uplink power (eta)."""

    alpha: float
    eta: float

    def clipped(self) -> "Action":
        return Action(alpha=float(np.clip(self.alpha, 0.0, 1.0)), eta=float(np.clip(self.eta, 0.0, 1.0)))

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha, self.eta], dtype=float)


JointAction = Union[np.ndarray, Sequence[Action], Sequence[Sequence[float]]]


def cooperative_reward(outcome: StepOutcome, miss_penalty: float = 10.0, energy_scale: float = 1e3) -> float:
    """Negative penalty-weighted network energy; deadline misses cost ``miss_penalty`` times more."""
    weights = np.where(outcome.deadline_met, 1.0, miss_penalty)
    return 0.0 - float(np.sum(weights * outcome.e_total_j)) * energy_scale


class JccraEnv:
    """Discrete-time cell-free MEC network shared by all agents.

    Large-scale fading is frozen in ``scenario``; every step redraws the
    small-scale fades, draws fresh task sizes for the next step and hands
    every agent the same cooperative reward.
    """

    def __init__(self, scenario: NetworkScenario, config: SystemConfig, seed: Optional[int] = None) -> None:
        if scenario.num_users != config.num_users:
            raise ValueError(
                f"Scenario has {scenario.num_users} users but the configuration expects {config.num_users}."
            )
        self.scenario = scenario
        self.config = config
        self.radio = config.radio()
        self.compute = config.compute()
        self._deadlines = config.deadlines()
        self._seed_streams(seed)
        self._step: Optional[int] = None
        self._tasks = np.zeros(config.num_users)
        self._prev_rates = np.zeros(config.num_users)
        self._observations: List[Observation] = []

    # ------------------------------------------------------------------
    # Dimensions
    # ------------------------------------------------------------------

    @property
    def num_users(self) -> int:
        return self.config.num_users

    @property
    def state_dim(self) -> int:
        return self.num_users * OBSERVATION_DIM

    @property
    def joint_action_dim(self) -> int:
        return self.num_users * ACTION_DIM

    @property
    def horizon(self) -> int:
        return self.config.horizon_steps

    # ------------------------------------------------------------------
    # Episode control
    # ------------------------------------------------------------------

    def reset(self, seed: Optional[int] = None) -> List[Observation]:
        """Start a new episode; passing ``seed`` restarts the random streams."""
        if seed is not None:
            self._seed_streams(seed)
            logger.debug("Environment streams reseeded with %d", seed)
        self._step = 0
        self._prev_rates = np.zeros(self.num_users)
        self._tasks = self._draw_tasks()
        self._observations = self._observe()
        return list(self._observations)

    def step(self, joint_action: JointAction) -> Tuple[List[Observation], np.ndarray, StepOutcome, bool]:
        """Apply every agent's action for one step.

        Returns next observations, per-agent rewards (all identical), the
        per-user outcome, and whether the horizon has been reached.
        """
        if self._step is None:
            raise EnvironmentStateError("Call reset() before step().")
        if self._step >= self.horizon:
            raise EnvironmentStateError(f"Episode already ran its {self.horizon} steps; call reset().")

        actions = self._as_action_matrix(joint_action)
        alpha, eta = actions[:, 0], actions[:, 1]
        powers = eta * self.radio.max_ul_power_w

        channels = draw_channels(self.scenario, self.radio, self._channel_rng)
        rates = self.uplink_rates(powers, channels)
        outcome = evaluate_allocation(self._tasks, alpha, powers, rates, self.compute)
        reward = cooperative_reward(outcome, self.config.miss_penalty, self.config.energy_scale)

        self._prev_rates = rates
        self._step += 1
        self._tasks = self._draw_tasks()
        self._observations = self._observe()
        done = self._step == self.horizon
        return list(self._observations), np.full(self.num_users, reward), outcome, done

    def full_state(self) -> np.ndarray:
        """Concatenated network inputs of all agents in agent-index order."""
        if self._step is None:
            raise EnvironmentStateError("Call reset() before full_state().")
        return np.concatenate([obs.vector for obs in self._observations])

    def uplink_rates(self, powers_w: np.ndarray, channels: ChannelRealization) -> np.ndarray:
        """Achievable uplink rates for a power vector over one channel draw."""
        sinr = uplink_sinr(powers_w, channels, self.scenario.clusters, self.radio.noise_power_w)
        return achievable_rate(sinr, self.radio.bandwidth_hz, self.radio.prelog)

    # ------------------------------------------------------------------
    # Internals
    # ------------------------------------------------------------------

    def _seed_streams(self, seed: Optional[int]) -> None:
        # Separate streams keep task arrivals identical across architectures,
        # whose channel matrices have different shapes.
        task_seq, channel_seq = np.random.SeedSequence(seed).spawn(2)
        self._task_rng = np.random.default_rng(task_seq)
        self._channel_rng = np.random.default_rng(channel_seq)

    def _draw_tasks(self) -> np.ndarray:
        return self._task_rng.uniform(self.compute.task_min_bits, self.compute.task_max_bits, size=self.num_users)

    def _observe(self) -> List[Observation]:
        rate_norm = self.config.rate_normalizer_bps
        observations = []
        for user in range(self.num_users):
            vector = np.clip(
                np.array(
                    [
                        self._tasks[user] / self.compute.task_max_bits,
                        self._deadlines[user] / self.compute.step_s,
                        self._prev_rates[user] / rate_norm,
                    ]
                ),
                0.0,
                1.0,
            )
            observations.append(
                Observation(
                    user_index=user,
                    task_bits=float(self._tasks[user]),
                    deadline_s=float(self._deadlines[user]),
                    prev_rate_bps=float(self._prev_rates[user]),
                    vector=vector,
                )
            )
        return observations

    def _as_action_matrix(self, joint_action: JointAction) -> np.ndarray:
        if len(joint_action) and isinstance(joint_action[0], Action):
            matrix = np.stack([action.as_array() for action in joint_action])  # type: ignore[union-attr]
        else:
            matrix = np.asarray(joint_action, dtype=float).reshape(-1, ACTION_DIM)
        if matrix.shape != (self.num_users, ACTION_DIM):
            raise ValueError(f"Expected {self.num_users} actions of size {ACTION_DIM}, got shape {matrix.shape}.")
        # Out-of-range actions are clipped, not rejected.
        return np.clip(matrix, 0.0, 1.0)
