"""Actor-critic agents and the slices of the joint state and action they own."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from environment.jccra_env import ACTION_DIM
from system_config import TrainingConfig

from .adam import AdamState
from .mlp import Mlp, init_mlp
from .noise import GaussianNoise
from .replay import ReplayBuffer


@dataclass(frozen=True)
class PolicyHead:
    """The part of the full state an actor reads and the part of the joint action it writes."""

    obs_start: int
    obs_stop: int
    action_start: int
    action_stop: int

    @property
    def obs_slice(self) -> slice:
        return slice(self.obs_start, self.obs_stop)

    @property
    def action_slice(self) -> slice:
        return slice(self.action_start, self.action_stop)

    @property
    def obs_dim(self) -> int:
        return self.obs_stop - self.obs_start

    @property
    def action_dim(self) -> int:
        return self.action_stop - self.action_start


def decentralized_heads(num_agents: int, obs_dim: int, action_dim: int) -> List[PolicyHead]:
    """One head per user: own observation in, own action out."""
    return [
        PolicyHead(k * obs_dim, (k + 1) * obs_dim, k * action_dim, (k + 1) * action_dim) for k in range(num_agents)
    ]


def centralized_head(state_dim: int, joint_action_dim: int) -> PolicyHead:
    """A single head reading the full state and writing the whole joint action."""
    return PolicyHead(0, state_dim, 0, joint_action_dim)


def action_bounds(training: TrainingConfig, action_dim: int) -> Tuple[np.ndarray, np.ndarray]:
    """``[0, alpha_max]`` for every clock fraction and ``[eta_min, 1]`` for every power fraction."""
    if action_dim % ACTION_DIM:
        raise ValueError(f"action_dim must be a multiple of {ACTION_DIM}, got {action_dim}")
    users = action_dim // ACTION_DIM
    low = np.tile([0.0, training.eta_min], users)
    high = np.tile([training.alpha_max, 1.0], users)
    return low, high


@dataclass
class AgentBundle:
    """Actor, critic, their lagged targets, optimizers and replay memory of one agent."""

    head: PolicyHead
    actor: Mlp
    critic: Mlp
    target_actor: Mlp
    target_critic: Mlp
    actor_opt: AdamState
    critic_opt: AdamState
    buffer: ReplayBuffer


def build_agent(
    head: PolicyHead,
    state_dim: int,
    joint_action_dim: int,
    training: TrainingConfig,
    rng: np.random.Generator,
) -> AgentBundle:
    """Initialize the actor before the critic; targets start as exact copies.

    The actor's sigmoid output is rescaled into ``action_bounds`` so both the
    deterministic and the exploratory actions stay inside them.
    """
    hidden = tuple(training.hidden_sizes)
    actor = init_mlp(
        (head.obs_dim, *hidden, head.action_dim),
        rng,
        output_activation="sigmoid",
        final_scale=training.actor_final_scale,
        output_bounds=action_bounds(training, head.action_dim),
    )
    critic = init_mlp((state_dim + joint_action_dim, *hidden, 1), rng, output_activation="identity")
    return AgentBundle(
        head=head,
        actor=actor,
        critic=critic,
        target_actor=actor.copy(),
        target_critic=critic.copy(),
        actor_opt=_adam(training, training.lr_actor),
        critic_opt=_adam(training, training.lr_critic),
        buffer=ReplayBuffer(training.buffer_capacity, state_dim, joint_action_dim),
    )


def act(
    bundle: AgentBundle,
    observation: np.ndarray,
    *,
    explore: bool = False,
    noise: Optional[GaussianNoise] = None,
    episode: int = 0,
    rng: Optional[np.random.Generator] = None,
) -> np.ndarray:
    """Actor output for the agent's own input, optionally perturbed, clipped to the actor's range."""
    action = bundle.actor(np.asarray(observation, dtype=float))
    if explore:
        if noise is None or rng is None:
            raise ValueError("exploration needs both a noise schedule and a generator")
        action = action + noise.sample(rng, action.shape[0], episode)
    low, high = bundle.actor.output_range()
    return np.clip(action, np.maximum(low, 0.0), np.minimum(high, 1.0))


def _adam(training: TrainingConfig, lr: float) -> AdamState:
    return AdamState(lr=lr, beta1=training.adam_beta1, beta2=training.adam_beta2, eps=training.adam_eps)
