"""Numpy actor-critic learning: networks, optimizer, replay and training loops."""

from .adam import AdamState, adam_step
from .agent import AgentBundle, PolicyHead, act, build_agent, centralized_head, decentralized_heads
from .checkpoint import FORMAT_VERSION, CheckpointError, CheckpointStore
from .mlp import Mlp, init_mlp, mlp_backward, mlp_forward, soft_update
from .noise import GaussianNoise
from .policies import CentralizedPolicy, DecentralizedPolicy
from .replay import Batch, ReplayBuffer, ReplayBufferError
from .training import (
    AGENT_STREAM,
    ENV_STREAM,
    EVAL_STREAM,
    INIT_STREAM,
    SCENARIO_STREAM,
    build_centralized_agent,
    build_maddpg_agents,
    derive_seed,
    train_agents,
    train_ddpg_centralized,
    train_maddpg,
)
from .updates import actor_update, critic_loss, critic_q, critic_update, joint_action, policy_gradient, td_targets

__all__ = [
    "AGENT_STREAM",
    "ENV_STREAM",
    "EVAL_STREAM",
    "FORMAT_VERSION",
    "INIT_STREAM",
    "SCENARIO_STREAM",
    "AdamState",
    "AgentBundle",
    "Batch",
    "CentralizedPolicy",
    "CheckpointError",
    "CheckpointStore",
    "DecentralizedPolicy",
    "GaussianNoise",
    "Mlp",
    "PolicyHead",
    "ReplayBuffer",
    "ReplayBufferError",
    "act",
    "actor_update",
    "adam_step",
    "build_agent",
    "build_centralized_agent",
    "build_maddpg_agents",
    "centralized_head",
    "critic_loss",
    "critic_q",
    "critic_update",
    "decentralized_heads",
    "derive_seed",
    "init_mlp",
    "joint_action",
    "mlp_backward",
    "mlp_forward",
    "policy_gradient",
    "soft_update",
    "td_targets",
    "train_agents",
    "train_ddpg_centralized",
    "train_maddpg",
]
