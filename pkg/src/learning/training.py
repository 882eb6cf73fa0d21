"""Training loops for decentralized MADDPG actors and the centralized DDPG baseline.

Both algorithms run through ``train_agents``: each ``AgentBundle`` owns a
``PolicyHead`` that selects what its actor reads from the full state and
which part of the joint action it writes. MADDPG uses one head per user;
the centralized baseline uses a single head spanning everything, so with a
single user the two are the same computation.
"""

from __future__ import annotations

import logging
from typing import Callable, List, Optional, Sequence

import numpy as np

from environment.episode import EpisodeMetrics, EpisodeRecorder
from environment.jccra_env import ACTION_DIM, OBSERVATION_DIM, JccraEnv
from system_config import TrainingConfig

from .agent import AgentBundle, act, build_agent, centralized_head, decentralized_heads
from .mlp import soft_update
from .noise import GaussianNoise
from .updates import actor_update, critic_update, snapshot_actors

logger = logging.getLogger(__name__)

SCENARIO_STREAM = 0
ENV_STREAM = 1
AGENT_STREAM = 2
INIT_STREAM = 3
EVAL_STREAM = 4

EpisodeCallback = Callable[[EpisodeMetrics], None]


def derive_seed(seed: int, stream: int) -> int:
    """Independent child seed for one consumer of a run seed."""
    return int(np.random.SeedSequence([seed, stream]).generate_state(1)[0])


def build_maddpg_agents(env: JccraEnv, training: TrainingConfig, rng: np.random.Generator) -> List[AgentBundle]:
    heads = decentralized_heads(env.num_users, OBSERVATION_DIM, ACTION_DIM)
    return [build_agent(head, env.state_dim, env.joint_action_dim, training, rng) for head in heads]


def build_centralized_agent(env: JccraEnv, training: TrainingConfig, rng: np.random.Generator) -> AgentBundle:
    head = centralized_head(env.state_dim, env.joint_action_dim)
    return build_agent(head, env.state_dim, env.joint_action_dim, training, rng)


def train_maddpg(
    env: JccraEnv,
    bundles: Sequence[AgentBundle],
    episodes: int,
    training: TrainingConfig,
    seed: int,
    *,
    on_episode: Optional[EpisodeCallback] = None,
) -> List[EpisodeMetrics]:
    """Centralized training of one actor-critic per user."""
    if len(bundles) != env.num_users:
        raise ValueError(f"MADDPG needs one agent per user: {env.num_users} users, {len(bundles)} agents.")
    for bundle in bundles:
        if bundle.actor.input_dim != OBSERVATION_DIM or bundle.actor.output_dim != ACTION_DIM:
            raise ValueError("MADDPG actors map one observation to one action.")
    return train_agents(env, bundles, episodes, training, seed, on_episode=on_episode)


def train_ddpg_centralized(
    env: JccraEnv,
    bundle: AgentBundle,
    episodes: int,
    training: TrainingConfig,
    seed: int,
    *,
    on_episode: Optional[EpisodeCallback] = None,
) -> List[EpisodeMetrics]:
    """Single-agent DDPG over the full state and joint action."""
    if bundle.actor.input_dim != env.state_dim or bundle.actor.output_dim != env.joint_action_dim:
        raise ValueError(
            f"Centralized actor must map {env.state_dim} state dims to {env.joint_action_dim} action dims."
        )
    return train_agents(env, [bundle], episodes, training, seed, on_episode=on_episode)


def train_agents(
    env: JccraEnv,
    bundles: Sequence[AgentBundle],
    episodes: int,
    training: TrainingConfig,
    seed: int,
    *,
    on_episode: Optional[EpisodeCallback] = None,
) -> List[EpisodeMetrics]:
    """Shared interaction and update loop; returns one history row per episode."""
    if episodes < 0:
        raise ValueError("episodes must be non-negative")
    critic_inputs = env.state_dim + env.joint_action_dim
    for bundle in bundles:
        if bundle.critic.input_dim != critic_inputs:
            raise ValueError(f"Critics must read {critic_inputs} inputs, got {bundle.critic.input_dim}.")

    rng = np.random.default_rng(derive_seed(seed, AGENT_STREAM))
    noise = GaussianNoise(training.noise_sigma, training.noise_decay, training.noise_floor)
    warm_after = max(training.warmup, training.batch_size)
    recorder = EpisodeRecorder()
    history: List[EpisodeMetrics] = []
    warm = False

    for episode in range(episodes):
        env.reset(derive_seed(seed, ENV_STREAM) if episode == 0 else None)
        state = env.full_state()
        losses: List[float] = []
        done = False
        while not done:
            joint = np.zeros(env.joint_action_dim)
            for bundle in bundles:
                joint[bundle.head.action_slice] = act(
                    bundle, state[bundle.head.obs_slice], explore=True, noise=noise, episode=episode, rng=rng
                )
            _, rewards, outcome, done = env.step(joint)
            next_state = env.full_state()
            for index, bundle in enumerate(bundles):
                bundle.buffer.add(state, joint, rewards[index], next_state)
            recorder.record(outcome, float(rewards[0]))

            if len(bundles[0].buffer) >= warm_after:
                if not warm:
                    logger.info("Replay warm after %d transitions; updates start in episode %d", warm_after, episode)
                    warm = True
                losses.append(_update_round(bundles, training, rng))
            state = next_state

        metrics = recorder.finish(episode).with_training(
            noise.sigma(episode), float(np.mean(losses)) if losses else None
        )
        history.append(metrics)
        if on_episode is not None:
            on_episode(metrics)
        if training.log_every and (episode + 1) % training.log_every == 0:
            logger.info(
                "Episode %d/%d reward=%.3f success=%.3f sigma=%.4f",
                episode + 1,
                episodes,
                metrics.reward,
                metrics.success_rate,
                metrics.noise_sigma,
            )
    return history


def _update_round(bundles: Sequence[AgentBundle], training: TrainingConfig, rng: np.random.Generator) -> float:
    # Every agent reads the actors as they were before this round.
    current = snapshot_actors(bundles)
    targets = [(bundle.head, bundle.target_actor) for bundle in bundles]
    batches = [bundle.buffer.sample(training.batch_size, rng) for bundle in bundles]

    losses = [critic_update(bundle, batch, targets, training.discount) for bundle, batch in zip(bundles, batches)]
    for bundle, batch in zip(bundles, batches):
        actor_update(bundle, batch, current)
    for bundle in bundles:
        soft_update(bundle.target_actor, bundle.actor, training.tau)
        soft_update(bundle.target_critic, bundle.critic, training.tau)
    return float(np.mean(losses))
