"""Critic regression, deterministic policy gradient and the joint-action plumbing they share."""

from __future__ import annotations

from typing import Optional, Protocol, Sequence, Tuple

import numpy as np

from .adam import adam_step
from .agent import AgentBundle, PolicyHead
from .mlp import Mlp, Params, mlp_backward, mlp_forward
from .replay import Batch

ActorSet = Sequence[Tuple[PolicyHead, Mlp]]


class QFunction(Protocol):
    """Batch action values and their gradient with respect to the joint action."""

    def __call__(self, states: np.ndarray, actions: np.ndarray) -> Tuple[np.ndarray, np.ndarray]: ...


def joint_action(actors: ActorSet, states: np.ndarray, action_dim: int) -> np.ndarray:
    """Assemble the joint action of every actor from a batch of full states."""
    states = np.atleast_2d(states)
    actions = np.zeros((states.shape[0], action_dim))
    for head, actor in actors:
        actions[:, head.action_slice] = actor(states[:, head.obs_slice])
    return actions


def td_targets(rewards: np.ndarray, next_q: np.ndarray, discount: float) -> np.ndarray:
    """One-step bootstrapped targets ``r + discount * Q'(s', a')``."""
    return np.asarray(rewards, dtype=float) + discount * np.asarray(next_q, dtype=float)


def critic_q(critic: Mlp, state_dim: int) -> QFunction:
    """Wrap a critic network as a ``QFunction``."""

    def evaluate(states: np.ndarray, actions: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        q, cache = mlp_forward(critic, np.hstack([states, actions]))
        _, grad_input = mlp_backward(critic, cache, np.ones_like(q))
        return q[:, 0], grad_input[:, state_dim:]

    return evaluate


def critic_loss(bundle: AgentBundle, batch: Batch, target_actors: ActorSet, discount: float) -> Tuple[float, Params]:
    """Mean squared TD error and its gradient with respect to the critic parameters.

    Targets come from the lagged networks and are held fixed.
    """
    action_dim = batch.actions.shape[1]
    next_actions = joint_action(target_actors, batch.next_states, action_dim)
    next_q = bundle.target_critic(np.hstack([batch.next_states, next_actions]))[:, 0]
    targets = td_targets(batch.rewards, next_q, discount)

    q, cache = mlp_forward(bundle.critic, np.hstack([batch.states, batch.actions]))
    residual = q[:, 0] - targets
    loss = float(np.mean(residual**2))
    grads, _ = mlp_backward(bundle.critic, cache, (2.0 / len(batch)) * residual[:, None])
    return loss, grads


def critic_update(bundle: AgentBundle, batch: Batch, target_actors: ActorSet, discount: float) -> float:
    """One Adam step on the mean squared TD error; returns the loss before the step."""
    loss, grads = critic_loss(bundle, batch, target_actors, discount)
    adam_step(bundle.critic_opt, bundle.critic.params, grads)
    return loss


def policy_gradient(
    bundle: AgentBundle,
    batch: Batch,
    current_actors: ActorSet,
    q_fn: Optional[QFunction] = None,
) -> Params:
    """Gradient of ``-mean Q`` with respect to the agent's actor parameters.

    Other agents' slots come from ``current_actors``; only the agent's own
    slot is recomputed through its live actor and differentiated.
    """
    head = bundle.head
    state_dim = batch.states.shape[1]
    actions = joint_action(current_actors, batch.states, batch.actions.shape[1])
    own, cache = mlp_forward(bundle.actor, batch.states[:, head.obs_slice])
    actions[:, head.action_slice] = own

    q_fn = q_fn or critic_q(bundle.critic, state_dim)
    _, dq_da = q_fn(batch.states, actions)
    grads, _ = mlp_backward(bundle.actor, cache, -dq_da[:, head.action_slice] / len(batch))
    return grads


def actor_update(
    bundle: AgentBundle,
    batch: Batch,
    current_actors: ActorSet,
    q_fn: Optional[QFunction] = None,
) -> float:
    """One Adam ascent step on ``Q`` along the policy gradient; returns the gradient norm."""
    grads = policy_gradient(bundle, batch, current_actors, q_fn)
    norm = float(np.sqrt(sum(float(np.sum(g * g)) for g in grads.values())))
    adam_step(bundle.actor_opt, bundle.actor.params, grads)
    return norm


def snapshot_actors(bundles: Sequence[AgentBundle], *, target: bool = False) -> ActorSet:
    """Frozen copies of every agent's actor (or target actor) paired with its head."""
    return [(b.head, (b.target_actor if target else b.actor).copy()) for b in bundles]
