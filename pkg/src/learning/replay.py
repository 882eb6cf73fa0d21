"""Fixed-capacity circular replay buffer of ``(state, joint action, reward, next state)``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ReplayBufferError(RuntimeError):
    """Raised when the buffer cannot serve a request."""


@dataclass(frozen=True)
class Batch:
    """A minibatch of transitions stacked along axis 0."""

    states: np.ndarray
    actions: np.ndarray
    rewards: np.ndarray
    next_states: np.ndarray

    def __len__(self) -> int:
        return int(self.rewards.shape[0])


class ReplayBuffer:
    """Overwrites the oldest transition once ``capacity`` is reached."""

    def __init__(self, capacity: int, state_dim: int, action_dim: int) -> None:
        if capacity < 1:
            raise ValueError("capacity must be at least 1")
        self.capacity = capacity
        self._states = np.zeros((capacity, state_dim))
        self._actions = np.zeros((capacity, action_dim))
        self._rewards = np.zeros(capacity)
        self._next_states = np.zeros((capacity, state_dim))
        self._cursor = 0
        self._size = 0

    def __len__(self) -> int:
        return self._size

    @property
    def cursor(self) -> int:
        return self._cursor

    def add(self, state: np.ndarray, action: np.ndarray, reward: float, next_state: np.ndarray) -> None:
        slot = self._cursor
        self._states[slot] = state
        self._actions[slot] = action
        self._rewards[slot] = reward
        self._next_states[slot] = next_state
        self._cursor = (slot + 1) % self.capacity
        self._size = min(self._size + 1, self.capacity)

    def sample(self, batch_size: int, rng: np.random.Generator) -> Batch:
        """Uniform minibatch, no index repeated within the batch."""
        if batch_size < 1:
            raise ValueError("batch_size must be at least 1")
        if self._size < batch_size:
            raise ReplayBufferError(f"Buffer holds {self._size} transitions; cannot sample a batch of {batch_size}.")
        indices = rng.choice(self._size, size=batch_size, replace=False)
        return Batch(
            states=self._states[indices],
            actions=self._actions[indices],
            rewards=self._rewards[indices],
            next_states=self._next_states[indices],
        )
