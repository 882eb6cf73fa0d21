"""Exploration-free execution of trained actors."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from environment.jccra_env import ACTION_DIM, Observation

from .mlp import Mlp


class DecentralizedPolicy:
    """One actor per user; each actor sees only its own observation."""

    def __init__(self, actors: Sequence[Mlp]) -> None:
        self.actors = list(actors)

    def __call__(self, observations: Sequence[Observation]) -> np.ndarray:
        if len(observations) != len(self.actors):
            raise ValueError(f"Expected {len(self.actors)} observations, got {len(observations)}.")
        return np.stack([np.clip(actor(obs.vector), 0.0, 1.0) for actor, obs in zip(self.actors, observations)])


class CentralizedPolicy:
    """A single actor mapping the concatenated observations to every user's action."""

    def __init__(self, actor: Mlp) -> None:
        self.actor = actor

    def __call__(self, observations: Sequence[Observation]) -> np.ndarray:
        state = np.concatenate([obs.vector for obs in observations])
        return np.clip(self.actor(state), 0.0, 1.0).reshape(-1, ACTION_DIM)
