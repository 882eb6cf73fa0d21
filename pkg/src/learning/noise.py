"""Decaying Gaussian exploration noise."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GaussianNoise:
    """Zero-mean noise whose scale shrinks geometrically per episode down to a floor."""

    sigma0: float = 0.2
    decay: float = 0.9995
    floor: float = 0.01

    def __post_init__(self) -> None:
        if self.sigma0 < 0 or self.floor < 0:
            raise ValueError("noise scales must be non-negative")
        if not 0.0 < self.decay <= 1.0:
            raise ValueError("decay must lie in (0, 1]")

    def sigma(self, episode: int) -> float:
        return max(self.floor, self.sigma0 * self.decay**episode)

    def sample(self, rng: np.random.Generator, size: int, episode: int) -> np.ndarray:
        return rng.normal(0.0, self.sigma(episode), size=size)
