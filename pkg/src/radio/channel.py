"""Small-scale Rayleigh fading and least-squares channel estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from system_config import RadioConfig

from .scenario import NetworkScenario


@dataclass(frozen=True)
class ChannelRealization:
    """Per-step fades ``h``, true channels ``g`` and LS estimates ``g_hat`` (all ``(M, K)``)."""

    h: np.ndarray
    g: np.ndarray
    g_hat: np.ndarray


def estimation_noise_variance(radio: RadioConfig) -> float:
    """Variance of the LS estimation error, sigma^2 / (tau_p * q_p).

    Under orthonormal pilots the despread pilot observation of user ``k`` at
    AP ``m`` is ``g_mk`` plus white noise of exactly this variance.
    """
    if math.isinf(radio.pilot_power_w):
        return 0.0
    return radio.noise_power_w / (radio.pilot_len * radio.pilot_power_w)


def draw_channels(
    scenario: NetworkScenario,
    radio: RadioConfig,
    rng: np.random.Generator,
) -> ChannelRealization:
    """Draw one coherence block of fading and the matching LS estimates."""
    shape = scenario.beta.shape
    h = _complex_normal(rng, shape)
    g = np.sqrt(scenario.beta) * h
    error = math.sqrt(estimation_noise_variance(radio)) * _complex_normal(rng, shape)
    return ChannelRealization(h=h, g=g, g_hat=g + error)


def _complex_normal(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """Circularly-symmetric CN(0, 1) samples."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)
