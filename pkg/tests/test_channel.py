"""Statistical checks of the fading and channel-estimate draws."""

from __future__ import annotations

import math
from dataclasses import replace

import numpy as np
import pytest

from radio.channel import draw_channels, estimation_noise_variance
from radio.scenario import NetworkScenario


@pytest.fixture(scope="module")
def wide_scenario() -> NetworkScenario:
    num_aps, num_users = 1000, 1000
    beta = np.full((num_aps, num_users), 1e-3)
    return NetworkScenario(
        ap_positions=np.zeros((num_aps, 2)),
        user_positions=np.zeros((num_users, 2)),
        beta=beta,
        clusters=np.arange(num_aps).reshape(-1, 1)[:num_users],
    )


def test_fading_is_unit_variance(wide_scenario, small_config) -> None:
    channels = draw_channels(wide_scenario, small_config.radio(), np.random.default_rng(0))
    assert np.var(channels.h.real) == pytest.approx(0.5, rel=0.01)
    assert np.mean(np.abs(channels.h) ** 2) == pytest.approx(1.0, rel=0.01)


def test_estimation_error_variance(wide_scenario, small_config) -> None:
    radio = replace(small_config.radio(), pilot_power_w=1e-12)
    channels = draw_channels(wide_scenario, radio, np.random.default_rng(1))
    error = channels.g_hat - channels.g
    expected = radio.noise_power_w / (radio.pilot_len * radio.pilot_power_w)
    assert estimation_noise_variance(radio) == pytest.approx(expected)
    assert np.mean(np.abs(error) ** 2) == pytest.approx(expected, rel=0.02)


def test_true_channel_scales_with_beta(wide_scenario, small_config) -> None:
    channels = draw_channels(wide_scenario, small_config.radio(), np.random.default_rng(2))
    assert np.mean(np.abs(channels.g) ** 2) == pytest.approx(1e-3, rel=0.01)


def test_infinite_pilot_power_gives_perfect_estimates(small_scenario, small_config) -> None:
    radio = replace(small_config.radio(), pilot_power_w=math.inf)
    channels = draw_channels(small_scenario, radio, np.random.default_rng(3))
    np.testing.assert_array_equal(channels.g_hat, channels.g)


def test_same_generator_state_same_draw(small_scenario, small_config) -> None:
    first = draw_channels(small_scenario, small_config.radio(), np.random.default_rng(4))
    second = draw_channels(small_scenario, small_config.radio(), np.random.default_rng(4))
    np.testing.assert_array_equal(first.g_hat, second.g_hat)
