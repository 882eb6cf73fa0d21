"""Tests for the shared environment and the episode scoring path."""

from __future__ import annotations

import math

import numpy as np
import pandas as pd
import pytest

from computing.offload import combine
from environment.episode import EpisodeRecorder, MetricsError, metrics_frame, run_episode, smooth_metrics
from environment.jccra_env import Action, EnvironmentStateError, JccraEnv, cooperative_reward
from radio.scenario import generate_scenario


@pytest.fixture()
def env(small_scenario, small_config) -> JccraEnv:
    return JccraEnv(small_scenario, small_config, seed=5)


def constant_policy(alpha: float, eta: float):
    def policy(observations):
        return np.tile([alpha, eta], (len(observations), 1))

    return policy


def test_reset_observations(env: JccraEnv, small_config) -> None:
    observations = env.reset()
    assert len(observations) == small_config.num_users
    for obs in observations:
        assert obs.prev_rate_bps == 0.0
        assert 2500.0 <= obs.task_bits <= 7500.0
        assert obs.deadline_s == pytest.approx(1e-3)
        assert obs.vector.shape == (3,)
        assert np.all((obs.vector >= 0) & (obs.vector <= 1))


def test_same_seed_same_first_observations(small_scenario, small_config) -> None:
    first = JccraEnv(small_scenario, small_config).reset(seed=9)
    second = JccraEnv(small_scenario, small_config).reset(seed=9)
    assert [o.task_bits for o in first] == [o.task_bits for o in second]


def test_step_contract(env: JccraEnv, small_config) -> None:
    env.reset()
    observations, rewards, outcome, done = env.step(np.full((small_config.num_users, 2), 0.5))
    assert rewards.shape == (small_config.num_users,)
    assert np.all(rewards == rewards[0])
    assert rewards[0] <= 0.0
    assert outcome.num_users == small_config.num_users
    assert not done
    for obs, rate in zip(observations, outcome.rate_bps):
        assert obs.prev_rate_bps == pytest.approx(rate)


def test_episode_runs_exactly_horizon_steps(env: JccraEnv) -> None:
    env.reset()
    flags = [env.step(np.full((env.num_users, 2), 0.5))[3] for _ in range(env.horizon)]
    assert flags == [False] * (env.horizon - 1) + [True]
    with pytest.raises(EnvironmentStateError):
        env.step(np.full((env.num_users, 2), 0.5))


def test_step_before_reset_rejected(small_scenario, small_config) -> None:
    fresh = JccraEnv(small_scenario, small_config)
    with pytest.raises(EnvironmentStateError):
        fresh.step(np.zeros((small_config.num_users, 2)))
    with pytest.raises(EnvironmentStateError):
        fresh.full_state()


def test_actions_are_clipped(small_scenario, small_config) -> None:
    wild = JccraEnv(small_scenario, small_config, seed=1)
    tame = JccraEnv(small_scenario, small_config, seed=1)
    wild.reset()
    tame.reset()
    k = small_config.num_users
    _, wild_rewards, _, _ = wild.step(np.tile([1.7, -0.4], (k, 1)))
    _, tame_rewards, _, _ = tame.step(np.tile([1.0, 0.0], (k, 1)))
    np.testing.assert_array_equal(wild_rewards, tame_rewards)


def test_accepts_action_objects(env: JccraEnv) -> None:
    env.reset()
    _, rewards, _, _ = env.step([Action(alpha=1.0, eta=0.5)] * env.num_users)
    assert rewards.shape == (env.num_users,)


def test_full_state_layout(env: JccraEnv) -> None:
    observations = env.reset()
    state = env.full_state()
    assert state.shape == (env.num_users * 3,)
    np.testing.assert_array_equal(state[3:6], observations[1].vector)
    np.testing.assert_array_equal(env.full_state(), state)


def test_reward_all_met() -> None:
    outcome = combine(
        np.ones(2), np.full(2, 5e-4), np.array([1e-3, 1e-3]), np.zeros(2), np.zeros(2), np.zeros(2), np.zeros(2), 1e-3
    )
    assert cooperative_reward(outcome) == pytest.approx(-2.0)


def test_reward_penalises_misses() -> None:
    outcome = combine(
        np.ones(3),
        np.array([5e-4, 5e-4, 5e-4]),
        np.array([1e-3, 5e-4, 5e-4]),
        np.zeros(3),
        np.zeros(3),
        np.array([math.inf, 0.0, 0.0]),
        np.zeros(3),
        1e-3,
    )
    assert cooperative_reward(outcome) == pytest.approx(-11.0)


def naive_reward(energies, met, miss_penalty: float = 10.0, energy_scale: float = 1e3) -> float:
    total = 0.0
    for energy, ok in zip(energies, met):
        total += energy * (1.0 if ok else miss_penalty)
    return -total * energy_scale


def test_reward_matches_scalar_oracle_on_random_outcomes() -> None:
    rng = np.random.default_rng(30)
    mixed = 0
    for _ in range(150):
        users = int(rng.integers(1, 11))
        t_local = rng.uniform(0.0, 1e-3, users)
        t_offload = np.where(rng.random(users) < 0.1, math.inf, 10 ** rng.uniform(-5, -2.5, users))
        e_local = rng.uniform(0.0, 1e-3, users)
        e_offload = rng.uniform(0.0, 1e-5, users)
        outcome = combine(np.ones(users), t_local, e_local, t_offload, np.zeros(users), t_offload, e_offload, 1e-3)
        penalty = float(rng.uniform(1.0, 20.0))
        scale = float(rng.choice([1.0, 1e3]))
        expected = naive_reward(e_local + e_offload, np.maximum(t_local, t_offload) <= 1e-3, penalty, scale)
        got = cooperative_reward(outcome, penalty, scale)
        assert got == pytest.approx(expected, rel=1e-10, abs=0.0)
        mixed += 0 < outcome.deadline_met.sum() < users
    assert mixed > 0


def test_step_reward_matches_scalar_oracle(env: JccraEnv, small_config) -> None:
    rng = np.random.default_rng(31)
    env.reset()
    for _ in range(100):
        _, rewards, outcome, done = env.step(rng.random((small_config.num_users, 2)))
        if done:
            env.reset()
        expected = naive_reward(outcome.e_total_j, outcome.deadline_met)
        np.testing.assert_allclose(rewards, expected, rtol=1e-10, atol=0.0)


def test_silent_idle_user_misses_at_zero_cost(small_config) -> None:
    config = small_config.replace(num_aps=4, num_users=1)
    single = JccraEnv(generate_scenario(config, seed=0), config, seed=0)
    single.reset()
    _, rewards, outcome, _ = single.step([[0.0, 0.0]])
    assert rewards[0] == 0.0
    assert not outcome.deadline_met[0]


def test_run_episode_counts_every_user_step(env: JccraEnv, small_config) -> None:
    metrics = run_episode(env, constant_policy(1.0, 1.0), episode=3, seed=2)
    assert metrics.episode == 3
    assert 0.0 <= metrics.success_rate <= 1.0
    assert metrics.reward <= 0.0
    assert metrics.mean_energy_j > 0.0


def test_full_offload_without_power_never_succeeds(env: JccraEnv) -> None:
    metrics = run_episode(env, constant_policy(0.0, 0.0), episode=0, seed=2)
    assert metrics.success_rate == 0.0
    assert math.isnan(metrics.mean_latency_s)


def test_recorder_skips_infinite_latency() -> None:
    recorder = EpisodeRecorder()
    outcome = combine(
        np.ones(2), np.array([4e-4, 2e-4]), np.full(2, 1e-4), np.zeros(2), np.zeros(2),
        np.array([math.inf, 0.0]), np.zeros(2), 1e-3,
    )
    recorder.record(outcome, -1.0)
    recorder.record(outcome, -1.0)
    metrics = recorder.finish(0)
    assert metrics.success_rate == pytest.approx(0.5)
    assert metrics.mean_latency_s == pytest.approx(2e-4)
    assert metrics.mean_energy_j == pytest.approx(1e-4)
    assert metrics.reward == pytest.approx(-2.0)
    assert recorder.steps_recorded == 0


def test_recorder_without_steps_rejected() -> None:
    with pytest.raises(MetricsError):
        EpisodeRecorder().finish(0)


def test_smooth_metrics_trailing_mean() -> None:
    frame = pd.DataFrame(
        {
            "episode": [0, 1, 2, 3],
            "reward": [-4.0, -2.0, -6.0, 0.0],
            "success_rate": [0.0, 1.0, 1.0, 1.0],
            "mean_energy_j": [1.0, 1.0, 1.0, 1.0],
            "mean_latency_s": [1.0, 1.0, 1.0, 1.0],
        }
    )
    smoothed = smooth_metrics(frame, window=2)
    assert smoothed["reward"].tolist() == [-4.0, -3.0, -4.0, -3.0]
    assert smoothed["episode"].tolist() == [0, 1, 2, 3]


def test_metrics_frame_empty_has_columns() -> None:
    assert list(metrics_frame([]).columns) == ["episode", "reward", "success_rate", "mean_energy_j", "mean_latency_s"]
