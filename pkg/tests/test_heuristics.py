"""Tests for fractional power control and the rule-based allocations."""

from __future__ import annotations

import numpy as np
import pytest

from baselines.heuristics import (
    HeuristicPolicy,
    fpc_power,
    local_first_action,
    offloading_first_action,
)
from computing.offload import split_task
from environment.jccra_env import Observation
from system_config import FpcConfig, SystemConfig

FPC = FpcConfig(p0_w=3.162e-7, nu=0.5)


def observation(user: int = 0, bits: float = 7500.0) -> Observation:
    return Observation(user_index=user, task_bits=bits, deadline_s=1e-3, prev_rate_bps=0.0, vector=np.zeros(3))


def test_fpc_example() -> None:
    assert fpc_power(1e-10, FPC, 0.1) == pytest.approx(0.03162, rel=1e-6)


def test_fpc_without_compensation_is_p0() -> None:
    assert fpc_power(1e-12, FpcConfig(p0_w=0.02, nu=0.0), 0.1) == pytest.approx(0.02)


def test_fpc_clamps_at_max_power() -> None:
    assert fpc_power(1e-14, FPC, 0.1) == 0.1


def test_fpc_nonincreasing_in_gain() -> None:
    gains = np.logspace(-16, -6, 60)
    powers = [fpc_power(g, FPC, 0.1) for g in gains]
    assert all(a >= b for a, b in zip(powers, powers[1:]))


def test_fpc_rejects_non_positive_gain() -> None:
    with pytest.raises(ValueError):
        fpc_power(0.0, FPC, 0.1)


def test_fpc_matches_naive_formula() -> None:
    rng = np.random.default_rng(0)
    for _ in range(100):
        lam = 10 ** rng.uniform(-15, -5)
        p0 = 10 ** rng.uniform(-9, -3)
        nu = rng.uniform(0, 1)
        expected = min(0.1, p0 * lam ** (-nu))
        assert fpc_power(lam, FpcConfig(p0_w=p0, nu=nu), 0.1) == pytest.approx(expected, rel=1e-10)


def test_rules_share_the_fpc_power(small_scenario, small_config) -> None:
    for user in range(small_config.num_users):
        expected = fpc_power(small_scenario.aggregate_gain(user), small_config.fpc(), small_config.max_ul_power_w)
        offload = offloading_first_action(observation(user), small_scenario, small_config)
        local = local_first_action(observation(user), small_scenario, small_config)
        assert offload.alpha == 0.0
        assert local.alpha == 1.0
        assert offload.eta == pytest.approx(expected / small_config.max_ul_power_w)
        assert local.eta == offload.eta


def test_offload_first_ignores_task_size(small_scenario, small_config) -> None:
    small = offloading_first_action(observation(bits=2500), small_scenario, small_config)
    large = offloading_first_action(observation(bits=7500), small_scenario, small_config)
    assert small == large


def test_local_first_offloads_the_remainder() -> None:
    split = split_task(np.array([7500.0]), np.array([1.0]), SystemConfig().compute(), np.array([1e-3]))
    assert split.local_bits[0] == pytest.approx(2000.0)
    assert split.offload_bits[0] == pytest.approx(5500.0)


def test_policy_returns_one_row_per_user(small_scenario, small_config) -> None:
    policy = HeuristicPolicy("local_first", small_scenario, small_config)
    actions = policy([observation(k) for k in range(small_config.num_users)])
    assert actions.shape == (small_config.num_users, 2)
    np.testing.assert_array_equal(actions[:, 0], 1.0)


def test_unknown_heuristic(small_scenario, small_config) -> None:
    with pytest.raises(ValueError):
        HeuristicPolicy("round_robin", small_scenario, small_config)
