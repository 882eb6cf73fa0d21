"""Tests for the partial-offloading latency and energy model."""

from __future__ import annotations

import math
from dataclasses import replace

import numpy as np
import pytest

from computing.offload import (
    combine,
    edge_allocation,
    evaluate_allocation,
    local_cost,
    offload_cost,
    split_task,
)
from system_config import SystemConfig

CFG = replace(SystemConfig().compute(), deadline_s=1e-3)


def test_split_at_full_clock() -> None:
    split = split_task(5000.0, 1.0, CFG)
    assert split.local_bits == pytest.approx(2000.0)
    assert split.offload_bits == pytest.approx(3000.0)


def test_split_idle_device_offloads_everything() -> None:
    split = split_task(5000.0, 0.0, CFG)
    assert split.local_bits == 0.0
    assert split.offload_bits == 5000.0


def test_split_small_task_stays_local() -> None:
    split = split_task(1000.0, 1.0, CFG)
    assert split.local_bits == pytest.approx(1000.0)
    assert split.offload_bits == 0.0


def test_split_conserves_bits() -> None:
    rng = np.random.default_rng(0)
    tasks = rng.uniform(2500, 7500, size=500)
    split = split_task(tasks, rng.random(500), CFG)
    np.testing.assert_array_equal(split.local_bits + split.offload_bits, tasks)


def test_local_cost_examples() -> None:
    t, e = local_cost(split_task(2000.0, 1.0, CFG), CFG)
    assert t == pytest.approx(1e-3)
    assert e == pytest.approx(1e-3)
    _, e = local_cost(split_task(2500.0, 1.0, CFG, deadline_s=2e-3), CFG, deadline_s=2e-3)
    assert e == pytest.approx(1.25e-3)


def test_local_cost_idle() -> None:
    t, e = local_cost(split_task(3000.0, 0.0, CFG), CFG)
    assert t == 0.0 and e == 0.0


def test_local_energy_grows_with_clock() -> None:
    alphas = np.linspace(0.3, 1.0, 8)
    splits = split_task(np.full(8, 100.0), alphas, CFG)
    _, energy = local_cost(splits, CFG)
    assert np.all(np.diff(energy) > 0)


def test_local_leg_never_exceeds_deadline() -> None:
    rng = np.random.default_rng(1)
    t, _ = local_cost(split_task(rng.uniform(0, 1e4, 300), rng.random(300), CFG), CFG)
    assert np.all(t <= CFG.deadline_s)


def test_edge_allocation_is_proportional() -> None:
    np.testing.assert_allclose(edge_allocation(np.array([3000.0, 1000.0]), 100e9), [75e9, 25e9])
    np.testing.assert_allclose(edge_allocation(np.array([0.0, 10.0, 0.0]), 100e9), [0.0, 100e9, 0.0])
    np.testing.assert_array_equal(edge_allocation(np.zeros(3), 100e9), np.zeros(3))


def test_edge_allocation_uses_whole_server() -> None:
    bits = np.random.default_rng(2).uniform(0, 5000, size=10)
    assert edge_allocation(bits, 100e9).sum() == pytest.approx(100e9)


def test_offload_cost_example() -> None:
    t_tr, t_comp, t_off, e_off = offload_cost(3000.0, 30e6, 100e9, 0.05, CFG)
    assert t_tr == pytest.approx(1e-4)
    assert t_comp == pytest.approx(1.5e-5)
    assert t_off == pytest.approx(1.15e-4)
    assert e_off == pytest.approx(5e-6)


def test_offload_cost_nothing_to_send() -> None:
    assert [float(v) for v in offload_cost(0.0, 0.0, 0.0, 0.1, CFG)] == [0.0, 0.0, 0.0, 0.0]


def test_doubling_rate_halves_airtime_and_energy() -> None:
    slow = offload_cost(3000.0, 10e6, 50e9, 0.05, CFG)
    fast = offload_cost(3000.0, 20e6, 50e9, 0.05, CFG)
    assert fast[0] == pytest.approx(slow[0] / 2)
    assert fast[3] == pytest.approx(slow[3] / 2)


def test_zero_rate_is_infeasible_and_charged_a_slot() -> None:
    t_tr, _, t_off, e_off = offload_cost(3000.0, 0.0, 50e9, 0.05, CFG)
    assert math.isinf(t_tr) and math.isinf(t_off)
    assert e_off == pytest.approx(0.05 * CFG.step_s)


def test_combine_takes_slowest_leg() -> None:
    outcome = combine(30e6, 1e-3, 1e-3, 1e-4, 1.5e-5, 1.15e-4, 5e-6, 1e-3)
    assert outcome.t_total_s == pytest.approx(1e-3)
    assert outcome.e_total_j == pytest.approx(1.005e-3)
    assert bool(outcome.deadline_met)


def test_combine_idle_user_meets_deadline() -> None:
    outcome = combine(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1e-3)
    assert outcome.t_total_s == 0.0 and bool(outcome.deadline_met)


def test_combine_infeasible_offload_misses() -> None:
    outcome = combine(0.0, 0.5e-3, 1e-4, math.inf, 0.0, math.inf, 5e-5, 1e-3)
    assert not bool(outcome.deadline_met)


def naive_energy(task: float, alpha: float, power: float, rate: float, f_cpu: float) -> float:
    f_local = alpha * CFG.f_local_max_hz
    local = min(task, CFG.deadline_s * f_local / CFG.cycles_per_bit)
    offload = task - local
    e_local = CFG.kappa * local * CFG.cycles_per_bit * f_local**2
    e_off = power * offload / rate if offload > 0 else 0.0
    return e_local + e_off


def test_alpha_grid_matches_naive_evaluation() -> None:
    rng = np.random.default_rng(3)
    for _ in range(20):
        task = float(rng.uniform(2500, 7500))
        power = float(rng.uniform(0.01, 0.1))
        rate = float(rng.uniform(5e6, 50e6))
        grid = np.linspace(0.0, 1.0, 101)
        energies = []
        for alpha in grid:
            outcome = evaluate_allocation(np.array([task]), np.array([alpha]), np.array([power]), np.array([rate]), CFG)
            energies.append(float(outcome.e_total_j[0]))
        expected = [naive_energy(task, a, power, rate, CFG.f_edge_hz) for a in grid]
        np.testing.assert_allclose(energies, expected, rtol=1e-10)
        assert int(np.argmin(energies)) == int(np.argmin(expected))


def test_outcome_frame_has_one_row_per_user() -> None:
    outcome = evaluate_allocation(
        np.array([3000.0, 6000.0]), np.array([1.0, 0.5]), np.array([0.1, 0.1]), np.array([2e7, 1e7]), CFG
    )
    frame = outcome.to_frame()
    assert len(frame) == 2
    assert {"t_total_s", "e_total_j", "deadline_met"} <= set(frame.columns)


def naive_offload(bits: float, rate: float, f_cpu: float, power: float, cfg=CFG) -> tuple:
    if bits <= 0:
        return 0.0, 0.0, 0.0, 0.0
    t_tr = bits / rate if rate > 0 else math.inf
    t_comp = bits * cfg.cycles_per_bit / f_cpu if f_cpu > 0 else math.inf
    t_off = t_tr + t_comp
    if math.isinf(t_off):
        return t_tr, t_comp, t_off, (power * cfg.step_s if cfg.charge_infeasible_slot else 0.0)
    return t_tr, t_comp, t_off, power * t_tr


def naive_step(tasks, alphas, powers, rates, cfg=CFG) -> list:
    """Per-user (t_total, e_total, met) worked out one user at a time."""
    f_locals = [a * cfg.f_local_max_hz for a in alphas]
    locals_ = [min(t, cfg.deadline_s * f / cfg.cycles_per_bit) for t, f in zip(tasks, f_locals)]
    offloads = [t - loc for t, loc in zip(tasks, locals_)]
    sent = sum(offloads)
    rows = []
    for task_local, off, f_local, power, rate in zip(locals_, offloads, f_locals, powers, rates):
        f_cpu = cfg.f_edge_hz * off / sent if sent > 0 else 0.0
        cycles = task_local * cfg.cycles_per_bit
        t_local = min(cycles / f_local, cfg.deadline_s) if task_local > 0 else 0.0
        e_local = cfg.kappa * cycles * f_local**2
        _, _, t_off, e_off = naive_offload(off, rate, f_cpu, power, cfg)
        t_total = max(t_local, t_off)
        rows.append((t_total, e_local + e_off, t_total <= cfg.deadline_s))
    return rows


def test_offload_cost_matches_scalar_oracle_on_random_instances() -> None:
    rng = np.random.default_rng(20)
    infeasible = 0
    for charge in (True, False):
        cfg = replace(CFG, charge_infeasible_slot=charge)
        for _ in range(100):
            bits = float(rng.choice([0.0, rng.uniform(1.0, 7500.0)], p=[0.1, 0.9]))
            rate = float(rng.choice([0.0, 10 ** rng.uniform(4, 8)], p=[0.15, 0.85]))
            f_cpu = float(rng.choice([0.0, rng.uniform(1e9, 100e9)], p=[0.1, 0.9]))
            power = float(rng.uniform(0.0, 0.1))
            got = [float(v) for v in offload_cost(bits, rate, f_cpu, power, cfg)]
            expected = naive_offload(bits, rate, f_cpu, power, cfg)
            np.testing.assert_allclose(got, expected, rtol=1e-10, atol=0.0)
            infeasible += math.isinf(expected[2])
    assert infeasible > 0


def test_offload_cost_vectorized_matches_scalar_oracle() -> None:
    rng = np.random.default_rng(21)
    bits = rng.uniform(0.0, 7500.0, 120) * (rng.random(120) > 0.1)
    rates = 10 ** rng.uniform(4, 8, 120) * (rng.random(120) > 0.15)
    f_cpu = rng.uniform(1e9, 100e9, 120)
    powers = rng.uniform(0.0, 0.1, 120)
    got = np.stack(offload_cost(bits, rates, f_cpu, powers, CFG), axis=1)
    expected = np.array([naive_offload(*row) for row in zip(bits, rates, f_cpu, powers)])
    np.testing.assert_allclose(got, expected, rtol=1e-10, atol=0.0)


def test_combine_matches_scalar_oracle_on_random_instances() -> None:
    rng = np.random.default_rng(22)
    misses = 0
    for _ in range(150):
        t_local = float(rng.uniform(0.0, 1e-3))
        e_local = float(rng.uniform(0.0, 1e-3))
        t_tr = float(rng.choice([math.inf, 10 ** rng.uniform(-6, -2)], p=[0.1, 0.9]))
        t_comp = float(rng.uniform(0.0, 1e-4))
        e_offload = float(rng.uniform(0.0, 1e-4))
        deadline = float(rng.uniform(0.5e-3, 2e-3))
        outcome = combine(1e6, t_local, e_local, t_tr, t_comp, t_tr + t_comp, e_offload, deadline)
        t_total = max(t_local, t_tr + t_comp)
        np.testing.assert_allclose(float(outcome.t_total_s), t_total, rtol=1e-10, atol=0.0)
        np.testing.assert_allclose(float(outcome.e_total_j), e_local + e_offload, rtol=1e-10, atol=0.0)
        assert bool(outcome.deadline_met) == (t_total <= deadline)
        misses += not bool(outcome.deadline_met)
    assert 0 < misses < 150


def test_step_latency_and_energy_match_scalar_oracle_on_random_networks() -> None:
    rng = np.random.default_rng(23)
    outcomes = {"met": 0, "missed": 0, "infeasible": 0}
    for _ in range(120):
        users = int(rng.integers(1, 6))
        tasks = rng.uniform(2500.0, 7500.0, users)
        alphas = rng.random(users) * (rng.random(users) > 0.2)
        powers = rng.uniform(0.001, 0.1, users)
        rates = 10 ** rng.uniform(5, 8, users) * (rng.random(users) > 0.1)
        outcome = evaluate_allocation(tasks, alphas, powers, rates, CFG)
        expected = naive_step(tasks, alphas, powers, rates)
        np.testing.assert_allclose(outcome.t_total_s, [row[0] for row in expected], rtol=1e-10, atol=0.0)
        np.testing.assert_allclose(outcome.e_total_j, [row[1] for row in expected], rtol=1e-10, atol=0.0)
        np.testing.assert_array_equal(outcome.deadline_met, [row[2] for row in expected])
        for t_total, _, met in expected:
            outcomes["met" if met else "missed"] += 1
            outcomes["infeasible"] += math.isinf(t_total)
    assert all(count > 0 for count in outcomes.values())
