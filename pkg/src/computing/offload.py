"""Latency and energy of partial offloading with a shared edge server.

All functions broadcast over numpy arrays, so the same code scores a single
user (scalars) or the whole network in one call (length-K vectors).
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Optional, Tuple

import numpy as np
import pandas as pd

from system_config import ComputeConfig


@dataclass(frozen=True)
class TaskSplit:
    """Bits kept on the device, bits sent to the edge, and the device clock."""

    local_bits: np.ndarray
    offload_bits: np.ndarray
    f_local_hz: np.ndarray


@dataclass(frozen=True)
class StepOutcome:
    """Per-user timing and energy of one time step."""

    rate_bps: np.ndarray
    t_local_s: np.ndarray
    t_tr_s: np.ndarray
    t_comp_s: np.ndarray
    t_offload_s: np.ndarray
    t_total_s: np.ndarray
    e_local_j: np.ndarray
    e_offload_j: np.ndarray
    e_total_j: np.ndarray
    deadline_met: np.ndarray

    @property
    def num_users(self) -> int:
        return int(np.size(self.e_total_j))

    def to_frame(self) -> pd.DataFrame:
        """One row per user, one column per field."""
        return pd.DataFrame({f.name: np.atleast_1d(getattr(self, f.name)) for f in fields(self)})


def split_task(
    task_bits,
    alpha,
    cfg: ComputeConfig,
    deadline_s: Optional[np.ndarray] = None,
) -> TaskSplit:
    """Keep what the device can finish before the deadline at clock ``alpha * f_max``."""
    deadline = cfg.deadline_s if deadline_s is None else deadline_s
    total = np.asarray(task_bits, dtype=float)
    f_local = np.clip(np.asarray(alpha, dtype=float), 0.0, 1.0) * cfg.f_local_max_hz
    capacity = deadline * f_local / cfg.cycles_per_bit
    local = np.minimum(total, capacity)
    offload = np.maximum(0.0, total - local)
    return TaskSplit(local_bits=local, offload_bits=offload, f_local_hz=f_local)


def local_cost(
    split: TaskSplit,
    cfg: ComputeConfig,
    deadline_s: Optional[np.ndarray] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Return ``(t_local_s, e_local_j)`` for the on-device share."""
    deadline = cfg.deadline_s if deadline_s is None else deadline_s
    cycles = split.local_bits * cfg.cycles_per_bit
    busy = split.local_bits > 0
    duration = np.divide(cycles, split.f_local_hz, out=np.zeros(np.shape(cycles)), where=busy)
    t_local = np.where(busy, np.minimum(duration, deadline), 0.0)
    e_local = cfg.kappa * cycles * split.f_local_hz**2
    return t_local, e_local


def edge_allocation(offload_bits, f_edge_hz: float) -> np.ndarray:
    """Share the edge CPU in proportion to the offloaded bits."""
    bits = np.asarray(offload_bits, dtype=float)
    if np.any(bits < 0):
        raise ValueError("offload_bits must be non-negative")
    total = bits.sum()
    if total <= 0:
        return np.zeros_like(bits)
    return f_edge_hz * bits / total


def offload_cost(
    offload_bits,
    rate_bps,
    f_cpu_hz,
    power_w,
    cfg: ComputeConfig,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(t_tr, t_comp, t_offload, e_offload)`` for the edge share.

    An offload that can never finish (positive bits with zero rate or zero
    edge clock) gets ``t_offload = inf`` and, when
    ``cfg.charge_infeasible_slot`` is set, the transmitter is charged for
    the whole step.
    """
    bits = np.asarray(offload_bits, dtype=float)
    rate = np.asarray(rate_bps, dtype=float)
    f_cpu = np.asarray(f_cpu_hz, dtype=float)
    power = np.asarray(power_w, dtype=float)
    shape = np.broadcast(bits, rate, f_cpu, power).shape
    has_bits = np.broadcast_to(bits > 0, shape)

    t_tr = _guarded_ratio(bits, rate, has_bits, shape)
    t_comp = _guarded_ratio(bits * cfg.cycles_per_bit, f_cpu, has_bits, shape)
    t_offload = t_tr + t_comp

    infeasible = has_bits & ~np.isfinite(t_offload)
    slot_charge = power * cfg.step_s if cfg.charge_infeasible_slot else np.zeros(shape)
    finite_tr = np.where(np.isfinite(t_tr), t_tr, 0.0)
    e_offload = np.where(infeasible, slot_charge, power * finite_tr)
    return t_tr, t_comp, t_offload, e_offload


def combine(
    rate_bps,
    t_local_s,
    e_local_j,
    t_tr_s,
    t_comp_s,
    t_offload_s,
    e_offload_j,
    deadline_s,
) -> StepOutcome:
    """Local and edge legs run in parallel: latency is the max, energy the sum."""
    t_total = np.maximum(t_local_s, t_offload_s)
    return StepOutcome(
        rate_bps=np.asarray(rate_bps, dtype=float),
        t_local_s=np.asarray(t_local_s, dtype=float),
        t_tr_s=np.asarray(t_tr_s, dtype=float),
        t_comp_s=np.asarray(t_comp_s, dtype=float),
        t_offload_s=np.asarray(t_offload_s, dtype=float),
        t_total_s=t_total,
        e_local_j=np.asarray(e_local_j, dtype=float),
        e_offload_j=np.asarray(e_offload_j, dtype=float),
        e_total_j=np.asarray(e_local_j, dtype=float) + np.asarray(e_offload_j, dtype=float),
        deadline_met=t_total <= deadline_s,
    )


def evaluate_allocation(
    task_bits: np.ndarray,
    alpha: np.ndarray,
    powers_w: np.ndarray,
    rates_bps: np.ndarray,
    cfg: ComputeConfig,
) -> StepOutcome:
    """Score one step for every user given the achieved uplink rates."""
    split = split_task(task_bits, alpha, cfg)
    t_local, e_local = local_cost(split, cfg)
    f_cpu = edge_allocation(split.offload_bits, cfg.f_edge_hz)
    t_tr, t_comp, t_offload, e_offload = offload_cost(split.offload_bits, rates_bps, f_cpu, powers_w, cfg)
    return combine(rates_bps, t_local, e_local, t_tr, t_comp, t_offload, e_offload, cfg.deadline_s)


def _guarded_ratio(numerator: np.ndarray, denominator: np.ndarray, active: np.ndarray, shape) -> np.ndarray:
    """``numerator / denominator`` where active, 0 where idle, inf where the divisor is 0."""
    numerator = np.broadcast_to(numerator, shape)
    denominator = np.broadcast_to(denominator, shape)
    feasible = active & (denominator > 0)
    ratio = np.divide(numerator, denominator, out=np.zeros(shape), where=feasible)
    return np.where(active & ~feasible, np.inf, ratio)
