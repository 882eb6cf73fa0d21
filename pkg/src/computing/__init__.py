"""Parallel local/edge computation model: task splits, latency and energy."""

from .offload import (
    StepOutcome,
    TaskSplit,
    combine,
    edge_allocation,
    evaluate_allocation,
    local_cost,
    offload_cost,
    split_task,
)

__all__ = [
    "StepOutcome",
    "TaskSplit",
    "combine",
    "edge_allocation",
    "evaluate_allocation",
    "local_cost",
    "offload_cost",
    "split_task",
]
