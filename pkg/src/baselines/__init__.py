"""Non-learning reference policies."""

from .heuristics import (
    HEURISTICS,
    HeuristicPolicy,
    fpc_power,
    local_first_action,
    offloading_first_action,
)

__all__ = ["HEURISTICS", "HeuristicPolicy", "fpc_power", "local_first_action", "offloading_first_action"]
