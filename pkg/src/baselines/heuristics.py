"""Rule-based allocations: fractional power control with fixed local-clock choices."""

from __future__ import annotations

from typing import Callable, Dict, Sequence

import numpy as np

from environment.jccra_env import Action, Observation
from radio.scenario import NetworkScenario
from system_config import FpcConfig, SystemConfig

HEURISTICS = ("offload_first", "local_first")


def fpc_power(lambda_k: float, cfg: FpcConfig, p_max_w: float) -> float:
    """``min(p_max, p0 * lambda_k ** -nu)``: weaker aggregate channels transmit louder."""
    if lambda_k <= 0:
        raise ValueError(f"aggregate gain must be positive, got {lambda_k}")
    return float(min(p_max_w, cfg.p0_w * lambda_k ** (-cfg.nu)))


def _fpc_eta(obs: Observation, scenario: NetworkScenario, cfg: SystemConfig) -> float:
    power = fpc_power(scenario.aggregate_gain(obs.user_index), cfg.fpc(), cfg.max_ul_power_w)
    return power / cfg.max_ul_power_w


def offloading_first_action(obs: Observation, scenario: NetworkScenario, cfg: SystemConfig) -> Action:
    """Send the whole task to the edge at the FPC power."""
    return Action(alpha=0.0, eta=_fpc_eta(obs, scenario, cfg))


def local_first_action(obs: Observation, scenario: NetworkScenario, cfg: SystemConfig) -> Action:
    """Run the device at full clock and offload any remainder at the FPC power."""
    return Action(alpha=1.0, eta=_fpc_eta(obs, scenario, cfg))


_RULES: Dict[str, Callable[[Observation, NetworkScenario, SystemConfig], Action]] = {
    "offload_first": offloading_first_action,
    "local_first": local_first_action,
}


class HeuristicPolicy:
    """Apply one rule to every user's observation."""

    def __init__(self, name: str, scenario: NetworkScenario, config: SystemConfig) -> None:
        if name not in _RULES:
            raise ValueError(f"Unknown heuristic '{name}'. Expected one of: {', '.join(HEURISTICS)}.")
        self.name = name
        self.scenario = scenario
        self.config = config
        self._rule = _RULES[name]

    def __call__(self, observations: Sequence[Observation]) -> np.ndarray:
        return np.stack([self._rule(obs, self.scenario, self.config).as_array() for obs in observations])
