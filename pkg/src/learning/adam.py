"""Bias-corrected Adam over named parameter dicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from .mlp import Params


@dataclass
class AdamState:
    """First and second moment estimates per parameter name plus the step counter."""

    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    step: int = 0
    m: Dict[str, np.ndarray] = field(default_factory=dict)
    v: Dict[str, np.ndarray] = field(default_factory=dict)


def adam_step(state: AdamState, params: Params, grads: Params) -> Params:
    """Apply one descent step to ``params`` in place and return them."""
    state.step += 1
    bc1 = 1.0 - state.beta1**state.step
    bc2 = 1.0 - state.beta2**state.step
    step_size = state.lr / bc1

    for name, value in params.items():
        grad = grads[name]
        assert grad.shape == value.shape, f"gradient for {name} has shape {grad.shape}, expected {value.shape}"
        if name not in state.m:
            state.m[name] = np.zeros_like(value)
            state.v[name] = np.zeros_like(value)

        state.m[name] *= state.beta1
        state.m[name] += (1.0 - state.beta1) * grad
        state.v[name] *= state.beta2
        state.v[name] += (1.0 - state.beta2) * (grad * grad)

        denom = np.sqrt(state.v[name] / bc2) + state.eps
        value -= step_size * state.m[name] / denom
    return params
