"""Fixed-architecture multilayer perceptrons with exact backpropagation.

Parameters live in a flat dict keyed ``W0, b0, W1, b1, ...`` so the Adam
optimizer, soft updates and checkpoints can walk them by name. Hidden layers
use the rectifier; the output layer is either ``sigmoid`` (actors) or
``identity`` (critics). A sigmoid output may be rescaled into per-unit
``[output_low, output_high]`` bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

OUTPUT_ACTIVATIONS = ("sigmoid", "identity")

Params = Dict[str, np.ndarray]
Bounds = Tuple[Sequence[float], Sequence[float]]


@dataclass
class Mlp:
    """Layer sizes, output activation, optional output bounds and parameters of one network."""

    layer_sizes: Tuple[int, ...]
    output_activation: str
    params: Params = field(default_factory=dict)
    output_low: Optional[np.ndarray] = None
    output_high: Optional[np.ndarray] = None

    @property
    def num_layers(self) -> int:
        return len(self.layer_sizes) - 1

    @property
    def input_dim(self) -> int:
        return self.layer_sizes[0]

    @property
    def output_dim(self) -> int:
        return self.layer_sizes[-1]

    @property
    def bounded(self) -> bool:
        return self.output_low is not None

    def output_range(self) -> Tuple[np.ndarray, np.ndarray]:
        """Smallest and largest value each output unit can take."""
        if self.bounded:
            return self.output_low, self.output_high
        if self.output_activation == "sigmoid":
            return np.zeros(self.output_dim), np.ones(self.output_dim)
        return np.full(self.output_dim, -np.inf), np.full(self.output_dim, np.inf)

    def copy(self) -> "Mlp":
        return Mlp(
            layer_sizes=self.layer_sizes,
            output_activation=self.output_activation,
            params={name: value.copy() for name, value in self.params.items()},
            output_low=None if self.output_low is None else self.output_low.copy(),
            output_high=None if self.output_high is None else self.output_high.copy(),
        )

    def __call__(self, inputs: np.ndarray) -> np.ndarray:
        output, _ = mlp_forward(self, inputs)
        return output


@dataclass
class ForwardCache:
    """Layer inputs and pre-activations recorded by ``mlp_forward``."""

    inputs: List[np.ndarray]
    pre_activations: List[np.ndarray]
    output: np.ndarray
    squashed: np.ndarray
    squeeze: bool


def init_mlp(
    layer_sizes: Sequence[int],
    rng: np.random.Generator,
    output_activation: str = "identity",
    final_scale: float = 1.0,
    output_bounds: Optional[Bounds] = None,
) -> Mlp:
    """Uniform ``±1/sqrt(fan_in)`` initialization; the last layer is scaled by ``final_scale``."""
    sizes = tuple(int(size) for size in layer_sizes)
    if len(sizes) < 2 or min(sizes) < 1:
        raise ValueError(f"layer_sizes must list at least two positive sizes, got {sizes}")
    if output_activation not in OUTPUT_ACTIVATIONS:
        raise ValueError(f"output_activation must be one of {OUTPUT_ACTIVATIONS}, got '{output_activation}'")

    params: Params = {}
    last = len(sizes) - 2
    for layer, (fan_in, fan_out) in enumerate(zip(sizes[:-1], sizes[1:])):
        bound = 1.0 / np.sqrt(fan_in)
        scale = final_scale if layer == last else 1.0
        params[f"W{layer}"] = rng.uniform(-bound, bound, size=(fan_in, fan_out)) * scale
        params[f"b{layer}"] = rng.uniform(-bound, bound, size=fan_out) * scale
    net = Mlp(layer_sizes=sizes, output_activation=output_activation, params=params)
    if output_bounds is not None:
        set_output_bounds(net, *output_bounds)
    return net


def set_output_bounds(net: Mlp, low: Sequence[float], high: Sequence[float]) -> Mlp:
    """Rescale a sigmoid output from ``(0, 1)`` into ``(low, high)`` per unit."""
    if net.output_activation != "sigmoid":
        raise ValueError("only sigmoid outputs can be bounded")
    low_arr = np.asarray(low, dtype=float).reshape(-1)
    high_arr = np.asarray(high, dtype=float).reshape(-1)
    if low_arr.shape != (net.output_dim,) or high_arr.shape != (net.output_dim,):
        raise ValueError(f"output bounds must have {net.output_dim} entries")
    if np.any(low_arr >= high_arr):
        raise ValueError("every output bound needs low < high")
    net.output_low = low_arr
    net.output_high = high_arr
    return net


def mlp_forward(net: Mlp, inputs: np.ndarray) -> Tuple[np.ndarray, ForwardCache]:
    """Evaluate ``net`` on a vector or a ``(batch, in)`` matrix."""
    x = np.asarray(inputs, dtype=float)
    squeeze = x.ndim == 1
    x = np.atleast_2d(x)
    assert x.shape[1] == net.input_dim, f"expected {net.input_dim} inputs, got {x.shape[1]}"

    layer_inputs: List[np.ndarray] = []
    pre_activations: List[np.ndarray] = []
    activation = x
    for layer in range(net.num_layers):
        layer_inputs.append(activation)
        z = activation @ net.params[f"W{layer}"] + net.params[f"b{layer}"]
        pre_activations.append(z)
        if layer < net.num_layers - 1:
            activation = np.maximum(z, 0.0)
        elif net.output_activation == "sigmoid":
            activation = _sigmoid(z)
        else:
            activation = z

    squashed = activation
    if net.bounded:
        activation = net.output_low + (net.output_high - net.output_low) * squashed

    cache = ForwardCache(
        inputs=layer_inputs,
        pre_activations=pre_activations,
        output=activation,
        squashed=squashed,
        squeeze=squeeze,
    )
    return (activation[0] if squeeze else activation), cache


def mlp_backward(net: Mlp, cache: ForwardCache, grad_output: np.ndarray) -> Tuple[Params, np.ndarray]:
    """Backpropagate ``dL/d(output)`` into parameter gradients and ``dL/d(input)``.

    Gradients are summed over the batch; scale ``grad_output`` to get a mean.
    """
    delta = np.atleast_2d(np.asarray(grad_output, dtype=float))
    assert delta.shape == cache.output.shape, f"gradient shape {delta.shape} != output shape {cache.output.shape}"

    if net.bounded:
        delta = delta * (net.output_high - net.output_low)
    if net.output_activation == "sigmoid":
        delta = delta * cache.squashed * (1.0 - cache.squashed)

    grads: Params = {}
    for layer in reversed(range(net.num_layers)):
        if layer < net.num_layers - 1:
            delta = delta * (cache.pre_activations[layer] > 0.0)
        grads[f"W{layer}"] = cache.inputs[layer].T @ delta
        grads[f"b{layer}"] = delta.sum(axis=0)
        delta = delta @ net.params[f"W{layer}"].T

    return grads, (delta[0] if cache.squeeze else delta)


def soft_update(target: Mlp, main: Mlp, tau: float) -> Mlp:
    """In place ``target <- tau * main + (1 - tau) * target``."""
    if not 0.0 <= tau <= 1.0:
        raise ValueError("tau must lie in [0, 1]")
    assert target.layer_sizes == main.layer_sizes, "target and main networks differ in shape"
    for name, value in main.params.items():
        target.params[name] *= 1.0 - tau
        target.params[name] += tau * value
    return target


def _sigmoid(z: np.ndarray) -> np.ndarray:
    # Split on sign so large |z| never overflows exp.
    out = np.empty_like(z)
    positive = z >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-z[positive]))
    exp_z = np.exp(z[~positive])
    out[~positive] = exp_z / (1.0 + exp_z)
    return out
