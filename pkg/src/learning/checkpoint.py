"""Versioned ``.npz`` storage for trained networks."""

from __future__ import annotations

import logging
import zipfile
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from .mlp import OUTPUT_ACTIVATIONS, Mlp, set_output_bounds

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


class CheckpointError(RuntimeError):
    """Raised when a checkpoint is missing, unreadable or incompatible."""


class CheckpointStore:
    """Save and load networks by name under one directory."""

    def __init__(self, directory: Path) -> None:
        self.directory = Path(directory)

    def save(self, name: str, net: Mlp) -> Path:
        """Persist ``net``, creating directories as needed."""
        path = self._path_for(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        bounds = {}
        if net.bounded:
            bounds = {"output_low": net.output_low, "output_high": net.output_high}
        with path.open("wb") as handle:
            np.savez(
                handle,
                format_version=np.array(FORMAT_VERSION),
                layer_sizes=np.array(net.layer_sizes, dtype=np.int64),
                output_activation=np.array(net.output_activation),
                **bounds,
                **net.params,
            )
        logger.debug("Saved checkpoint %s", path)
        return path

    def load(self, name: str, expected_layer_sizes: Optional[Sequence[int]] = None) -> Mlp:
        """Read a network back; a shape check runs when ``expected_layer_sizes`` is given."""
        path = self._path_for(name)
        if not path.exists():
            raise CheckpointError(f"Checkpoint '{name}' not found in {self.directory}.")
        try:
            with np.load(path, allow_pickle=False) as data:
                version = int(data["format_version"])
                layer_sizes = tuple(int(size) for size in data["layer_sizes"])
                activation = str(data["output_activation"])
                params = {key: data[key].astype(float) for key in data.files if key[0] in {"W", "b"}}
                bounds = None
                if "output_low" in data.files and "output_high" in data.files:
                    bounds = (data["output_low"].astype(float), data["output_high"].astype(float))
        except (OSError, KeyError, ValueError, zipfile.BadZipFile) as exc:
            raise CheckpointError(f"Checkpoint '{name}' is unreadable: {exc}") from exc

        if version != FORMAT_VERSION:
            raise CheckpointError(f"Checkpoint '{name}' has format version {version}, expected {FORMAT_VERSION}.")
        if activation not in OUTPUT_ACTIVATIONS:
            raise CheckpointError(f"Checkpoint '{name}' has unknown output activation '{activation}'.")
        if expected_layer_sizes is not None and tuple(expected_layer_sizes) != layer_sizes:
            raise CheckpointError(
                f"Checkpoint '{name}' has layers {layer_sizes}, expected {tuple(expected_layer_sizes)}."
            )
        net = Mlp(layer_sizes=layer_sizes, output_activation=activation, params=params)
        _check_shapes(name, net)
        if bounds is not None:
            try:
                set_output_bounds(net, *bounds)
            except ValueError as exc:
                raise CheckpointError(f"Checkpoint '{name}' has invalid output bounds: {exc}") from exc
        return net

    def names(self) -> List[str]:
        if not self.directory.exists():
            return []
        return sorted(path.stem for path in self.directory.glob("*.npz"))

    # ------------------------------------------------------------------
    # Helpers
    # ------------------------------------------------------------------

    def _path_for(self, name: str) -> Path:
        return self.directory / f"{self._sanitize(name)}.npz"

    @staticmethod
    def _sanitize(value: str) -> str:
        return "".join(ch if ch.isalnum() or ch in {"-", "_"} else "_" for ch in value)


def _check_shapes(name: str, net: Mlp) -> None:
    for layer, (fan_in, fan_out) in enumerate(zip(net.layer_sizes[:-1], net.layer_sizes[1:])):
        weights = net.params.get(f"W{layer}")
        bias = net.params.get(f"b{layer}")
        if weights is None or bias is None or weights.shape != (fan_in, fan_out) or bias.shape != (fan_out,):
            raise CheckpointError(f"Checkpoint '{name}' layer {layer} does not match its header.")
