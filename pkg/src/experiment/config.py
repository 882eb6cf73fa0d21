"""Experiment settings: the system constants plus what to run and where to write it."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Sequence

import yaml

from radio.architecture import ARCHITECTURES
from system_config import ConfigError, SystemConfig

ALGORITHMS = ("maddpg", "ddpg_central", "offload_first", "local_first")
LEARNED_ALGORITHMS = ("maddpg", "ddpg_central")

DEFAULT_SETTINGS = Path("config/settings.yaml")
DEFAULT_OUTPUT_DIR = Path("runs")


@dataclass(frozen=True)
class ExperimentConfig:
    """One run: algorithm, serving architecture, episode counts, seed and output directory."""

    system: SystemConfig = field(default_factory=SystemConfig)
    algorithm: str = "maddpg"
    architecture: str = "cell_free"
    episodes: int = 3000
    eval_episodes: int = 100
    seed: int = 0
    output_dir: Path = DEFAULT_OUTPUT_DIR
    ma_window: int = 50
    trailing_episodes: int = 100

    def __post_init__(self) -> None:
        problems = []
        if self.algorithm not in ALGORITHMS:
            problems.append(f"algorithm must be one of {', '.join(ALGORITHMS)}, got '{self.algorithm}'")
        if self.architecture not in ARCHITECTURES:
            problems.append(f"architecture must be one of {', '.join(ARCHITECTURES)}, got '{self.architecture}'")
        if self.episodes < 0 or self.eval_episodes < 0:
            problems.append("episodes and eval_episodes must be >= 0")
        if self.seed < 0:
            problems.append("seed must be >= 0")
        if self.ma_window < 1 or self.trailing_episodes < 1:
            problems.append("ma_window and trailing_episodes must be >= 1")
        if problems:
            raise ConfigError("Invalid experiment: " + "; ".join(problems))

    @property
    def is_learned(self) -> bool:
        return self.algorithm in LEARNED_ALGORITHMS

    def to_dict(self) -> Dict[str, Any]:
        """Flat mapping of every system and experiment key."""
        payload = self.system.to_dict()
        for name in _experiment_keys():
            value = getattr(self, name)
            payload[name] = str(value) if isinstance(value, Path) else value
        return payload

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "ExperimentConfig":
        """Split a flat mapping into experiment keys and system keys."""
        experiment_keys = _experiment_keys()
        system_values = {key: value for key, value in data.items() if key not in experiment_keys}
        values: Dict[str, Any] = {}
        for key in experiment_keys:
            if key not in data or data[key] is None:
                continue
            values[key] = _coerce_experiment(key, data[key])
        return cls(system=SystemConfig.from_mapping(system_values), **values)

    def replace(self, **changes: Any) -> "ExperimentConfig":
        payload = {f.name: getattr(self, f.name) for f in fields(self)}
        payload.update(changes)
        return type(self)(**payload)


def default_settings_path() -> Path:
    return Path(os.environ.get("CFMEC_SETTINGS", str(DEFAULT_SETTINGS)))


def default_output_dir() -> Path:
    return Path(os.environ.get("CFMEC_OUTPUT_DIR", str(DEFAULT_OUTPUT_DIR)))


def read_settings(path: Path) -> Dict[str, Any]:
    """Load one flat YAML mapping; an empty file yields no settings."""
    try:
        raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"Cannot read settings file {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"Settings file {path} is not valid YAML: {exc}") from exc
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ConfigError(f"Settings file {path} must hold a flat mapping, got {type(raw).__name__}.")
    nested = sorted(key for key, value in raw.items() if isinstance(value, dict))
    if nested:
        raise ConfigError(f"Settings file {path} must be flat; nested key(s): {', '.join(nested)}")
    return raw


def load_experiment_config(
    paths: Sequence[Path] = (),
    overrides: Optional[Mapping[str, Any]] = None,
) -> ExperimentConfig:
    """Merge settings files in order, then non-null ``overrides``, into one config."""
    merged: Dict[str, Any] = {"output_dir": str(default_output_dir())}
    for path in paths:
        merged.update(read_settings(path))
    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = value
    return ExperimentConfig.from_mapping(merged)


def _experiment_keys() -> tuple:
    return tuple(f.name for f in fields(ExperimentConfig) if f.name != "system")


def _coerce_experiment(key: str, value: Any) -> Any:
    if key in {"algorithm", "architecture"}:
        return str(value)
    if key == "output_dir":
        return Path(value)
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    try:
        return int(value)
    except ValueError as exc:
        raise ConfigError(f"{key} must be an integer, got {value!r}") from exc
