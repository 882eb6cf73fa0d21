"""Experiment configuration, orchestration and result summaries."""

from .config import (
    ALGORITHMS,
    LEARNED_ALGORITHMS,
    ExperimentConfig,
    default_output_dir,
    default_settings_path,
    load_experiment_config,
    read_settings,
)
from .runner import (
    RunnerError,
    RunResult,
    build_scenario,
    compare_architectures,
    evaluate_policy,
    load_policy,
    run_experiment,
)
from .summary import run_summary, window_means

__all__ = [
    "ALGORITHMS",
    "LEARNED_ALGORITHMS",
    "ExperimentConfig",
    "RunResult",
    "RunnerError",
    "build_scenario",
    "compare_architectures",
    "default_output_dir",
    "default_settings_path",
    "evaluate_policy",
    "load_experiment_config",
    "load_policy",
    "read_settings",
    "run_experiment",
    "run_summary",
    "window_means",
]
