"""Run training, evaluation and architecture comparisons, writing results to disk."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from baselines.heuristics import HeuristicPolicy
from environment.episode import METRIC_COLUMNS, EpisodeMetrics, Policy, metrics_frame, run_episode
from environment.jccra_env import ACTION_DIM, OBSERVATION_DIM, JccraEnv
from learning.agent import AgentBundle
from learning.checkpoint import FORMAT_VERSION, CheckpointError, CheckpointStore
from learning.policies import CentralizedPolicy, DecentralizedPolicy
from learning.training import (
    ENV_STREAM,
    EVAL_STREAM,
    INIT_STREAM,
    SCENARIO_STREAM,
    build_centralized_agent,
    build_maddpg_agents,
    derive_seed,
    train_ddpg_centralized,
    train_maddpg,
)
from radio.architecture import ARCHITECTURES, make_architecture
from radio.scenario import NetworkScenario, generate_scenario
from report_generator.markdown import render_comparison, render_run_summary

from .config import ALGORITHMS, ExperimentConfig
from .summary import run_summary

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.10g"
TRAINING_COLUMNS = METRIC_COLUMNS + ("noise_sigma", "critic_loss")
COMPARISON_COLUMNS = ("algorithm", "architecture") + METRIC_COLUMNS


class RunnerError(RuntimeError):
    """Raised when run outputs cannot be written."""


@dataclass
class RunResult:
    """Everything one run produced, in memory and on disk."""

    config: ExperimentConfig
    history: List[EpisodeMetrics]
    evaluation: List[EpisodeMetrics]
    checkpoints: List[str] = field(default_factory=list)
    summary: Dict[str, object] = field(default_factory=dict)

    @property
    def output_dir(self) -> Path:
        return Path(self.config.output_dir)


class CsvAppender:
    """Append one metrics row at a time so a crash keeps every finished episode."""

    def __init__(self, path: Path, columns: Sequence[str]) -> None:
        self.path = path
        self.columns = list(columns)
        try:
            path.unlink(missing_ok=True)
        except OSError as exc:
            raise RunnerError(f"Cannot reset {path}: {exc}") from exc

    def append(self, metrics: EpisodeMetrics) -> None:
        row = metrics.to_dict()
        frame = pd.DataFrame([[row.get(column) for column in self.columns]], columns=self.columns)
        try:
            frame.to_csv(
                self.path,
                mode="a",
                header=not self.path.exists(),
                index=False,
                float_format=FLOAT_FORMAT,
            )
        except OSError as exc:
            raise RunnerError(f"Failed to append metrics to {self.path}: {exc}") from exc


def build_scenario(cfg: ExperimentConfig) -> NetworkScenario:
    """The cell-free drop for the run seed, re-wired to the configured architecture."""
    drop = generate_scenario(cfg.system, derive_seed(cfg.seed, SCENARIO_STREAM))
    return make_architecture(drop, cfg.architecture)


def run_experiment(cfg: ExperimentConfig) -> RunResult:
    """Train (or, for heuristics, just play) and then evaluate without exploration."""
    out = Path(cfg.output_dir)
    _ensure_dir(out)
    logger.info(
        "Starting %s on %s: %d episodes, seed %d, output %s",
        cfg.algorithm,
        cfg.architecture,
        cfg.episodes,
        cfg.seed,
        out,
    )
    _write_manifest(out, cfg, checkpoints=[], status="running")

    scenario = build_scenario(cfg)
    env = JccraEnv(scenario, cfg.system, seed=derive_seed(cfg.seed, ENV_STREAM))
    training_log = CsvAppender(out / "metrics.csv", TRAINING_COLUMNS if cfg.is_learned else METRIC_COLUMNS)

    checkpoints: List[str] = []
    if cfg.is_learned:
        bundles, history = _train(cfg, env, training_log)
        checkpoints = _save_actors(out / "checkpoints", cfg.algorithm, bundles)
        policy = _policy_from_actors(cfg.algorithm, [bundle.actor for bundle in bundles])
    else:
        policy = HeuristicPolicy(cfg.algorithm, scenario, cfg.system)
        history = _play(env, policy, cfg.episodes, derive_seed(cfg.seed, ENV_STREAM), training_log)

    evaluation = _evaluate(policy, scenario, cfg, cfg.eval_episodes, out / "eval_metrics.csv")
    summary = run_summary(
        cfg.algorithm,
        cfg.architecture,
        metrics_frame(history),
        metrics_frame(evaluation),
        cfg.trailing_episodes,
    )
    _write_text(out / "summary.md", render_run_summary(summary))
    _write_manifest(out, cfg, checkpoints=checkpoints, status="complete")
    logger.info(
        "Finished %s on %s: eval success %.3f, eval reward %.3f",
        cfg.algorithm,
        cfg.architecture,
        summary["evaluation"]["success_rate"] or 0.0,
        summary["evaluation"]["reward"] or 0.0,
    )
    return RunResult(config=cfg, history=history, evaluation=evaluation, checkpoints=checkpoints, summary=summary)


def evaluate_policy(checkpoints: Optional[Path], cfg: ExperimentConfig, episodes: int) -> List[EpisodeMetrics]:
    """Exploration-free episodes with stored actors (ignored for heuristics)."""
    scenario = build_scenario(cfg)
    if cfg.is_learned:
        if checkpoints is None:
            raise CheckpointError("Evaluating a learned policy needs a checkpoint directory.")
        policy = load_policy(checkpoints, cfg)
    else:
        policy = HeuristicPolicy(cfg.algorithm, scenario, cfg.system)
    out = Path(cfg.output_dir)
    _ensure_dir(out)
    evaluation = _evaluate(policy, scenario, cfg, episodes, out / "eval_metrics.csv")
    summary = run_summary(
        cfg.algorithm, cfg.architecture, metrics_frame([]), metrics_frame(evaluation), cfg.trailing_episodes
    )
    _write_text(out / "summary.md", render_run_summary(summary))
    return evaluation


def load_policy(checkpoints: Path, cfg: ExperimentConfig) -> Policy:
    """Rebuild a learned policy, rejecting actors whose shapes do not fit ``cfg``."""
    store = CheckpointStore(Path(checkpoints))
    hidden = tuple(cfg.system.hidden_sizes)
    num_users = cfg.system.num_users
    if cfg.algorithm == "maddpg":
        sizes = (OBSERVATION_DIM, *hidden, ACTION_DIM)
        actors = [store.load(_actor_name(cfg.algorithm, k), sizes) for k in range(num_users)]
    else:
        sizes = (OBSERVATION_DIM * num_users, *hidden, ACTION_DIM * num_users)
        actors = [store.load(_actor_name(cfg.algorithm, 0), sizes)]
    return _policy_from_actors(cfg.algorithm, actors)


def compare_architectures(
    cfg: ExperimentConfig,
    algorithms: Sequence[str] = ALGORITHMS,
    architectures: Sequence[str] = ARCHITECTURES,
) -> pd.DataFrame:
    """Run every (algorithm, architecture) cell on the same drop and stack the histories."""
    base = Path(cfg.output_dir)
    frames = []
    summaries = []
    for algorithm in algorithms:
        for architecture in architectures:
            cell = cfg.replace(
                algorithm=algorithm,
                architecture=architecture,
                output_dir=base / f"{algorithm}_{architecture}",
            )
            result = run_experiment(cell)
            frame = metrics_frame(result.history).reindex(columns=list(METRIC_COLUMNS))
            frame.insert(0, "architecture", architecture)
            frame.insert(0, "algorithm", algorithm)
            frames.append(frame)
            summaries.append(result.summary)

    table = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=list(COMPARISON_COLUMNS))
    _ensure_dir(base)
    try:
        table.to_csv(base / "comparison.csv", index=False, float_format=FLOAT_FORMAT)
    except OSError as exc:
        raise RunnerError(f"Failed to write {base / 'comparison.csv'}: {exc}") from exc
    _write_text(base / "comparison.md", render_comparison(summaries))
    logger.info("Wrote comparison of %d runs to %s", len(summaries), base)
    return table


# ----------------------------------------------------------------------
# Helpers
# ----------------------------------------------------------------------


def _train(
    cfg: ExperimentConfig, env: JccraEnv, log: CsvAppender
) -> Tuple[List[AgentBundle], List[EpisodeMetrics]]:
    training = cfg.system.training()
    init_rng = np.random.default_rng(derive_seed(cfg.seed, INIT_STREAM))
    if cfg.algorithm == "maddpg":
        bundles = build_maddpg_agents(env, training, init_rng)
        history = train_maddpg(env, bundles, cfg.episodes, training, cfg.seed, on_episode=log.append)
        return bundles, history
    bundle = build_centralized_agent(env, training, init_rng)
    history = train_ddpg_centralized(env, bundle, cfg.episodes, training, cfg.seed, on_episode=log.append)
    return [bundle], history


def _play(env: JccraEnv, policy: Policy, episodes: int, seed: int, log: Optional[CsvAppender]) -> List[EpisodeMetrics]:
    played = []
    for episode in range(episodes):
        metrics = run_episode(env, policy, episode, seed=seed if episode == 0 else None)
        if log is not None:
            log.append(metrics)
        played.append(metrics)
    return played


def _evaluate(
    policy: Policy,
    scenario: NetworkScenario,
    cfg: ExperimentConfig,
    episodes: int,
    csv_path: Path,
) -> List[EpisodeMetrics]:
    eval_seed = derive_seed(cfg.seed, EVAL_STREAM)
    env = JccraEnv(scenario, cfg.system, seed=eval_seed)
    log = CsvAppender(csv_path, METRIC_COLUMNS)
    evaluation = _play(env, policy, episodes, eval_seed, log)
    if evaluation:
        frame = metrics_frame(evaluation)
        logger.info(
            "Evaluated %s over %d episodes: success %.3f, reward %.3f",
            cfg.algorithm,
            episodes,
            frame["success_rate"].mean(),
            frame["reward"].mean(),
        )
    return evaluation


def _policy_from_actors(algorithm: str, actors: Sequence) -> Policy:
    if algorithm == "maddpg":
        return DecentralizedPolicy(actors)
    return CentralizedPolicy(actors[0])


def _actor_name(algorithm: str, index: int) -> str:
    return f"actor_{index:02d}" if algorithm == "maddpg" else "actor"


def _save_actors(directory: Path, algorithm: str, bundles: Sequence[AgentBundle]) -> List[str]:
    store = CheckpointStore(directory)
    names = []
    for index, bundle in enumerate(bundles):
        name = _actor_name(algorithm, index)
        try:
            store.save(name, bundle.actor)
        except OSError as exc:
            raise RunnerError(f"Failed to write checkpoint {name}: {exc}") from exc
        names.append(name)
    logger.info("Saved %d actor checkpoint(s) to %s", len(names), directory)
    return names


def _write_manifest(out: Path, cfg: ExperimentConfig, *, checkpoints: List[str], status: str) -> None:
    payload = {
        "format_version": FORMAT_VERSION,
        "status": status,
        "algorithm": cfg.algorithm,
        "architecture": cfg.architecture,
        "seed": cfg.seed,
        "checkpoints": checkpoints,
        "config": cfg.to_dict(),
    }
    _write_text(out / "manifest.json", json.dumps(payload, indent=2))


def _write_text(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise RunnerError(f"Failed to write {path}: {exc}") from exc


def _ensure_dir(path: Path) -> None:
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise RunnerError(f"Cannot create output directory {path}: {exc}") from exc
