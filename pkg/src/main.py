"""CLI for the cell-free MEC resource allocation simulator."""

from __future__ import annotations

import argparse
import logging
import logging.config
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv

from environment.jccra_env import EnvironmentStateError
from experiment.config import ALGORITHMS, ExperimentConfig, default_settings_path, load_experiment_config
from experiment.runner import RunnerError, compare_architectures, evaluate_policy, run_experiment
from learning.checkpoint import CheckpointError
from learning.replay import ReplayBufferError
from radio.architecture import ARCHITECTURES
from radio.scenario import ScenarioError
from report_generator.plots import plot_metrics_csv
from system_config import ConfigError

LOGGING_CONF = Path("config/logging.conf")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """Create command-line parser."""
    parser = argparse.ArgumentParser(
        description="Train and evaluate joint computing and power allocation in cell-free MEC networks.",
    )
    parser.add_argument(
        "--log-level",
        choices=LOG_LEVELS,
        default=None,
        help="Root log level (default: CFMEC_LOG_LEVEL or INFO).",
    )

    settings_options = argparse.ArgumentParser(add_help=False)
    settings_options.add_argument(
        "--config",
        type=Path,
        action="append",
        default=None,
        help="Settings YAML; repeat to layer overrides (default: CFMEC_SETTINGS or config/settings.yaml).",
    )

    run_options = argparse.ArgumentParser(add_help=False, parents=[settings_options])
    run_options.add_argument("--seed", type=int, help="Run seed.")
    run_options.add_argument("--episodes", type=int, help="Training (or heuristic) episodes.")
    run_options.add_argument("--eval-episodes", type=int, help="Exploration-free evaluation episodes.")
    run_options.add_argument("--out", type=Path, help="Output directory (default: CFMEC_OUTPUT_DIR or runs/).")

    cell_options = argparse.ArgumentParser(add_help=False)
    cell_options.add_argument("--algo", choices=ALGORITHMS, help="Allocation algorithm.")
    cell_options.add_argument("--arch", choices=ARCHITECTURES, help="Serving architecture.")

    subparsers = parser.add_subparsers(dest="command", required=True)

    subparsers.add_parser(
        "train",
        parents=[run_options, cell_options],
        help="Train (or play a heuristic) and evaluate.",
    )

    eval_parser = subparsers.add_parser(
        "eval",
        parents=[run_options, cell_options],
        help="Evaluate stored actors or a heuristic.",
    )
    eval_parser.add_argument(
        "--checkpoints",
        type=Path,
        help="Checkpoint directory (default: <out>/checkpoints).",
    )

    compare_parser = subparsers.add_parser(
        "compare",
        parents=[run_options],
        # --algo and --arch must not resolve to --algos and --archs.
        allow_abbrev=False,
        help="Run every algorithm on every architecture with one seed.",
    )
    compare_parser.add_argument(
        "--algos",
        nargs="+",
        choices=ALGORITHMS,
        default=list(ALGORITHMS),
        help="Algorithms to include (default: all).",
    )
    compare_parser.add_argument(
        "--archs",
        nargs="+",
        choices=ARCHITECTURES,
        default=list(ARCHITECTURES),
        help="Architectures to include (default: all).",
    )

    plot_parser = subparsers.add_parser(
        "plot",
        parents=[settings_options],
        help="Draw moving-average curves from a metrics CSV.",
    )
    plot_parser.add_argument("csv", type=Path, help="metrics.csv or comparison.csv to plot.")
    plot_parser.add_argument("--out", type=Path, help="Directory for the PNG files (default: next to the CSV).")
    plot_parser.add_argument("--window", type=int, help="Moving-average window (default: ma_window setting).")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Entrypoint for CLI execution."""
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level or os.environ.get("CFMEC_LOG_LEVEL", "INFO"))

    try:
        cfg = _load_config(args)

        if args.command == "plot":
            window = cfg.ma_window if args.window is None else args.window
            try:
                paths = plot_metrics_csv(args.csv, args.out or args.csv.parent, window=window)
            except ValueError as exc:
                # pandas EmptyDataError and ParserError are ValueErrors too.
                print(f"Error: cannot plot {args.csv}: {exc}", file=sys.stderr)
                return 1
            for path in paths:
                print(path)
            return 0

        if args.command == "train":
            result = run_experiment(cfg)
            print(f"Wrote {len(result.history)} episode rows to {result.output_dir / 'metrics.csv'}")
            print(f"Summary: {result.output_dir / 'summary.md'}")
            return 0

        if args.command == "eval":
            checkpoints = args.checkpoints or Path(cfg.output_dir) / "checkpoints"
            evaluation = evaluate_policy(checkpoints, cfg, cfg.eval_episodes)
            print(f"Wrote {len(evaluation)} evaluation rows to {Path(cfg.output_dir) / 'eval_metrics.csv'}")
            return 0

        table = compare_architectures(cfg, args.algos, args.archs)
        print(f"Wrote {len(table)} rows to {Path(cfg.output_dir) / 'comparison.csv'}")
        return 0
    except (
        ConfigError,
        ScenarioError,
        CheckpointError,
        RunnerError,
        ReplayBufferError,
        EnvironmentStateError,
        OSError,
    ) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 1


def configure_logging(level: str) -> None:
    """Apply ``config/logging.conf`` when present, then the requested root level."""
    if LOGGING_CONF.exists():
        logging.config.fileConfig(LOGGING_CONF, disable_existing_loggers=False)
    else:
        logging.basicConfig(format="%(asctime)s %(levelname)-7s %(name)s: %(message)s")
    logging.getLogger().setLevel(level.upper())


def _load_config(args: argparse.Namespace) -> ExperimentConfig:
    paths = args.config
    if paths is None:
        default = default_settings_path()
        paths = [default] if default.exists() else []
    # Subcommands only define the overrides that apply to them.
    overrides: Dict[str, Any] = {
        "seed": getattr(args, "seed", None),
        "episodes": getattr(args, "episodes", None),
        "eval_episodes": getattr(args, "eval_episodes", None),
        "algorithm": getattr(args, "algo", None),
        "architecture": getattr(args, "arch", None),
        "output_dir": getattr(args, "out", None) if args.command != "plot" else None,
    }
    cfg = load_experiment_config(paths, overrides)
    logger.debug("Resolved configuration from %s", ", ".join(str(path) for path in paths) or "defaults")
    return cfg


if __name__ == "__main__":
    raise SystemExit(main())
