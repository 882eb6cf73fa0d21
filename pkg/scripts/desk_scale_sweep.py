#!/usr/bin/env python3
"""Run the desk-scale sweep over several seeds and check the learning-performance targets."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Tuple

BASE_DIR = Path(__file__).resolve().parents[1]
SRC_DIR = BASE_DIR / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

import pandas as pd  # noqa: E402

from experiment.config import load_experiment_config  # noqa: E402
from experiment.runner import run_experiment  # noqa: E402
from main import configure_logging  # noqa: E402
from report_generator import render_sweep  # noqa: E402

logger = logging.getLogger("desk_scale_sweep")

CELLS: Tuple[Tuple[str, str], ...] = (
    ("maddpg", "cell_free"),
    ("ddpg_central", "cell_free"),
    ("offload_first", "cell_free"),
    ("local_first", "cell_free"),
    ("maddpg", "small_cell"),
    ("maddpg", "colocated"),
)


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Desk-scale sweep with pass/fail checks.")
    parser.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2], help="Run seeds (default: 0 1 2).")
    parser.add_argument("--episodes", type=int, help="Override training episodes.")
    parser.add_argument("--out", type=Path, default=Path("runs/desk_sweep"), help="Output root.")
    parser.add_argument(
        "--report",
        type=Path,
        default=BASE_DIR / "reports/desk_scale_sweep.md",
        help="Markdown file the results and checks are recorded in.",
    )
    parser.add_argument(
        "--config",
        type=Path,
        nargs="+",
        default=[BASE_DIR / "config/settings.yaml", BASE_DIR / "config/desk_scale.yaml"],
        help="Settings files, applied in order.",
    )
    return parser.parse_args()


def run_cells(args: argparse.Namespace) -> pd.DataFrame:
    rows: List[Dict[str, object]] = []
    for seed in args.seeds:
        for algorithm, architecture in CELLS:
            cfg = load_experiment_config(
                args.config,
                {
                    "seed": seed,
                    "episodes": args.episodes,
                    "algorithm": algorithm,
                    "architecture": architecture,
                    "output_dir": args.out / f"seed{seed}" / f"{algorithm}_{architecture}",
                },
            )
            result = run_experiment(cfg)
            evaluation = result.summary["evaluation"]
            rows.append(
                {
                    "seed": seed,
                    "algorithm": algorithm,
                    "architecture": architecture,
                    "eval_reward": evaluation["reward"],
                    "eval_success": evaluation["success_rate"],
                }
            )
    return pd.DataFrame(rows)


def check(results: pd.DataFrame) -> List[Tuple[str, bool]]:
    table = results.set_index(["seed", "algorithm", "architecture"])
    seeds = sorted(results["seed"].unique())

    def value(seed: int, algorithm: str, architecture: str, column: str) -> float:
        return float(table.loc[(seed, algorithm, architecture), column])

    beats_heuristics = all(
        value(s, "maddpg", "cell_free", "eval_reward") > value(s, h, "cell_free", "eval_reward")
        for s in seeds
        for h in ("offload_first", "local_first")
    )
    near_central = sum(
        value(s, "ddpg_central", "cell_free", "eval_reward") / value(s, "maddpg", "cell_free", "eval_reward") >= 0.9
        for s in seeds
    )
    mean_success = sum(value(s, "maddpg", "cell_free", "eval_success") for s in seeds) / len(seeds)
    heuristic_order = all(
        value(s, "local_first", "cell_free", "eval_success") >= value(s, "offload_first", "cell_free", "eval_success")
        for s in seeds
    )
    cell_free_wins = sum(
        all(
            value(s, "maddpg", "cell_free", column) >= value(s, "maddpg", arch, column)
            for arch in ("small_cell", "colocated")
            for column in ("eval_reward", "eval_success")
        )
        for s in seeds
    )
    quorum = min(2, len(seeds))
    return [
        ("MADDPG beats both heuristics on every seed", beats_heuristics),
        (f"MADDPG within 90% of centralized DDPG on >= {quorum} seeds", near_central >= quorum),
        (f"MADDPG mean evaluation success {mean_success:.3f} >= 0.95", mean_success >= 0.95),
        ("local-first success >= offloading-first success", heuristic_order),
        (f"cell-free beats small-cell and co-located on >= {quorum} seeds", cell_free_wins >= quorum),
    ]


def main() -> int:
    args = parse_args()
    configure_logging("INFO")
    results = run_cells(args)
    args.out.mkdir(parents=True, exist_ok=True)
    results.to_csv(args.out / "sweep.csv", index=False, float_format="%.10g")
    print(results.to_string(index=False))
    print()
    outcomes = check(results)
    for label, passed in outcomes:
        print(f"[{'PASS' if passed else 'FAIL'}] {label}")
    args.report.parent.mkdir(parents=True, exist_ok=True)
    args.report.write_text(render_sweep(results.to_dict("records"), outcomes), encoding="utf-8")
    logger.info("Recorded sweep results in %s", args.report)
    return 0 if all(passed for _, passed in outcomes) else 1


if __name__ == "__main__":
    raise SystemExit(main())
