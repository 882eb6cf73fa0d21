"""Tests for Markdown summaries and learning-curve plots."""

from __future__ import annotations

from pathlib import Path

import pandas as pd

from experiment.summary import run_summary, window_means
from report_generator.markdown import render_comparison, render_run_summary, render_sweep
from report_generator.plots import plot_metrics_csv


def history(rows: int) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "episode": range(rows),
            "reward": [-10.0 + i for i in range(rows)],
            "success_rate": [min(1.0, 0.1 * i) for i in range(rows)],
            "mean_energy_j": [1e-4] * rows,
            "mean_latency_s": [5e-4] * rows,
        }
    )


def test_window_means_uses_the_tail() -> None:
    means = window_means(history(10), 2)
    assert means["reward"] == -1.5
    assert window_means(history(0))["reward"] is None


def test_run_summary_renders() -> None:
    summary = run_summary("maddpg", "cell_free", history(10), history(3), trailing_episodes=4)
    assert summary["trailing_episodes"] == 4
    assert summary["best_reward"] == -1.0
    markdown = render_run_summary(summary)
    assert markdown.startswith("# Run Summary: maddpg on cell_free")
    assert "| Last 4 episodes | -2.50 | 75.0% | 0.1000 mJ | 0.500 ms |" in markdown
    assert "Best single-episode reward: -1.00." in markdown


def test_missing_values_render_as_dash() -> None:
    frame = history(2)
    frame["mean_latency_s"] = float("nan")
    summary = run_summary("local_first", "small_cell", frame, history(0), trailing_episodes=5)
    markdown = render_run_summary(summary)
    assert "| Evaluation | — | — | — | — |" in markdown


def test_comparison_table_has_a_row_per_run() -> None:
    summaries = [run_summary(a, "cell_free", history(5), history(2), 3) for a in ("maddpg", "local_first")]
    markdown = render_comparison(summaries, title="Desk Sweep")
    assert markdown.startswith("# Desk Sweep")
    assert "Reward (last 3)" in markdown
    assert markdown.count("| cell_free |") == 2


def test_sweep_report_lists_rows_and_checks() -> None:
    rows = [
        {"seed": 1, "algorithm": "maddpg", "architecture": "cell_free", "eval_reward": -0.512, "eval_success": 0.97},
        {"seed": 0, "algorithm": "local_first", "architecture": "cell_free", "eval_reward": -3.0, "eval_success": 1.0},
    ]
    text = render_sweep(rows, [("MADDPG beats both heuristics on every seed", True), ("success >= 0.95", False)])
    assert text.startswith("# Desk-Scale Sweep")
    assert "Seeds 0, 1;" in text
    assert "| 1 | maddpg | cell_free | -0.51 | 97.0% |" in text
    assert "- [PASS] MADDPG beats both heuristics on every seed" in text
    assert "- [FAIL] success >= 0.95" in text


def test_plot_single_run(tmp_path: Path) -> None:
    csv = tmp_path / "metrics.csv"
    history(20).to_csv(csv, index=False)
    written = plot_metrics_csv(csv, tmp_path / "figs", window=5)
    assert [path.name for path in written] == ["metrics_reward.png", "metrics_success_rate.png"]
    assert all(path.stat().st_size > 0 for path in written)


def test_plot_comparison_groups(tmp_path: Path) -> None:
    parts = []
    for algo in ("maddpg", "offload_first"):
        frame = history(6)
        frame.insert(0, "architecture", "cell_free")
        frame.insert(0, "algorithm", algo)
        parts.append(frame)
    csv = tmp_path / "comparison.csv"
    pd.concat(parts).to_csv(csv, index=False)
    assert len(plot_metrics_csv(csv, tmp_path)) == 2
