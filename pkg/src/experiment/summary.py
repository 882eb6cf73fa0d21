"""Aggregate metric series into the figures reported per run."""

from __future__ import annotations

from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from environment.episode import METRIC_COLUMNS

SUMMARY_COLUMNS = METRIC_COLUMNS[1:]


def window_means(frame: pd.DataFrame, window: Optional[int] = None) -> Dict[str, Optional[float]]:
    """Mean of each metric over the last ``window`` rows (all rows when ``None``)."""
    tail = frame if window is None else frame.tail(window)
    means: Dict[str, Optional[float]] = {}
    for column in SUMMARY_COLUMNS:
        if tail.empty or column not in tail:
            means[column] = None
            continue
        value = tail[column].mean(skipna=True)
        means[column] = None if pd.isna(value) else float(value)
    return means


def run_summary(
    algorithm: str,
    architecture: str,
    history: pd.DataFrame,
    evaluation: pd.DataFrame,
    trailing_episodes: int,
) -> Dict[str, Any]:
    """Trailing-window training figures next to the exploration-free evaluation."""
    return {
        "algorithm": algorithm,
        "architecture": architecture,
        "episodes": int(len(history)),
        "eval_episodes": int(len(evaluation)),
        "trailing_episodes": int(min(trailing_episodes, len(history))),
        "trailing": window_means(history, trailing_episodes),
        "evaluation": window_means(evaluation),
        "best_reward": float(np.max(history["reward"])) if len(history) else None,
    }
