"""Learning-curve figures drawn from metrics or comparison CSV files."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import List

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

from environment.episode import smooth_metrics  # noqa: E402

logger = logging.getLogger(__name__)

CURVES = (("reward", "Average reward"), ("success_rate", "Success rate"))


def plot_metrics_csv(csv_path: Path, output_dir: Path, *, window: int = 50) -> List[Path]:
    """Draw smoothed reward and success curves for a metrics or comparison CSV."""
    frame = pd.read_csv(csv_path)
    if "episode" not in frame:
        raise ValueError(f"{csv_path} has no 'episode' column.")
    output_dir.mkdir(parents=True, exist_ok=True)

    if {"algorithm", "architecture"} <= set(frame.columns):
        groups = {f"{algo} / {arch}": part for (algo, arch), part in frame.groupby(["algorithm", "architecture"])}
    else:
        groups = {Path(csv_path).parent.name or "run": frame}

    written: List[Path] = []
    for column, label in CURVES:
        fig, ax = plt.subplots(figsize=(7, 4))
        for name, part in groups.items():
            smoothed = smooth_metrics(part.sort_values("episode").reset_index(drop=True), window)
            ax.plot(smoothed["episode"], smoothed[column], label=name)
        ax.set_xlabel("Episode")
        ax.set_ylabel(label)
        ax.set_title(f"{label} ({window}-episode moving average)")
        ax.grid(True, alpha=0.3)
        ax.legend(loc="best", fontsize="small")
        path = output_dir / f"{Path(csv_path).stem}_{column}.png"
        fig.tight_layout()
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)
        logger.info("Wrote %s", path)
    return written
