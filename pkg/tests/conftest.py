"""Pytest configuration for adjusting import paths and shared small setups."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest


def pytest_configure() -> None:
    """Ensure the src/ directory is importable without installing the package."""
    root = Path(__file__).resolve().parents[1]
    src_dir = root / "src"
    src_path = str(src_dir)
    if src_path not in sys.path:
        sys.path.insert(0, src_path)


@pytest.fixture(scope="module")
def small_config():
    """A network small enough for unit tests yet with real interference."""
    from system_config import SystemConfig

    return SystemConfig(
        num_aps=8,
        num_users=3,
        cluster_fraction=0.5,
        horizon_steps=5,
        hidden_sizes=(8, 8),
        batch_size=4,
        buffer_capacity=200,
        warmup=10,
        log_every=1,
    )


@pytest.fixture(scope="module")
def small_scenario(small_config):
    from radio.scenario import generate_scenario

    return generate_scenario(small_config, seed=7)
