"""Network drops: AP/user placement, large-scale gains and user-centric clusters."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from system_config import PathLossConstants, SystemConfig

from .pathloss import large_scale_gain, path_loss_db

logger = logging.getLogger(__name__)


class ScenarioError(ValueError):
    """Raised when a network drop cannot be generated for the given settings."""


@dataclass(frozen=True)
class NetworkScenario:
    """One drop of APs and users with its large-scale fading and serving clusters.

    ``beta`` is indexed ``[ap, user]``; ``clusters`` is a ``(K, N_k)`` integer
    array whose row ``k`` lists user ``k``'s serving APs, strongest first.
    """

    ap_positions: np.ndarray
    user_positions: np.ndarray
    beta: np.ndarray
    clusters: np.ndarray
    path_loss: PathLossConstants = field(default_factory=PathLossConstants)
    user_shadow_z: np.ndarray = field(default_factory=lambda: np.zeros(0))
    area_side_km: float = 1.0
    architecture: str = "cell_free"

    @property
    def num_aps(self) -> int:
        return int(self.beta.shape[0])

    @property
    def num_users(self) -> int:
        return int(self.beta.shape[1])

    @property
    def cluster_size(self) -> int:
        return int(self.clusters.shape[1])

    def serving_mask(self) -> np.ndarray:
        """Boolean ``(M, K)`` matrix, True where AP ``m`` serves user ``k``."""
        mask = np.zeros(self.beta.shape, dtype=bool)
        for user, cluster in enumerate(self.clusters):
            mask[cluster, user] = True
        return mask

    def aggregate_gain(self, user: int) -> float:
        """Sum of the serving large-scale gains of one user (lambda_k)."""
        return float(self.beta[self.clusters[user], user].sum())


def generate_scenario(config: SystemConfig, seed: int) -> NetworkScenario:
    """Drop APs and users uniformly over the square area and form clusters."""
    num_aps, num_users = config.num_aps, config.num_users
    cluster_size = config.cluster_size
    if num_users < 1 or num_aps < num_users:
        raise ScenarioError(f"Need M >= K >= 1, got M={num_aps}, K={num_users}.")
    if cluster_size > num_aps:
        raise ScenarioError(f"Cluster size {cluster_size} exceeds the number of APs {num_aps}.")
    if num_users > config.resolved_pilot_len:
        raise ScenarioError(
            f"{num_users} users cannot hold orthogonal pilots of length {config.resolved_pilot_len}."
        )

    rng = np.random.default_rng(seed)
    side = float(np.sqrt(config.area_km2))
    ap_positions = rng.uniform(0.0, side, size=(num_aps, 2))
    user_positions = rng.uniform(0.0, side, size=(num_users, 2))
    shadow_z = rng.standard_normal((num_aps, num_users))
    user_shadow_z = rng.standard_normal(num_users)

    constants = config.path_loss_constants()
    distances = np.linalg.norm(ap_positions[:, None, :] - user_positions[None, :, :], axis=2)
    beta = large_scale_gain(
        path_loss_db(distances, constants),
        shadow_z,
        constants.shadow_std_db,
        distances > constants.d1_km,
    )
    clusters = form_clusters(beta, cluster_size)
    logger.debug("Generated drop: M=%d K=%d N_k=%d seed=%d", num_aps, num_users, cluster_size, seed)
    return NetworkScenario(
        ap_positions=ap_positions,
        user_positions=user_positions,
        beta=beta,
        clusters=clusters,
        path_loss=constants,
        user_shadow_z=user_shadow_z,
        area_side_km=side,
    )


def form_clusters(beta: np.ndarray, cluster_size: int) -> np.ndarray:
    """Pick the ``cluster_size`` strongest APs per user; ties go to the lower AP index."""
    if not 1 <= cluster_size <= beta.shape[0]:
        raise ScenarioError(f"Cluster size must lie in [1, {beta.shape[0]}], got {cluster_size}.")
    # Stable sort on the negated gains keeps equal gains in index order.
    order = np.argsort(-beta, axis=0, kind="stable")
    return np.ascontiguousarray(order[:cluster_size].T)
