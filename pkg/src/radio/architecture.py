"""Serving topologies compared against the cell-free drop."""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .pathloss import large_scale_gain, path_loss_db
from .scenario import NetworkScenario, ScenarioError

ARCHITECTURES = ("cell_free", "small_cell", "colocated")


def make_architecture(scenario: NetworkScenario, mode: str) -> NetworkScenario:
    """Re-wire a cell-free drop into the requested serving architecture.

    ``small_cell`` keeps the AP layout but serves each user from its single
    strongest AP. ``colocated`` replaces the AP field with one base station at
    the centre of the area carrying ``N_k`` antennas; all antennas share the
    user's large-scale gain while their small-scale fades stay independent.
    """
    if mode not in ARCHITECTURES:
        raise ScenarioError(f"Unknown architecture '{mode}'. Expected one of: {', '.join(ARCHITECTURES)}.")
    if scenario.architecture != "cell_free":
        raise ScenarioError(f"Architectures derive from a cell-free drop, got '{scenario.architecture}'.")

    if mode == "cell_free":
        return scenario

    if mode == "small_cell":
        best = np.argmax(scenario.beta, axis=0)
        return replace(scenario, clusters=best.reshape(-1, 1), architecture=mode)

    num_antennas = scenario.cluster_size
    num_users = scenario.num_users
    centre = np.full(2, scenario.area_side_km / 2.0)
    distances = np.linalg.norm(scenario.user_positions - centre, axis=1)
    constants = scenario.path_loss
    user_beta = large_scale_gain(
        path_loss_db(distances, constants),
        scenario.user_shadow_z,
        constants.shadow_std_db,
        distances > constants.d1_km,
    )
    return replace(
        scenario,
        ap_positions=np.tile(centre, (num_antennas, 1)),
        beta=np.tile(np.atleast_1d(user_beta), (num_antennas, 1)),
        clusters=np.tile(np.arange(num_antennas), (num_users, 1)),
        architecture=mode,
    )
