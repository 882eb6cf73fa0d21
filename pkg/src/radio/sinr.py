"""Uplink SINR under maximum-ratio combining over each user's cluster."""

from __future__ import annotations

from typing import Sequence, Union

import numpy as np

from .channel import ChannelRealization

Clusters = Union[np.ndarray, Sequence[Sequence[int]]]


def uplink_sinr(
    powers_w: np.ndarray,
    ch: ChannelRealization,
    clusters: Clusters,
    noise_power_w: float,
) -> np.ndarray:
    """Return the per-user SINR with MRC at the serving APs.

    ``cross[k, j]`` is the combined channel of user ``j`` seen through user
    ``k``'s combiner, so the diagonal carries the desired signal and the
    off-diagonal entries the inter-user interference.
    """
    powers = np.asarray(powers_w, dtype=float)
    num_aps, num_users = ch.g.shape
    assert powers.shape == (num_users,), "one transmit power per user expected"

    mask = _cluster_mask(clusters, num_aps, num_users)
    combiner = np.where(mask, ch.g_hat, 0.0)
    cross = np.abs(combiner.conj().T @ ch.g) ** 2
    signal = powers * np.diag(cross)
    interference = cross @ powers - signal
    noise = noise_power_w * np.sum(np.abs(combiner) ** 2, axis=0)
    denominator = interference + noise

    sinr = np.zeros(num_users)
    active = (powers > 0) & (denominator > 0)
    sinr[active] = signal[active] / denominator[active]
    return sinr


def achievable_rate(sinr: Union[float, np.ndarray], bandwidth_hz: float, prelog: float = 1.0):
    """Shannon rate in bit/s for the given SINR (scalar or vector)."""
    value = np.asarray(sinr, dtype=float)
    if np.any(value < 0):
        raise ValueError("SINR must be non-negative")
    rate = prelog * bandwidth_hz * np.log2(1.0 + value)
    return float(rate) if rate.ndim == 0 else rate


def _cluster_mask(clusters: Clusters, num_aps: int, num_users: int) -> np.ndarray:
    mask = np.zeros((num_aps, num_users), dtype=bool)
    for user, cluster in enumerate(clusters):
        mask[np.asarray(cluster, dtype=int), user] = True
    return mask
