"""Three-slope path loss and log-normal shadowing."""

from __future__ import annotations

from typing import Union

import numpy as np

from system_config import PathLossConstants

ArrayLike = Union[float, np.ndarray]


def hata_loss_db(c: PathLossConstants) -> float:
    """Return the constant term L (dB) of the three-slope model."""
    log_f = np.log10(c.carrier_freq_mhz)
    return float(
        46.3
        + 33.9 * log_f
        - 13.82 * np.log10(c.ap_height_m)
        - (1.1 * log_f - 0.7) * c.user_height_m
        + (1.56 * log_f - 0.8)
    )


def path_loss_db(d_km: ArrayLike, c: PathLossConstants) -> ArrayLike:
    """Evaluate the piecewise three-slope path loss (a negative dB gain).

    Far field (d > d1) decays with 35 dB/decade, the middle segment with
    20 dB/decade, and inside d0 the loss is flat.
    """
    d = np.asarray(d_km, dtype=float)
    loss = hata_loss_db(c)
    # Clamp before taking logs so the unused branches never see log10(0).
    d_mid = np.maximum(d, c.d0_km)
    far = -loss - 35.0 * np.log10(d_mid)
    middle = -loss - 10.0 * np.log10(d_mid**2 * c.d1_km**1.5)
    near = -loss - 10.0 * np.log10(c.d0_km**2 * c.d1_km**1.5)
    value = np.where(d > c.d1_km, far, np.where(d > c.d0_km, middle, near))
    return float(value) if value.ndim == 0 else value


def large_scale_gain(
    pl_db: ArrayLike,
    z: ArrayLike,
    shadow_std_db: float,
    apply_shadowing: Union[bool, np.ndarray],
) -> ArrayLike:
    """Convert path loss to a linear gain, optionally applying log-normal shadowing."""
    if shadow_std_db < 0:
        raise ValueError("shadow_std_db must be >= 0")
    shadow_db = np.where(apply_shadowing, shadow_std_db * np.asarray(z, dtype=float), 0.0)
    value = 10.0 ** (np.asarray(pl_db, dtype=float) / 10.0) * 10.0 ** (shadow_db / 10.0)
    return float(value) if np.ndim(value) == 0 else value
