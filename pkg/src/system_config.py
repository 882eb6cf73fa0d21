"""Physical, compute and training constants for the cell-free MEC simulator."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Mapping, Optional, Tuple, Union

import numpy as np


class ConfigError(ValueError):
    """Raised when a configuration value is missing, malformed or out of range."""


@dataclass(frozen=True)
class PathLossConstants:
    """Constants of the three-slope path-loss model (distances in km)."""

    carrier_freq_mhz: float = 1900.0
    ap_height_m: float = 15.0
    user_height_m: float = 1.65
    d0_km: float = 0.01
    d1_km: float = 0.05
    shadow_std_db: float = 10.0


@dataclass(frozen=True)
class RadioConfig:
    """Uplink radio constants in SI units."""

    bandwidth_hz: float
    noise_power_w: float
    pilot_power_w: float
    pilot_len: int
    max_ul_power_w: float
    coherence_ms: float
    prelog: float = 1.0


@dataclass(frozen=True)
class ComputeConfig:
    """Local device and edge server compute constants."""

    cycles_per_bit: int
    kappa: float
    f_local_max_hz: float
    f_edge_hz: float
    deadline_s: np.ndarray
    task_min_bits: float
    task_max_bits: float
    step_s: float
    charge_infeasible_slot: bool = True


@dataclass(frozen=True)
class FpcConfig:
    """Fractional power control parameters."""

    p0_w: float
    nu: float = 0.5


@dataclass(frozen=True)
class TrainingConfig:
    """Actor-critic hyperparameters shared by MADDPG and centralised DDPG."""

    hidden_sizes: Tuple[int, ...] = (128, 64, 64)
    lr_actor: float = 1e-4
    lr_critic: float = 1e-3
    discount: float = 0.99
    tau: float = 0.005
    batch_size: int = 128
    buffer_capacity: int = 100_000
    warmup: int = 1000
    noise_sigma: float = 0.2
    noise_decay: float = 0.9995
    noise_floor: float = 0.01
    actor_final_scale: float = 0.1
    alpha_max: float = 1.0
    eta_min: float = 0.5
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8
    log_every: int = 50


@dataclass(frozen=True)
class SystemConfig:
    """Every simulator constant, flat so it maps one-to-one onto settings keys."""

    # network drop
    num_aps: int = 100
    num_users: int = 10
    area_km2: float = 1.0
    cluster_fraction: float = 0.3
    # propagation
    carrier_freq_mhz: float = 1900.0
    ap_height_m: float = 15.0
    user_height_m: float = 1.65
    d0_km: float = 0.01
    d1_km: float = 0.05
    shadow_std_db: float = 10.0
    # radio
    bandwidth_hz: float = 5e6
    noise_psd_dbm_hz: float = -174.0
    noise_figure_db: float = 9.0
    pilot_power_w: float = 0.1
    pilot_len: Optional[int] = None
    max_ul_power_w: float = 0.1
    coherence_ms: float = 1.0
    coherence_samples: Optional[int] = None
    use_prelog: bool = False
    # computing
    cycles_per_bit: int = 500
    kappa: float = 1e-27
    f_local_max_hz: float = 1e9
    f_edge_hz: float = 100e9
    deadline_s: Union[float, Tuple[float, ...]] = 1e-3
    task_min_bits: float = 2500.0
    task_max_bits: float = 7500.0
    step_s: float = 1e-3
    charge_infeasible_slot: bool = True
    # environment
    horizon_steps: int = 100
    miss_penalty: float = 10.0
    energy_scale: float = 1e3
    rate_ref_sinr: float = 1e3
    # fractional power control
    fpc_p0_dbm: float = -35.0
    fpc_nu: float = 0.5
    # learning
    hidden_sizes: Tuple[int, ...] = (128, 64, 64)
    lr_actor: float = 1e-4
    lr_critic: float = 1e-3
    discount: float = 0.99
    tau: float = 0.005
    batch_size: int = 128
    buffer_capacity: int = 100_000
    warmup: int = 1000
    noise_sigma: float = 0.2
    noise_decay: float = 0.9995
    noise_floor: float = 0.01
    actor_final_scale: float = 0.1
    alpha_max: float = 1.0
    eta_min: float = 0.5
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8
    log_every: int = 50

    def __post_init__(self) -> None:
        self.validate()

    # ------------------------------------------------------------------
    # Derived values
    # ------------------------------------------------------------------

    @property
    def cluster_size(self) -> int:
        """Number of serving APs per user (N_k)."""
        return max(1, int(round(self.cluster_fraction * self.num_aps)))

    @property
    def resolved_pilot_len(self) -> int:
        return self.pilot_len if self.pilot_len is not None else self.num_users

    @property
    def noise_power_w(self) -> float:
        """Thermal noise over the system bandwidth plus the receiver noise figure."""
        noise_dbm = self.noise_psd_dbm_hz + 10.0 * math.log10(self.bandwidth_hz) + self.noise_figure_db
        return 10.0 ** ((noise_dbm - 30.0) / 10.0)

    @property
    def prelog(self) -> float:
        if not self.use_prelog:
            return 1.0
        # validate() guarantees coherence_samples is set when the prelog is on.
        assert self.coherence_samples is not None
        return (self.coherence_samples - self.resolved_pilot_len) / self.coherence_samples

    @property
    def rate_normalizer_bps(self) -> float:
        return self.bandwidth_hz * math.log2(1.0 + self.rate_ref_sinr)

    def deadlines(self) -> np.ndarray:
        """Per-user deadlines t_k^d in seconds."""
        if isinstance(self.deadline_s, tuple):
            return np.asarray(self.deadline_s, dtype=float)
        return np.full(self.num_users, float(self.deadline_s))

    # ------------------------------------------------------------------
    # Typed views
    # ------------------------------------------------------------------

    def path_loss_constants(self) -> PathLossConstants:
        return PathLossConstants(
            carrier_freq_mhz=self.carrier_freq_mhz,
            ap_height_m=self.ap_height_m,
            user_height_m=self.user_height_m,
            d0_km=self.d0_km,
            d1_km=self.d1_km,
            shadow_std_db=self.shadow_std_db,
        )

    def radio(self) -> RadioConfig:
        return RadioConfig(
            bandwidth_hz=self.bandwidth_hz,
            noise_power_w=self.noise_power_w,
            pilot_power_w=self.pilot_power_w,
            pilot_len=self.resolved_pilot_len,
            max_ul_power_w=self.max_ul_power_w,
            coherence_ms=self.coherence_ms,
            prelog=self.prelog,
        )

    def compute(self) -> ComputeConfig:
        return ComputeConfig(
            cycles_per_bit=self.cycles_per_bit,
            kappa=self.kappa,
            f_local_max_hz=self.f_local_max_hz,
            f_edge_hz=self.f_edge_hz,
            deadline_s=self.deadlines(),
            task_min_bits=self.task_min_bits,
            task_max_bits=self.task_max_bits,
            step_s=self.step_s,
            charge_infeasible_slot=self.charge_infeasible_slot,
        )

    def fpc(self) -> FpcConfig:
        return FpcConfig(p0_w=10.0 ** ((self.fpc_p0_dbm - 30.0) / 10.0), nu=self.fpc_nu)

    def training(self) -> TrainingConfig:
        names = {f.name for f in fields(TrainingConfig)}
        return TrainingConfig(**{name: getattr(self, name) for name in names})

    # ------------------------------------------------------------------
    # Serialisation
    # ------------------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        """Flat, YAML/JSON friendly representation."""
        payload = asdict(self)
        payload["hidden_sizes"] = list(self.hidden_sizes)
        if isinstance(self.deadline_s, tuple):
            payload["deadline_s"] = list(self.deadline_s)
        return payload

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "SystemConfig":
        """Build a config from flat settings, coercing YAML scalars to field types."""
        known = {f.name: f for f in fields(cls)}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise ConfigError(f"Unknown system setting(s): {', '.join(unknown)}")
        values = {name: _coerce(name, known[name].default, value) for name, value in data.items()}
        return cls(**values)

    def replace(self, **changes: Any) -> "SystemConfig":
        payload = {f.name: getattr(self, f.name) for f in fields(self)}
        payload.update(changes)
        return type(self)(**payload)

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------

    def validate(self) -> None:
        problems: list[str] = []

        def require(condition: bool, message: str) -> None:
            if not condition:
                problems.append(message)

        require(self.num_users >= 1, "num_users must be >= 1")
        require(self.num_aps >= self.num_users, "num_aps must be >= num_users")
        require(0.0 < self.cluster_fraction <= 1.0, "cluster_fraction must lie in (0, 1]")
        require(self.area_km2 > 0, "area_km2 must be positive")
        require(0.0 < self.d0_km < self.d1_km, "path loss breakpoints need 0 < d0_km < d1_km")
        require(
            self.carrier_freq_mhz > 0 and self.ap_height_m > 0 and self.user_height_m > 0,
            "carrier frequency and antenna heights must be positive",
        )
        require(self.shadow_std_db >= 0, "shadow_std_db must be >= 0")
        for name in (
            "bandwidth_hz",
            "pilot_power_w",
            "max_ul_power_w",
            "coherence_ms",
            "kappa",
            "f_local_max_hz",
            "f_edge_hz",
            "task_min_bits",
            "step_s",
            "energy_scale",
            "rate_ref_sinr",
            "lr_actor",
            "lr_critic",
        ):
            require(getattr(self, name) > 0, f"{name} must be positive")
        require(self.cycles_per_bit > 0, "cycles_per_bit must be positive")
        require(self.task_min_bits <= self.task_max_bits, "task_min_bits must not exceed task_max_bits")
        if self.pilot_len is not None:
            require(self.pilot_len >= self.num_users, "pilot_len must be >= num_users")
        if self.use_prelog:
            require(
                self.coherence_samples is not None and self.coherence_samples > self.resolved_pilot_len,
                "use_prelog needs coherence_samples > pilot_len",
            )
        if isinstance(self.deadline_s, tuple):
            require(len(self.deadline_s) == self.num_users, "deadline_s list must have one entry per user")
            require(all(value > 0 for value in self.deadline_s), "deadlines must be positive")
        else:
            require(self.deadline_s > 0, "deadline_s must be positive")
        require(self.horizon_steps >= 1, "horizon_steps must be >= 1")
        require(self.miss_penalty >= 1.0, "miss_penalty must be >= 1")
        require(self.fpc_nu >= 0, "fpc_nu must be >= 0")
        require(
            len(self.hidden_sizes) >= 1 and all(size > 0 for size in self.hidden_sizes),
            "hidden_sizes must be positive",
        )
        require(0.0 <= self.discount <= 1.0, "discount must lie in [0, 1]")
        require(0.0 <= self.tau <= 1.0, "tau must lie in [0, 1]")
        require(self.batch_size >= 1, "batch_size must be >= 1")
        require(self.buffer_capacity >= self.batch_size, "buffer_capacity must hold at least one batch")
        require(self.warmup >= 0, "warmup must be >= 0")
        require(0.0 <= self.noise_floor <= self.noise_sigma, "noise_floor must lie in [0, noise_sigma]")
        require(0.0 < self.noise_decay <= 1.0, "noise_decay must lie in (0, 1]")
        require(0.0 < self.alpha_max <= 1.0, "alpha_max must lie in (0, 1]")
        require(0.0 <= self.eta_min < 1.0, "eta_min must lie in [0, 1)")
        require(self.log_every >= 1, "log_every must be >= 1")

        if problems:
            raise ConfigError("Invalid configuration: " + "; ".join(problems))


# ---------------------------------------------------------------------------
# Coercion helpers
# ---------------------------------------------------------------------------

_OPTIONAL_INTS = {"pilot_len", "coherence_samples"}


def _coerce(name: str, default: Any, value: Any) -> Any:
    try:
        if name in _OPTIONAL_INTS:
            return None if value is None else _to_int(value)
        if name == "deadline_s":
            if isinstance(value, (list, tuple)):
                return tuple(float(item) for item in value)
            return float(value)
        if name == "hidden_sizes":
            if not isinstance(value, (list, tuple)):
                raise TypeError("expected a list of layer widths")
            return tuple(_to_int(item) for item in value)
        if isinstance(default, bool):
            return _to_bool(value)
        if isinstance(default, int):
            return _to_int(value)
        if isinstance(default, float):
            if isinstance(value, bool):
                raise TypeError("booleans are not numbers")
            return float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"Setting '{name}' has an invalid value {value!r}: {exc}") from exc
    return value


def _to_int(value: Any) -> int:
    if isinstance(value, bool):
        raise TypeError("booleans are not integers")
    if isinstance(value, float) and not value.is_integer():
        raise ValueError("expected an integer")
    return int(value)


def _to_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, str) and value.lower() in {"true", "yes", "1", "on"}:
        return True
    if isinstance(value, str) and value.lower() in {"false", "no", "0", "off"}:
        return False
    raise ValueError("expected a boolean")
