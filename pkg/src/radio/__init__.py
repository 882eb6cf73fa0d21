"""Cell-free massive MIMO uplink: geometry, fading, estimation and SINR."""

from .architecture import ARCHITECTURES, make_architecture
from .channel import ChannelRealization, draw_channels, estimation_noise_variance
from .pathloss import hata_loss_db, large_scale_gain, path_loss_db
from .scenario import NetworkScenario, ScenarioError, form_clusters, generate_scenario
from .sinr import achievable_rate, uplink_sinr

__all__ = [
    "ARCHITECTURES",
    "ChannelRealization",
    "NetworkScenario",
    "ScenarioError",
    "achievable_rate",
    "draw_channels",
    "estimation_noise_variance",
    "form_clusters",
    "generate_scenario",
    "hata_loss_db",
    "large_scale_gain",
    "make_architecture",
    "path_loss_db",
    "uplink_sinr",
]
