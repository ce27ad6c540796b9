"""Scenario description: everything one simulation run needs."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .channel import ChannelConfig
from .phy import PAYLOAD_RANGE, PhyParams, RadioConfig
from .topology import ScenarioGeometry


class ArrivalProcess(enum.Enum):
    POISSON = "poisson"
    PERIODIC = "periodic"


@dataclass(frozen=True)
class TrafficModel:
    """Per-node uplink traffic: payload size and packet inter-arrival time.

    Poisson draws exponential gaps; periodic fires every mean_interarrival_s
    starting at t = mean_interarrival_s.
    """

    payload_bytes: int
    mean_interarrival_s: float
    arrival_process: ArrivalProcess = ArrivalProcess.POISSON

    def __post_init__(self) -> None:
        lo, hi = PAYLOAD_RANGE
        if not lo <= self.payload_bytes <= hi:
            raise ValueError(f"payload_bytes must be in {lo}..{hi}")
        if self.mean_interarrival_s <= 0:
            raise ValueError("mean_interarrival_s must be positive")

    @property
    def payload_bits(self) -> int:
        return 8 * self.payload_bytes

    @property
    def offered_bps_per_node(self) -> float:
        return self.payload_bits / self.mean_interarrival_s


def interarrival_for_offered_bps(
    offered_bps: float, payload_bytes: int, node_count: int
) -> float:
    """Mean inter-arrival time that makes the network offer offered_bps."""

    if offered_bps <= 0:
        raise ValueError("offered_bps must be positive")
    return node_count * 8 * payload_bytes / offered_bps


@dataclass(frozen=True)
class Scenario:
    """Full input to one run: channel, geometry, traffic, radio, duration."""

    channel: ChannelConfig
    geometry: ScenarioGeometry
    traffic: TrafficModel
    radio: RadioConfig = RadioConfig()
    phy: PhyParams = field(default_factory=PhyParams)
    duration_s: float = 500.0
    seed: int = 1

    def __post_init__(self) -> None:
        if self.duration_s <= 0:
            raise ValueError("duration_s must be positive")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
