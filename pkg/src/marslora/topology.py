"""Node deployment and gateway placement."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np


@dataclass(frozen=True)
class Position:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("coordinates must be finite")

    def distance_to(self, other: "Position") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class ScenarioGeometry:
    """Disk of radius R centred at the origin, gateway offset d along +x."""

    disk_radius_m: float
    gateway_distance_m: float
    node_count: int = 1000

    def __post_init__(self) -> None:
        if self.disk_radius_m <= 0:
            raise ValueError("disk_radius_m must be positive")
        if self.gateway_distance_m < 0:
            raise ValueError("gateway_distance_m must be non-negative")
        if self.node_count < 1:
            raise ValueError("node_count must be at least 1")


@dataclass(frozen=True)
class Deployment:
    gateway: Position
    nodes: tuple[Position, ...]


def deploy_uniform_disk(geometry: ScenarioGeometry, seed: int) -> Deployment:
    """Draw node positions i.i.d. uniformly over the disk.

    The radius is sampled as R*sqrt(u) so the density is uniform in area;
    this is a Poisson point process conditioned on the node count. Each
    node consumes one (u, v) pair from the stream, so a deployment with
    more nodes extends an existing one instead of reshuffling it.
    """

    rng = np.random.default_rng(seed)
    u = rng.random((geometry.node_count, 2))
    radius = geometry.disk_radius_m * np.sqrt(u[:, 0])
    angle = 2.0 * np.pi * u[:, 1]
    nodes = tuple(
        Position(float(r * np.cos(a)), float(r * np.sin(a)))
        for r, a in zip(radius, angle)
    )
    return Deployment(gateway=Position(geometry.gateway_distance_m, 0.0), nodes=nodes)


def write_deployment_csv(deployment: Deployment, path: str | Path) -> None:
    """Dump node positions as (node, x_m, y_m) rows for reproducibility audits."""

    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["node", "x_m", "y_m"])
        for index, node in enumerate(deployment.nodes):
            writer.writerow([index, f"{node.x:.10g}", f"{node.y:.10g}"])
