"""Per-SF Slotted-ALOHA uplink contention at a single multi-demodulator gateway.

Each spreading factor is an independent slotted channel whose slot length is
the time on air of the configured payload at that SF, with slot boundaries
aligned to t = 0. Inside one channel a slot with exactly one transmission
delivers it and a slot with two or more destroys them all; different SFs
never interact. Nodes hold a single-packet buffer and drop arrivals that
land while a packet is waiting for, or occupying, a slot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import total_path_loss_db
from .phy import assign_sf, received_power_dbm, time_on_air_s
from .scenario import ArrivalProcess, Scenario
from .topology import Deployment, Position, deploy_uniform_disk

#: Link-budget distances are floored here; the path-loss model does not
#: cover the near field and a node may land arbitrarily close to the gateway.
MIN_LINK_DISTANCE_M = 1.0


@dataclass
class NodeState:
    """Link state and traffic counters of one end node."""

    position: Position
    distance_m: float
    path_loss_db: float
    received_power_dbm: float
    sf: int | None
    next_arrival_s: float | None = None
    buffer_occupied: bool = False
    generated: int = 0
    attempted: int = 0
    delivered: int = 0
    dropped: int = 0
    pending: int = 0
    delivered_bits: int = 0

    @property
    def in_range(self) -> bool:
        return self.sf is not None


@dataclass
class ChannelStats:
    """Counters of one SF channel (all nodes assigned that SF)."""

    sf: int
    slot_s: float
    node_count: int = 0
    generated: int = 0
    attempted: int = 0
    delivered: int = 0
    collided: int = 0


@dataclass
class SimOutcome:
    """Everything a run produced: per-node and per-channel counters."""

    node_states: list[NodeState]
    channels: dict[int, ChannelStats]
    elapsed_s: float
    all_nodes_out_of_range: bool = False
    payload_bytes: int = 0

    @property
    def generated(self) -> int:
        return sum(n.generated for n in self.node_states)

    @property
    def attempted(self) -> int:
        return sum(n.attempted for n in self.node_states)

    @property
    def delivered(self) -> int:
        return sum(n.delivered for n in self.node_states)

    @property
    def delivered_bits(self) -> int:
        return sum(n.delivered_bits for n in self.node_states)

    @property
    def dropped(self) -> int:
        return sum(n.dropped for n in self.node_states)

    @property
    def pending(self) -> int:
        return sum(n.pending for n in self.node_states)


def states_for_deployment(scenario: Scenario, deployment: Deployment) -> list[NodeState]:
    """Evaluate the link budget and SF of every node of a deployment."""

    states = []
    for position in deployment.nodes:
        distance = max(position.distance_to(deployment.gateway), MIN_LINK_DISTANCE_M)
        loss = total_path_loss_db(distance, scenario.channel)
        power = received_power_dbm(scenario.radio, loss)
        states.append(
            NodeState(
                position=position,
                distance_m=distance,
                path_loss_db=loss,
                received_power_dbm=power,
                sf=assign_sf(power),
            )
        )
    return states


def build_node_states(scenario: Scenario, seed: int) -> list[NodeState]:
    """Deploy nodes and evaluate the link budget and SF of each one."""

    return states_for_deployment(scenario, deploy_uniform_disk(scenario.geometry, seed))


def _arrival_times(
    process: ArrivalProcess, mean_s: float, duration_s: float, stream_seed: tuple | None
) -> tuple[np.ndarray, float]:
    """Arrival instants in [0, duration) plus the first instant beyond it."""

    if process is ArrivalProcess.PERIODIC:
        count = int(math.floor(duration_s / mean_s))
        times = mean_s * np.arange(1, count + 2)
        inside = times[times < duration_s]
        return inside, float(mean_s * (len(inside) + 1))
    rng = np.random.default_rng(stream_seed)
    chunk = max(int(duration_s / mean_s * 1.25) + 8, 8)
    times = np.cumsum(rng.exponential(mean_s, size=chunk))
    while times[-1] < duration_s:
        extra = np.cumsum(rng.exponential(mean_s, size=chunk)) + times[-1]
        times = np.concatenate([times, extra])
    cut = int(np.searchsorted(times, duration_s, side="left"))
    return times[:cut], float(times[cut])


def simulate_on_states(
    node_states: list[NodeState], scenario: Scenario, seed: int
) -> SimOutcome:
    """Run the contention process over prebuilt node states.

    Node i draws its arrivals from an independent stream keyed by
    (seed, i), so enlarging the population never perturbs the arrival
    sequences of existing nodes.
    """

    duration = scenario.duration_s
    traffic = scenario.traffic
    payload_bits = traffic.payload_bits

    channels: dict[int, ChannelStats] = {}
    for state in node_states:
        if state.sf is None:
            continue
        if state.sf not in channels:
            channels[state.sf] = ChannelStats(
                sf=state.sf,
                slot_s=time_on_air_s(traffic.payload_bytes, state.sf, scenario.phy),
            )
        channels[state.sf].node_count += 1

    if not channels:
        return SimOutcome(
            node_states=node_states,
            channels={},
            elapsed_s=duration,
            all_nodes_out_of_range=True,
            payload_bytes=traffic.payload_bytes,
        )

    occupancy: dict[int, dict[int, list[int]]] = {sf: {} for sf in channels}
    for index, state in enumerate(node_states):
        if state.sf is None:
            continue
        slot_s = channels[state.sf].slot_s
        slots = occupancy[state.sf]
        arrivals, next_beyond = _arrival_times(
            traffic.arrival_process, traffic.mean_interarrival_s, duration, (seed, index)
        )
        state.next_arrival_s = next_beyond
        busy_until = 0.0
        for t in arrivals:
            state.generated += 1
            if t < busy_until:
                state.dropped += 1
                continue
            slot = int(math.floor(t / slot_s)) + 1
            end = (slot + 1) * slot_s
            busy_until = end
            if end > duration:
                # The frame would not finish inside the horizon; the packet
                # stays in the buffer and blocks later arrivals.
                state.pending += 1
                continue
            state.attempted += 1
            slots.setdefault(slot, []).append(index)
        state.buffer_occupied = busy_until > duration
        channels[state.sf].generated += state.generated
        channels[state.sf].attempted += state.attempted

    for sf in sorted(occupancy):
        stats = channels[sf]
        for slot in sorted(occupancy[sf]):
            transmitters = occupancy[sf][slot]
            if len(transmitters) == 1:
                node = node_states[transmitters[0]]
                node.delivered += 1
                node.delivered_bits += payload_bits
                stats.delivered += 1
            else:
                stats.collided += len(transmitters)

    return SimOutcome(
        node_states=node_states,
        channels=channels,
        elapsed_s=duration,
        payload_bytes=traffic.payload_bytes,
    )


def run_simulation(scenario: Scenario, seed: int | None = None) -> SimOutcome:
    """Deploy, assign SFs and simulate one scenario.

    Identical (scenario, seed) pairs produce identical outcomes. When seed
    is omitted the scenario's own seed is used.
    """

    run_seed = scenario.seed if seed is None else seed
    states = build_node_states(scenario, run_seed)
    return simulate_on_states(states, scenario, run_seed)
