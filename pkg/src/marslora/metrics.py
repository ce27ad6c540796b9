"""Derived quantities: normalized S and G, bit rates, SF mix, max viable range.

Normalization follows the classic slotted-ALOHA convention per channel
(packets times slot length over elapsed time) and averages over the SF
channels that have at least one node assigned, which reduces to the
textbook definition when a single channel is active.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .mac import NodeState, SimOutcome, run_simulation
from .scenario import Scenario
from .seeding import derive_seed

SF_BUCKETS = (7, 8, 9, 10, 11, 12)
OUT_OF_RANGE = "out_of_range"


@dataclass(frozen=True)
class MinThroughputCriterion:
    """Minimum delivered rate a deployment must sustain, bits per second."""

    threshold_bps: float = 300.0

    def __post_init__(self) -> None:
        if self.threshold_bps <= 0:
            raise ValueError("threshold_bps must be positive")


@dataclass(frozen=True)
class ThroughputReport:
    normalized_throughput: float
    normalized_offered: float
    absolute_throughput_bps: float
    offered_bits_rate_bps: float
    mean_node_throughput_bps: float
    sf_histogram: dict[int | str, int]


def _active_channels(outcome: SimOutcome) -> list[int]:
    return sorted(outcome.channels)


def normalized_offered(outcome: SimOutcome, scenario: Scenario) -> float:
    """Offered load G: generated packet-time per channel-second, averaged
    over active channels. Counts generated traffic, including packets later
    dropped at the buffer."""

    if outcome.elapsed_s <= 0:
        raise ValueError("elapsed_s must be positive")
    active = _active_channels(outcome)
    if not active:
        return 0.0
    busy = sum(
        outcome.channels[sf].generated * outcome.channels[sf].slot_s for sf in active
    )
    return busy / (outcome.elapsed_s * len(active))


def normalized_throughput(outcome: SimOutcome, scenario: Scenario) -> float:
    """Throughput S: fraction of channel time carrying delivered packets,
    averaged over active channels."""

    if outcome.elapsed_s <= 0:
        raise ValueError("elapsed_s must be positive")
    active = _active_channels(outcome)
    if not active:
        return 0.0
    useful = sum(
        outcome.channels[sf].delivered * outcome.channels[sf].slot_s for sf in active
    )
    return useful / (outcome.elapsed_s * len(active))


def absolute_throughput_bps(outcome: SimOutcome) -> float:
    """Delivered payload bits per second, network wide."""

    if outcome.elapsed_s <= 0:
        raise ValueError("elapsed_s must be positive")
    return outcome.delivered_bits / outcome.elapsed_s


def mean_node_throughput_bps(outcome: SimOutcome) -> float:
    """Mean delivered rate per node, out-of-range nodes included."""

    if not outcome.node_states:
        return 0.0
    return absolute_throughput_bps(outcome) / len(outcome.node_states)


def sf_histogram(node_states: list[NodeState]) -> dict[int | str, int]:
    """Node counts per assigned SF plus an out-of-range bucket."""

    counts: dict[int | str, int] = {sf: 0 for sf in SF_BUCKETS}
    counts[OUT_OF_RANGE] = 0
    for state in node_states:
        key = state.sf if state.sf is not None else OUT_OF_RANGE
        counts[key] += 1
    return counts


def throughput_report(outcome: SimOutcome, scenario: Scenario) -> ThroughputReport:
    in_range = sum(1 for n in outcome.node_states if n.in_range)
    return ThroughputReport(
        normalized_throughput=normalized_throughput(outcome, scenario),
        normalized_offered=normalized_offered(outcome, scenario),
        absolute_throughput_bps=absolute_throughput_bps(outcome),
        offered_bits_rate_bps=in_range * scenario.traffic.offered_bps_per_node,
        mean_node_throughput_bps=mean_node_throughput_bps(outcome),
        sf_histogram=sf_histogram(outcome.node_states),
    )


def max_viable_distance(
    scenario_template: Scenario,
    criterion: MinThroughputCriterion,
    d_grid: list[float],
    repetitions: int = 5,
) -> float | None:
    """Largest gateway distance whose delivered network rate meets the bar.

    Every grid point runs `repetitions` times with seeds fanned out from the
    template seed, the delivered bits per second are averaged, and the
    largest qualifying distance wins even if the curve is noisy in between.
    Returns None when no grid point qualifies.
    """

    if not d_grid:
        raise ValueError("d_grid must not be empty")
    if list(d_grid) != sorted(d_grid) or len(set(d_grid)) != len(d_grid):
        raise ValueError("d_grid must be strictly increasing")
    if repetitions < 1:
        raise ValueError("repetitions must be at least 1")

    best: float | None = None
    for index, distance in enumerate(d_grid):
        scenario = replace(
            scenario_template,
            geometry=replace(scenario_template.geometry, gateway_distance_m=distance),
        )
        total = 0.0
        for rep in range(repetitions):
            seed = derive_seed(scenario_template.seed, "dbar", index, rep)
            total += absolute_throughput_bps(run_simulation(scenario, seed))
        if total / repetitions >= criterion.threshold_bps:
            best = distance
    return best
