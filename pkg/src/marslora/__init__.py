"""Discrete-event simulator for single-gateway LoRaWAN networks on Earth and Mars."""

__version__ = "0.1.0"

from .channel import (
    DUST_PRESETS,
    SPEED_OF_LIGHT,
    ChannelConfig,
    DustStorm,
    Environment,
    dust_attenuation_db_per_km,
    fspl_db,
    total_path_loss_db,
    wavelength,
)
from .mac import (
    ChannelStats,
    NodeState,
    SimOutcome,
    build_node_states,
    run_simulation,
    simulate_on_states,
    states_for_deployment,
)
from .metrics import (
    MinThroughputCriterion,
    ThroughputReport,
    absolute_throughput_bps,
    max_viable_distance,
    mean_node_throughput_bps,
    normalized_offered,
    normalized_throughput,
    sf_histogram,
    throughput_report,
)
from .phy import (
    SENSITIVITY_DBM,
    SPREADING_FACTORS,
    PhyParams,
    RadioConfig,
    assign_sf,
    bit_rate_bps,
    received_power_dbm,
    sensitivity_dbm,
    time_on_air_s,
)
from .scenario import (
    ArrivalProcess,
    Scenario,
    TrafficModel,
    interarrival_for_offered_bps,
)
from .seeding import derive_seed
from .topology import (
    Deployment,
    Position,
    ScenarioGeometry,
    deploy_uniform_disk,
    write_deployment_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
