"""Sectioned key-value configuration files describing scenarios and sweeps.

Format: `[section]` headers, `key = value` lines, `#` or `;` comments and
blank lines. Unknown sections or keys are hard errors that name the exact
line, so a typo cannot silently fall back to a default.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any

from .channel import (
    DUST_EPS_IMAG_DEFAULT,
    DUST_EPS_REAL_DEFAULT,
    DUST_PRESETS,
    ChannelConfig,
    DustStorm,
    Environment,
)
from .phy import PhyParams, RadioConfig
from .scenario import (
    ArrivalProcess,
    Scenario,
    TrafficModel,
    interarrival_for_offered_bps,
)
from .topology import ScenarioGeometry

SWEEP_AXES = (
    "gateway_distance",
    "disk_radius",
    "frequency",
    "payload_bytes",
    "mean_interarrival",
    "dust_preset",
    "mean_radius",
)


class ConfigError(Exception):
    """Invalid configuration document; message carries key and line."""


@dataclass(frozen=True)
class SweepSpec:
    """One-axis sweep around a base scenario."""

    base: Scenario
    axis: str
    values: tuple[Any, ...]
    repetitions: int = 5
    output_path: str = "sweep.csv"


@dataclass
class _Entry:
    value: str
    line: int


_KNOWN_KEYS = {
    "channel": {"environment", "frequency"},
    "dust": {"preset", "eps_real", "eps_imag", "particle_density", "mean_radius"},
    "geometry": {"disk_radius", "gateway_distance", "node_count"},
    "traffic": {"payload_bytes", "mean_interarrival", "offered_bps", "arrival_process"},
    "radio": {"tx_power_dbm", "tx_antenna_gain_dbi", "rx_antenna_gain_dbi"},
    "phy": {
        "bandwidth_hz",
        "coding_rate",
        "preamble_symbols",
        "explicit_header",
        "crc_enabled",
    },
    "simulation": {"duration_s", "seed"},
    "sweep": {"axis", "values", "repetitions", "output"},
}


def _scan(text: str) -> dict[str, dict[str, _Entry]]:
    sections: dict[str, dict[str, _Entry]] = {}
    current: str | None = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("#", ";")):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            if current not in _KNOWN_KEYS:
                raise ConfigError(f"unknown section [{current}] at line {number}")
            sections.setdefault(current, {})
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value' at line {number}: {raw!r}")
        if current is None:
            raise ConfigError(f"key outside any section at line {number}: {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        if key not in _KNOWN_KEYS[current]:
            raise ConfigError(f"unknown key '{key}' in [{current}] at line {number}")
        if key in sections[current]:
            raise ConfigError(f"duplicate key '{key}' in [{current}] at line {number}")
        sections[current][key] = _Entry(value.strip(), number)
    return sections


class _Section:
    def __init__(self, name: str, entries: dict[str, _Entry]):
        self.name = name
        self.entries = entries

    def _fail(self, key: str, entry: _Entry, kind: str) -> ConfigError:
        return ConfigError(
            f"key '{key}' in [{self.name}] at line {entry.line}: "
            f"expected {kind}, got {entry.value!r}"
        )

    def has(self, key: str) -> bool:
        return key in self.entries

    def raw(self, key: str) -> str:
        return self.entries[key].value

    def number(self, key: str, default: float | None = None) -> float | None:
        if key not in self.entries:
            return default
        entry = self.entries[key]
        try:
            return float(entry.value)
        except ValueError:
            raise self._fail(key, entry, "a number") from None

    def integer(self, key: str, default: int | None = None) -> int | None:
        if key not in self.entries:
            return default
        entry = self.entries[key]
        try:
            return int(float(entry.value))
        except ValueError:
            raise self._fail(key, entry, "an integer") from None

    def boolean(self, key: str, default: bool) -> bool:
        if key not in self.entries:
            return default
        entry = self.entries[key]
        lowered = entry.value.lower()
        if lowered in ("true", "yes", "1", "on"):
            return True
        if lowered in ("false", "no", "0", "off"):
            return False
        raise self._fail(key, entry, "a boolean")

    def fraction(self, key: str, default: float) -> float:
        if key not in self.entries:
            return default
        entry = self.entries[key]
        value = entry.value
        if "/" in value:
            num, _, den = value.partition("/")
            try:
                return float(num) / float(den)
            except (ValueError, ZeroDivisionError):
                raise self._fail(key, entry, "a fraction like 4/5") from None
        try:
            return float(value)
        except ValueError:
            raise self._fail(key, entry, "a fraction like 4/5") from None


def _require(section: _Section | None, name: str, keys: list[str]) -> None:
    missing = keys if section is None else [k for k in keys if not section.has(k)]
    if missing:
        raise ConfigError(
            f"section [{name}] is missing required keys: {', '.join(sorted(missing))}"
        )


def _build_dust(dust: _Section | None) -> DustStorm | None:
    if dust is None:
        return None
    if dust.has("preset"):
        name = dust.raw("preset").lower()
        if name not in DUST_PRESETS:
            raise ConfigError(
                f"dust preset must be one of {sorted(DUST_PRESETS)}, got '{name}'"
            )
        base = DUST_PRESETS[name]
        return replace(
            base,
            eps_real=dust.number("eps_real", base.eps_real),
            eps_imag=dust.number("eps_imag", base.eps_imag),
            particle_density=dust.number("particle_density", base.particle_density),
            mean_radius=dust.number("mean_radius", base.mean_radius),
        )
    _require(dust, "dust", ["particle_density", "mean_radius"])
    return DustStorm(
        particle_density=dust.number("particle_density"),
        mean_radius=dust.number("mean_radius"),
        eps_real=dust.number("eps_real", DUST_EPS_REAL_DEFAULT),
        eps_imag=dust.number("eps_imag", DUST_EPS_IMAG_DEFAULT),
    )


def _parse_axis_values(axis: str, raw: str) -> tuple[Any, ...]:
    items = [piece.strip() for piece in raw.split(",") if piece.strip()]
    if not items:
        raise ConfigError("sweep values must be a non-empty comma-separated list")
    if axis == "dust_preset":
        for item in items:
            if item.lower() not in DUST_PRESETS:
                raise ConfigError(f"unknown dust preset '{item}' in sweep values")
        return tuple(item.lower() for item in items)
    try:
        if axis == "payload_bytes":
            return tuple(int(float(item)) for item in items)
        return tuple(float(item) for item in items)
    except ValueError:
        raise ConfigError(f"sweep values for axis '{axis}' must be numeric") from None


def parse_config(text: str) -> Scenario | SweepSpec:
    """Build a validated Scenario, or a SweepSpec when [sweep] is present.

    Omitted optional keys fall back to the standard defaults (868 MHz,
    125 kHz bandwidth, 1000 nodes, 14 dBm, 500 s, CR 4/5).
    """

    sections = _scan(text)

    def sec(name: str) -> _Section | None:
        return _Section(name, sections[name]) if name in sections else None

    channel_sec = sec("channel")
    _require(channel_sec, "channel", ["environment"])
    env_raw = channel_sec.raw("environment").lower()
    try:
        environment = Environment(env_raw)
    except ValueError:
        raise ConfigError(
            f"environment must be 'earth' or 'mars', got '{env_raw}' at line "
            f"{channel_sec.entries['environment'].line}"
        ) from None
    dust = _build_dust(sec("dust"))

    geometry_sec = sec("geometry")
    _require(geometry_sec, "geometry", ["disk_radius", "gateway_distance"])

    traffic_sec = sec("traffic")
    _require(traffic_sec, "traffic", ["payload_bytes"])
    payload = traffic_sec.integer("payload_bytes")
    has_interarrival = traffic_sec.has("mean_interarrival")
    has_offered = traffic_sec.has("offered_bps")
    if has_interarrival == has_offered:
        raise ConfigError(
            "section [traffic] needs exactly one of: mean_interarrival, offered_bps"
        )
    node_count = geometry_sec.integer("node_count", 1000)
    if has_interarrival:
        interarrival = traffic_sec.number("mean_interarrival")
    else:
        interarrival = interarrival_for_offered_bps(
            traffic_sec.number("offered_bps"), payload, node_count
        )
    process_raw = (
        traffic_sec.raw("arrival_process").lower()
        if traffic_sec.has("arrival_process")
        else "poisson"
    )
    try:
        process = ArrivalProcess(process_raw)
    except ValueError:
        raise ConfigError(
            f"arrival_process must be 'poisson' or 'periodic', got '{process_raw}'"
        ) from None

    radio_sec = sec("radio")
    phy_sec = sec("phy")
    sim_sec = sec("simulation")

    try:
        scenario = Scenario(
            channel=ChannelConfig(
                environment=environment,
                frequency_hz=channel_sec.number("frequency", 868e6),
                dust=dust,
            ),
            geometry=ScenarioGeometry(
                disk_radius_m=geometry_sec.number("disk_radius"),
                gateway_distance_m=geometry_sec.number("gateway_distance"),
                node_count=node_count,
            ),
            traffic=TrafficModel(
                payload_bytes=payload,
                mean_interarrival_s=interarrival,
                arrival_process=process,
            ),
            radio=RadioConfig(
                tx_power_dbm=radio_sec.number("tx_power_dbm", 14.0) if radio_sec else 14.0,
                tx_antenna_gain_dbi=(
                    radio_sec.number("tx_antenna_gain_dbi", 0.0) if radio_sec else 0.0
                ),
                rx_antenna_gain_dbi=(
                    radio_sec.number("rx_antenna_gain_dbi", 0.0) if radio_sec else 0.0
                ),
            ),
            phy=PhyParams(
                bandwidth_hz=phy_sec.number("bandwidth_hz", 125e3) if phy_sec else 125e3,
                coding_rate=phy_sec.fraction("coding_rate", 4 / 5) if phy_sec else 4 / 5,
                preamble_symbols=(
                    phy_sec.integer("preamble_symbols", 8) if phy_sec else 8
                ),
                explicit_header=(
                    phy_sec.boolean("explicit_header", True) if phy_sec else True
                ),
                crc_enabled=phy_sec.boolean("crc_enabled", True) if phy_sec else True,
            ),
            duration_s=sim_sec.number("duration_s", 500.0) if sim_sec else 500.0,
            seed=sim_sec.integer("seed", 1) if sim_sec else 1,
        )
    except ValueError as exc:
        raise ConfigError(f"invalid scenario value: {exc}") from None

    sweep_sec = sec("sweep")
    if sweep_sec is None:
        return scenario

    _require(sweep_sec, "sweep", ["axis", "values"])
    axis = sweep_sec.raw("axis").lower()
    if axis not in SWEEP_AXES:
        raise ConfigError(f"sweep axis must be one of {SWEEP_AXES}, got '{axis}'")
    values = _parse_axis_values(axis, sweep_sec.raw("values"))
    repetitions = sweep_sec.integer("repetitions", 5)
    if repetitions < 1:
        raise ConfigError("sweep repetitions must be at least 1")
    output = sweep_sec.raw("output") if sweep_sec.has("output") else "sweep.csv"
    return SweepSpec(
        base=scenario,
        axis=axis,
        values=values,
        repetitions=repetitions,
        output_path=output,
    )
