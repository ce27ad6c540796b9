"""LoRa physical-layer arithmetic.

Spreading-factor tables, uplink bit rates, frame time on air, the link
budget and the lowest-usable-SF assignment rule. All pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SPREADING_FACTORS = (7, 8, 9, 10, 11, 12)

#: Receiver sensitivity in dBm per spreading factor at 125 kHz.
#: SF7 and SF12 are the published endpoints; the intermediate values
#: interpolate linearly in dB (2.2 dB per step).
SENSITIVITY_DBM: dict[int, float] = {
    7: -132.0,
    8: -134.2,
    9: -136.4,
    10: -138.6,
    11: -140.8,
    12: -143.0,
}

#: Payload accepted by the frame model, bytes. The upper end matches the
#: largest packet size used in the bundled experiment presets.
PAYLOAD_RANGE = (1, 256)


@dataclass(frozen=True)
class PhyParams:
    """Modulation and framing configuration shared by all nodes."""

    bandwidth_hz: float = 125e3
    coding_rate: float = 4 / 5
    preamble_symbols: int = 8
    explicit_header: bool = True
    crc_enabled: bool = True

    def __post_init__(self) -> None:
        if self.bandwidth_hz <= 0:
            raise ValueError("bandwidth_hz must be positive")
        denom = 4.0 / self.coding_rate
        if abs(denom - round(denom)) > 1e-9 or round(denom) not in (5, 6, 7, 8):
            raise ValueError(
                f"coding_rate must be one of 4/5..4/8, got {self.coding_rate}"
            )
        if self.preamble_symbols < 1:
            raise ValueError("preamble_symbols must be at least 1")

    @property
    def coding_rate_denominator(self) -> int:
        return round(4.0 / self.coding_rate)


@dataclass(frozen=True)
class RadioConfig:
    """Transmit power and antenna gains of the link budget."""

    tx_power_dbm: float = 14.0
    tx_antenna_gain_dbi: float = 0.0
    rx_antenna_gain_dbi: float = 0.0


def _check_sf(sf: int) -> None:
    if sf not in SENSITIVITY_DBM:
        raise ValueError(f"spreading factor must be in 7..12, got {sf}")


def sensitivity_dbm(sf: int) -> float:
    """Minimum decodable received power for a spreading factor, dBm."""

    _check_sf(sf)
    return SENSITIVITY_DBM[sf]


def bit_rate_bps(sf: int, params: PhyParams = PhyParams()) -> float:
    """Uplink data rate SF * B * CR / 2^SF in bits per second."""

    _check_sf(sf)
    return sf * params.bandwidth_hz * params.coding_rate / 2**sf


def time_on_air_s(payload_bytes: int, sf: int, params: PhyParams = PhyParams()) -> float:
    """Frame duration in seconds for one uplink transmission.

    Standard LoRa airtime: (preamble + 4.25 + payload symbols) * 2^SF / B,
    with the low-data-rate optimisation active for SF11/SF12 at 125 kHz.
    """

    _check_sf(sf)
    lo, hi = PAYLOAD_RANGE
    if not lo <= payload_bytes <= hi:
        raise ValueError(f"payload_bytes must be in {lo}..{hi}, got {payload_bytes}")
    de = 1 if sf >= 11 and params.bandwidth_hz <= 125e3 else 0
    ih = 0 if params.explicit_header else 1
    crc = 1 if params.crc_enabled else 0
    symbol_s = 2**sf / params.bandwidth_hz
    numerator = 8 * payload_bytes - 4 * sf + 28 + 16 * crc - 20 * ih
    payload_symbols = 8 + max(
        math.ceil(numerator / (4 * (sf - 2 * de))) * params.coding_rate_denominator, 0
    )
    return (params.preamble_symbols + 4.25 + payload_symbols) * symbol_s


def received_power_dbm(radio: RadioConfig, path_loss_db: float) -> float:
    """Link budget: transmit power plus antenna gains minus path loss."""

    return (
        radio.tx_power_dbm
        + radio.tx_antenna_gain_dbi
        + radio.rx_antenna_gain_dbi
        - path_loss_db
    )


def assign_sf(received_power_dbm_value: float) -> int | None:
    """Pick the lowest SF whose sensitivity the received power clears.

    Returns None when the power is below even the SF12 sensitivity, i.e.
    the node is out of range. Lower SF means higher data rate, so this is
    the rate-maximising assignment.
    """

    for sf in SPREADING_FACTORS:
        if received_power_dbm_value >= SENSITIVITY_DBM[sf]:
            return sf
    return None
