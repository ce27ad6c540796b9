"""Path-loss models for Earth and Mars links, including Martian dust storms.

The Mars surface channel is free-space loss with a third-order distance
exponent (rocky terrain, many scatterers) plus an optional per-kilometre
attenuation from suspended dust; Earth uses the plain second-order exponent.
Fading, shadowing and multi-path are deliberately out of scope.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

SPEED_OF_LIGHT = 299_792_458.0
"""Exact SI value, m/s."""

#: Excess attenuation is negligible below roughly 1 GHz for realistic
#: Martian dust; the model keeps it anyway so frequency sweeps expose it.
DUST_EPS_REAL_DEFAULT = 2.9038
DUST_EPS_IMAG_DEFAULT = 0.1278


class Environment(enum.Enum):
    """Deployment environment; selects the path-loss exponent."""

    EARTH = "earth"
    MARS = "mars"

    @property
    def path_loss_exponent(self) -> int:
        return 2 if self is Environment.EARTH else 3


@dataclass(frozen=True)
class DustStorm:
    """Suspended-dust population driving the excess attenuation.

    eps_real/eps_imag are the real and imaginary parts of the relative
    dielectric permittivity of the particles, particle_density is the count
    per cubic metre and mean_radius the average particle radius in metres.
    """

    particle_density: float
    mean_radius: float
    eps_real: float = DUST_EPS_REAL_DEFAULT
    eps_imag: float = DUST_EPS_IMAG_DEFAULT

    def __post_init__(self) -> None:
        if self.eps_real <= 0:
            raise ValueError("eps_real must be positive")
        if self.eps_imag < 0:
            raise ValueError("eps_imag must be non-negative")
        if self.particle_density < 0:
            raise ValueError("particle_density must be non-negative")
        if self.mean_radius < 0:
            raise ValueError("mean_radius must be non-negative")


#: Storm intensity presets: (particle density per m^3, mean radius in m).
#: Stronger winds lift larger particles, hence radius grows with intensity.
DUST_PRESETS: dict[str, DustStorm] = {
    "low": DustStorm(particle_density=1e6, mean_radius=1.5e-6),
    "moderate": DustStorm(particle_density=1e7, mean_radius=4.5e-6),
    "severe": DustStorm(particle_density=3e7, mean_radius=20e-6),
}


@dataclass(frozen=True)
class ChannelConfig:
    """Radio channel description: environment, carrier and optional storm.

    A configured storm is ignored on Earth.
    """

    environment: Environment
    frequency_hz: float = 868e6
    dust: DustStorm | None = None

    def __post_init__(self) -> None:
        if self.frequency_hz <= 0:
            raise ValueError("frequency_hz must be positive")

    @property
    def wavelength_m(self) -> float:
        return wavelength(self.frequency_hz)


def wavelength(frequency_hz: float) -> float:
    """Return the carrier wavelength c/f in metres."""

    if frequency_hz <= 0:
        raise ValueError("frequency_hz must be positive")
    return SPEED_OF_LIGHT / frequency_hz


def fspl_db(distance_m: float, wavelength_m: float, exponent: float) -> float:
    """Free-space path loss 10 * exponent * log10(4*pi*d/lambda), in dB.

    Distances below 1 m are rejected: the near field is not modelled and
    the loss would go negative for the bands of interest.
    """

    if distance_m < 1.0:
        raise ValueError(f"distance_m={distance_m} is below the 1 m model floor")
    if wavelength_m <= 0:
        raise ValueError("wavelength_m must be positive")
    if exponent not in (2, 3):
        raise ValueError(f"exponent must be 2 (Earth) or 3 (Mars), got {exponent}")
    return 10.0 * exponent * math.log10(4.0 * math.pi * distance_m / wavelength_m)


def dust_attenuation_db_per_km(wavelength_m: float, storm: DustStorm) -> float:
    """Excess attenuation from suspended dust, in dB per kilometre.

    A = 1.029e6 * eps'' / (lambda * ((eps' + 2)^2 + eps''^2)) * N_T * r^3
    with every input in SI units. Scales linearly with particle density,
    cubically with particle radius and inversely with wavelength.
    """

    if wavelength_m <= 0:
        raise ValueError("wavelength_m must be positive")
    scattering = (1.029e6 * storm.eps_imag) / (
        wavelength_m * ((storm.eps_real + 2.0) ** 2 + storm.eps_imag**2)
    )
    return scattering * storm.particle_density * storm.mean_radius**3


def total_path_loss_db(distance_m: float, config: ChannelConfig) -> float:
    """Total link loss in dB for one environment at a given distance.

    Mars: cubic-exponent FSPL plus dust attenuation times distance in km
    when a storm is configured. Earth: square-exponent FSPL only.
    """

    lam = config.wavelength_m
    loss = fspl_db(distance_m, lam, config.environment.path_loss_exponent)
    if config.environment is Environment.MARS and config.dust is not None:
        loss += dust_attenuation_db_per_km(lam, config.dust) * (distance_m / 1000.0)
    return loss
