"""CSV schemas of the simulator presets.

These mirror the producing tool's documented output contract; the renderer
validates every input file against them and refuses anything that deviates.
"""

from __future__ import annotations

PRESET_FILES: dict[str, dict[str, list[str]]] = {
    "fig2": {
        "fig2_earth.csv": [
            "environment", "disk_radius_m", "mean_interarrival_s", "repetition",
            "seed", "offered_norm", "throughput_norm", "offered_bps", "throughput_bps",
        ],
        "fig2_mars.csv": [
            "environment", "disk_radius_m", "mean_interarrival_s", "repetition",
            "seed", "offered_norm", "throughput_norm", "offered_bps", "throughput_bps",
        ],
    },
    "fig3": {
        "fig3_earth.csv": [
            "environment", "disk_radius_m", "repetition", "seed",
            "sf7", "sf8", "sf9", "sf10", "sf11", "sf12", "out_of_range",
        ],
        "fig3_mars.csv": [
            "environment", "disk_radius_m", "repetition", "seed",
            "sf7", "sf8", "sf9", "sf10", "sf11", "sf12", "out_of_range",
        ],
    },
    "fig4": {
        "fig4.csv": [
            "environment", "payload_bytes", "offered_bps", "gateway_distance_m",
            "repetition", "seed", "throughput_bps",
        ],
    },
    "fig5": {
        "fig5.csv": [
            "offered_bps", "gateway_distance_m", "repetition", "seed", "throughput_bps",
        ],
    },
    "fig6": {
        "fig6.csv": ["offered_bps", "max_distance_m"],
    },
    "fig7": {
        "fig7.csv": [
            "mean_radius_m", "particle_density_m3", "disk_radius_m",
            "repetition", "seed", "throughput_bps",
        ],
    },
    "fig8": {
        "fig8.csv": [
            "frequency_hz", "gateway_distance_m", "repetition", "seed", "throughput_bps",
        ],
    },
}
