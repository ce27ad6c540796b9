import pytest

from marslora.channel import Environment
from marslora.config import ConfigError, SweepSpec, parse_config
from marslora.scenario import ArrivalProcess, Scenario

MINIMAL = """
[channel]
environment = earth

[geometry]
disk_radius = 1000
gateway_distance = 500

[traffic]
payload_bytes = 50
mean_interarrival = 500
"""


def test_minimal_config_applies_defaults():
    scenario = parse_config(MINIMAL)
    assert isinstance(scenario, Scenario)
    assert scenario.channel.environment is Environment.EARTH
    assert scenario.channel.frequency_hz == 868e6
    assert scenario.channel.dust is None
    assert scenario.geometry.node_count == 1000
    assert scenario.traffic.arrival_process is ArrivalProcess.POISSON
    assert scenario.radio.tx_power_dbm == 14.0
    assert scenario.phy.bandwidth_hz == 125e3
    assert scenario.phy.coding_rate == pytest.approx(4 / 5)
    assert scenario.duration_s == 500.0
    assert scenario.seed == 1


def test_empty_traffic_section_lists_required_keys():
    text = MINIMAL.replace("payload_bytes = 50\nmean_interarrival = 500\n", "")
    with pytest.raises(ConfigError, match="payload_bytes"):
        parse_config(text)


def test_mars_without_dust_section():
    scenario = parse_config(MINIMAL.replace("environment = earth", "environment = mars"))
    assert scenario.channel.environment is Environment.MARS
    assert scenario.channel.dust is None


def test_dust_preset_expands_to_table_values():
    text = MINIMAL.replace("environment = earth", "environment = mars") + """
[dust]
preset = severe
"""
    scenario = parse_config(text)
    storm = scenario.channel.dust
    assert storm.particle_density == 3e7
    assert storm.mean_radius == 20e-6
    assert storm.eps_real == 2.9038
    assert storm.eps_imag == 0.1278


def test_dust_explicit_parameters():
    text = MINIMAL + """
[dust]
particle_density = 1e7
mean_radius = 4.5e-6
"""
    storm = parse_config(text).channel.dust
    assert storm.particle_density == 1e7
    assert storm.mean_radius == 4.5e-6


def test_unknown_dust_preset_rejected():
    text = MINIMAL + "\n[dust]\npreset = apocalyptic\n"
    with pytest.raises(ConfigError, match="apocalyptic"):
        parse_config(text)


def test_unknown_key_names_key_and_line():
    text = MINIMAL + "\n[radio]\ntx_powr_dbm = 14\n"
    line = text.splitlines().index("tx_powr_dbm = 14") + 1
    with pytest.raises(ConfigError, match=rf"tx_powr_dbm.*line {line}"):
        parse_config(text)


def test_unknown_section_rejected():
    with pytest.raises(ConfigError, match=r"\[antenna\]"):
        parse_config(MINIMAL + "\n[antenna]\ngain = 3\n")


def test_bad_number_names_key_and_line():
    text = MINIMAL.replace("disk_radius = 1000", "disk_radius = huge")
    with pytest.raises(ConfigError, match="disk_radius"):
        parse_config(text)


def test_duplicate_key_rejected():
    text = MINIMAL + "\n[simulation]\nseed = 1\nseed = 2\n"
    with pytest.raises(ConfigError, match="duplicate key 'seed'"):
        parse_config(text)


def test_key_outside_section_rejected():
    with pytest.raises(ConfigError, match="outside any section"):
        parse_config("payload_bytes = 50\n" + MINIMAL)


def test_offered_bps_derives_interarrival():
    text = MINIMAL.replace("mean_interarrival = 500", "offered_bps = 800")
    scenario = parse_config(text)
    # 1000 nodes * 400 bits / 800 bit/s
    assert scenario.traffic.mean_interarrival_s == pytest.approx(500.0)


def test_traffic_rate_must_be_given_exactly_once():
    both = MINIMAL.replace(
        "mean_interarrival = 500", "mean_interarrival = 500\noffered_bps = 800"
    )
    with pytest.raises(ConfigError, match="exactly one"):
        parse_config(both)
    neither = MINIMAL.replace("mean_interarrival = 500", "")
    with pytest.raises(ConfigError, match="exactly one"):
        parse_config(neither)


def test_invalid_environment_rejected():
    with pytest.raises(ConfigError, match="venus"):
        parse_config(MINIMAL.replace("environment = earth", "environment = venus"))


def test_invalid_arrival_process_rejected():
    text = MINIMAL.replace(
        "mean_interarrival = 500", "mean_interarrival = 500\narrival_process = bursty"
    )
    with pytest.raises(ConfigError, match="bursty"):
        parse_config(text)


def test_out_of_range_value_reported_as_config_error():
    with pytest.raises(ConfigError, match="invalid scenario value"):
        parse_config(MINIMAL.replace("payload_bytes = 50", "payload_bytes = 999"))


def test_coding_rate_fraction_syntax():
    text = MINIMAL + "\n[phy]\ncoding_rate = 4/6\n"
    assert parse_config(text).phy.coding_rate == pytest.approx(4 / 6)


def test_sweep_spec_parsing():
    text = MINIMAL + """
[sweep]
axis = gateway_distance
values = 100, 200, 300
repetitions = 3
output = distances.csv
"""
    spec = parse_config(text)
    assert isinstance(spec, SweepSpec)
    assert spec.axis == "gateway_distance"
    assert spec.values == (100.0, 200.0, 300.0)
    assert spec.repetitions == 3
    assert spec.output_path == "distances.csv"


def test_sweep_axis_validation():
    text = MINIMAL + "\n[sweep]\naxis = antenna_height\nvalues = 1, 2\n"
    with pytest.raises(ConfigError, match="antenna_height"):
        parse_config(text)


def test_sweep_dust_preset_values():
    text = MINIMAL + "\n[sweep]\naxis = dust_preset\nvalues = low, severe\n"
    spec = parse_config(text)
    assert spec.values == ("low", "severe")
    bad = MINIMAL + "\n[sweep]\naxis = dust_preset\nvalues = low, vicious\n"
    with pytest.raises(ConfigError, match="vicious"):
        parse_config(bad)


def test_sweep_requires_numeric_values():
    text = MINIMAL + "\n[sweep]\naxis = frequency\nvalues = a, b\n"
    with pytest.raises(ConfigError, match="numeric"):
        parse_config(text)
