import json
from datetime import datetime
from pathlib import Path

import numpy as np
import pytest

from rdsim.blind_optics import BlindLocation
from rdsim.control import BlindMode, SeasonCalendar, blind_schedule, blind_state_for
from rdsim.scenario import (CITIES, LOAD_COLUMNS, ConfigError, MismatchedWeather,
                            ZeroBase, _find, city_scenario, comparison_report,
                            efficiency, parse_config, rds_decomposition_check,
                            read_loads_csv, sweep_configs, write_loads_csv,
                            write_trace_csv)
from rdsim.weather import CALENDAR
from rdsim.zone import LoadReport, run_annual

CONFIGS = Path(__file__).resolve().parents[1] / "configs"
CAL = SeasonCalendar()


def report(total, city="X", mode="rds", rho=0.1):
    h = np.zeros(12)
    h[0] = total
    return LoadReport(h, np.zeros(12), np.zeros(12),
                      {"city": city, "mode": mode, "reflectance": rho})


# --- control -----------------------------------------------------------------

def test_rds_summer_is_exterior():
    s = blind_state_for(BlindMode.RDS, CAL, datetime(2018, 6, 15, 12), 0.5)
    assert s.location == BlindLocation.EXTERIOR and s.slat_angle == 30.0
    assert s.geometry.reflectance_front == 0.5


def test_rds_winter_is_interior():
    s = blind_state_for(BlindMode.RDS, CAL, datetime(2018, 1, 15, 12), 0.1)
    assert s.location == BlindLocation.INTERIOR and s.slat_angle == 120.0


def test_fixed_interior_follows_season_angle():
    s = blind_state_for(BlindMode.FIXED_INTERIOR, CAL, datetime(2018, 7, 1, 9), 0.9)
    assert s.location == BlindLocation.INTERIOR and s.slat_angle == 30.0


def test_calendar_partitions_year():
    assert CAL.heating_months | CAL.cooling_months == set(range(1, 13))
    assert not CAL.heating_months & CAL.cooling_months
    with pytest.raises(ValueError):
        SeasonCalendar(heating_months={0, 13})


def test_schedule_masks_cover_every_hour_once():
    groups = blind_schedule(BlindMode.RDS, CAL, CALENDAR.month, 0.5)
    total = sum(m.astype(int) for _, m in groups)
    assert np.all(total == 1)
    locs = {s.location for s, _ in groups}
    assert locs == {BlindLocation.INTERIOR, BlindLocation.EXTERIOR}


# --- efficiencies ------------------------------------------------------------

def test_efficiency_examples():
    assert efficiency(report(1720.72), report(1565.0)) == pytest.approx(0.0905, abs=5e-5)
    assert efficiency(report(100.0), report(120.0)) == pytest.approx(-0.20)
    assert efficiency(report(321.0), report(321.0)) == 0.0
    with pytest.raises(ZeroBase):
        efficiency(report(0.0), report(5.0))
    with pytest.raises(ZeroDivisionError):
        efficiency(report(0.0), report(0.0))


def test_sweep_shape(sweep_rows):
    assert len(sweep_rows) == 27
    keys = {(r.label["city"], r.label["mode"], r.label["reflectance"]) for r in sweep_rows}
    assert len(keys) == 27
    assert [r.label["city"] for r in sweep_rows[::9]] == list(CITIES)


def test_decomposition_holds(sweep_rows):
    for city in CITIES:
        for rho in (0.1, 0.5, 0.9):
            args = [_find(sweep_rows, city, m, rho) for m in
                    (BlindMode.RDS, BlindMode.FIXED_INTERIOR, BlindMode.FIXED_EXTERIOR)]
            assert rds_decomposition_check(*args)


def test_decomposition_negative_control(sweep_rows):
    args = [_find(sweep_rows, "Tehran", m, 0.1) for m in
            (BlindMode.RDS, BlindMode.FIXED_INTERIOR, BlindMode.FIXED_EXTERIOR)]
    shifted = SeasonCalendar(heating_months={10, 11, 12, 1, 2, 3})
    assert not rds_decomposition_check(*args, calendar=shifted)


def test_decomposition_refuses_mixed_cities(sweep_rows):
    with pytest.raises(MismatchedWeather):
        rds_decomposition_check(_find(sweep_rows, "Tehran", "rds", 0.1),
                                _find(sweep_rows, "Yazd", "interior", 0.1),
                                _find(sweep_rows, "Tehran", "exterior", 0.1))


def test_comparison_rows(sweep_rows):
    rows = comparison_report(sweep_rows)
    assert len(rows) == 3 * 4
    for row in rows:
        assert row.vs_interior == pytest.approx(
            (row.interior_total - row.rds_total) / row.interior_total)


# --- config ------------------------------------------------------------------

def test_shipped_configs_parse():
    for name in ("tehran.json", "custom_site.json"):
        cfg = parse_config(json.loads((CONFIGS / name).read_text()))
        assert cfg.city
    configs, modes, rhos = sweep_configs(json.loads((CONFIGS / "three_city_sweep.json").read_text()))
    assert [c.city for c in configs] == list(CITIES)
    assert len(modes) == 3 and rhos == [0.1, 0.5, 0.9]


def test_envelope_units():
    cfg = parse_config({"site": {"city": "Tehran"},
                        "envelope": {"units": "si", "wall_u": 0.5, "window_u": 2.0}})
    assert cfg.zone.wall_u == 0.5 and cfg.zone.window_u == 2.0
    ip = parse_config({"site": {"city": "Tehran"}})
    assert ip.zone.wall_u == pytest.approx(0.077 * 5.678263, rel=1e-5)


@pytest.mark.parametrize("data", [
    {"site": {"city": "Tehran"}, "zone": {"wwr": 1.2}},
    {"site": {"city": "Tehran"}, "bogus": {}},
    {"site": {"city": "Tehran"}, "zone": {"colour": "red"}},
    {"site": {"city": "Tehran"}, "blind": {"reflectance": 1.5}},
    {"site": {"city": "Tehran"}, "blind": {"mode": "sideways"}},
    {"site": {"city": "Tehran"}, "setpoints": {"heating": 27, "cooling": 26}},
    {"site": {"city": "Atlantis"}},
    {"site": {"latitude": 95.0, "longitude": 0.0}},
])
def test_bad_config_raises(data):
    with pytest.raises(ConfigError):
        parse_config(data)


# --- csv ---------------------------------------------------------------------

def test_loads_csv_round_trip(tmp_path, sweep_rows):
    path = tmp_path / "loads.csv"
    write_loads_csv(sweep_rows, path)
    header = path.read_text().splitlines()[0].split(",")
    assert header == LOAD_COLUMNS
    back = read_loads_csv(path)
    assert len(back) == len(sweep_rows)
    for a, b in zip(sweep_rows, back):
        assert a.label == b.label
        np.testing.assert_array_equal(a.heating, b.heating)
        np.testing.assert_array_equal(a.lighting, b.lighting)


def test_trace_csv(tmp_path, city_weather):
    sc = city_scenario("Tehran", BlindMode.RDS, 0.1, weather=city_weather["Tehran"])
    tr = run_annual(sc, with_trace=True).trace
    path = tmp_path / "trace.csv"
    write_trace_csv(tr, path)
    lines = path.read_text().splitlines()
    assert len(lines) == 8761
    assert lines[1].startswith("2018-01-01T00:00")
