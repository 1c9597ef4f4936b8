import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rdsim.weather import (CALENDAR, HOURS_PER_YEAR, BadInput, BadRecord,
                           MalformedHeader, SitePosition, WeatherSeries,
                           WrongLength, diurnal_profile, hour_index,
                           monthly_summary, parse_epw, synth_weather, to_epw)
from rdsim.scenario import CITIES
from rdsim.solar import solar_positions

TEHRAN = SitePosition(35.42, 51.15, 3.5)


def constant_series(t=20.0, site=TEHRAN):
    n = HOURS_PER_YEAR
    return WeatherSeries(site, np.full(n, t), np.full(n, 40.0), np.zeros(n),
                         np.zeros(n))


def epw_lines(series):
    return to_epw(series).splitlines()


def test_constant_file_parses_to_constant_series():
    parsed = parse_epw(to_epw(constant_series(20.0)))
    assert len(parsed) == HOURS_PER_YEAR
    assert np.all(parsed.dry_bulb == 20.0)


def test_location_header_gives_site():
    parsed = parse_epw(to_epw(constant_series()))
    assert parsed.site == SitePosition(35.42, 51.15, 3.5)


def test_round_trip_is_identical(city_weather):
    wx = city_weather["Yazd"]
    assert parse_epw(to_epw(wx)) == wx
    assert parse_epw(to_epw(parse_epw(to_epw(wx)))) == wx


def test_stream_input_accepted():
    text = to_epw(constant_series(3.0))
    assert parse_epw(io.StringIO(text)).dry_bulb[100] == 3.0


def _with_field(lines, row, col, value):
    lines = list(lines)
    fields = lines[8 + row].split(",")
    fields[col] = value
    lines[8 + row] = ",".join(fields)
    return "\n".join(lines)


def test_direct_normal_sentinel_inherits_previous_hour(city_weather):
    wx = city_weather["Tehran"]
    noon = hour_index(6, 21, 12)
    text = _with_field(epw_lines(wx), noon, 14, "9999")
    parsed = parse_epw(text)
    assert parsed.direct_normal[noon] == wx.direct_normal[noon - 1]
    assert parsed.direct_normal[noon + 1] == wx.direct_normal[noon + 1]


def test_temperature_sentinel_carries_forward():
    wx = constant_series(12.5)
    text = _with_field(epw_lines(wx), 50, 6, "99.9")
    assert parse_epw(text).dry_bulb[50] == 12.5


def test_leading_irradiance_sentinel_becomes_zero():
    text = _with_field(epw_lines(constant_series()), 0, 15, "9999")
    assert parse_epw(text).diffuse_horizontal[0] == 0.0


def test_malformed_row_reports_line_number():
    text = _with_field(epw_lines(constant_series()), 99, 6, "abc")
    with pytest.raises(BadRecord) as info:
        parse_epw(text)
    assert info.value.line_number == 8 + 99 + 1
    assert "108" in str(info.value)


def test_short_row_rejected():
    lines = epw_lines(constant_series())
    lines[8 + 5] = ",".join(lines[8 + 5].split(",")[:20])
    with pytest.raises(BadRecord) as info:
        parse_epw("\n".join(lines))
    assert info.value.line_number == 14


def test_missing_location_header():
    lines = epw_lines(constant_series())
    lines[0] = "COMMENTS 0,nothing here"
    with pytest.raises(MalformedHeader):
        parse_epw("\n".join(lines))


def test_bad_location_values():
    lines = epw_lines(constant_series())
    lines[0] = "LOCATION,x,-,-,-,0,north,51.15,3.5,0"
    with pytest.raises(MalformedHeader):
        parse_epw("\n".join(lines))


def test_wrong_length():
    lines = epw_lines(constant_series())
    with pytest.raises(WrongLength):
        parse_epw("\n".join(lines[:-1]))


@pytest.mark.parametrize("city,month,expected", [
    ("Tehran", 1, 3.89), ("Yazd", 7, 33.17), ("Tabriz", 1, -1.52)])
def test_monthly_mean_matches_normal(city_weather, city, month, expected):
    assert monthly_summary(city_weather[city])[month - 1][0] == pytest.approx(
        expected, abs=0.01)


@pytest.mark.parametrize("city", sorted(CITIES))
def test_summary_recovers_all_normals(city_weather, city):
    got = np.array(monthly_summary(city_weather[city]))
    np.testing.assert_allclose(got[:, 0], CITIES[city].monthly_dry_bulb, atol=0.01)
    np.testing.assert_allclose(got[:, 1], CITIES[city].monthly_humidity, atol=0.1)


def test_zero_normals_zero_amplitude():
    wx = synth_weather([0.0] * 12, [50.0] * 12, TEHRAN, diurnal_amplitude=0.0)
    assert np.all(wx.dry_bulb == 0.0)


def test_constant_series_summary():
    assert all(m == (10.0, 40.0) for m in monthly_summary(constant_series(10.0)))


def test_alternating_series_summary():
    t = np.where(np.arange(HOURS_PER_YEAR) % 2 == 0, 0.0, 20.0)
    wx = WeatherSeries(TEHRAN, t, np.full(HOURS_PER_YEAR, 30.0),
                       np.zeros(HOURS_PER_YEAR), np.zeros(HOURS_PER_YEAR))
    for mean, _ in monthly_summary(wx):
        assert mean == pytest.approx(10.0, abs=0.1)


def test_diurnal_extremes():
    assert diurnal_profile(5.0) == pytest.approx(-5.0)
    assert diurnal_profile(15.0) == pytest.approx(5.0)
    hours = np.linspace(0, 24, 2401)
    prof = diurnal_profile(hours)
    assert prof.min() == pytest.approx(-5.0) and prof.max() == pytest.approx(5.0)


def test_no_beam_at_night(city_weather):
    for city, wx in city_weather.items():
        alt, _ = solar_positions(wx.site, CALENDAR.day_of_year, CALENDAR.hour + 0.5)
        assert np.all(wx.direct_normal[alt <= 0] == 0.0)
        assert np.all(wx.diffuse_horizontal[alt <= 0] == 0.0)


def test_synthesis_is_bit_identical():
    a = synth_weather(CITIES["Tabriz"].monthly_dry_bulb,
                      CITIES["Tabriz"].monthly_humidity, CITIES["Tabriz"].site)
    b = synth_weather(CITIES["Tabriz"].monthly_dry_bulb,
                      CITIES["Tabriz"].monthly_humidity, CITIES["Tabriz"].site)
    assert a.dry_bulb.tobytes() == b.dry_bulb.tobytes()
    assert a.direct_normal.tobytes() == b.direct_normal.tobytes()


@pytest.mark.parametrize("tdb,rh", [([1.0] * 11, [50.0] * 12),
                                    ([1.0] * 12, [50.0] * 13),
                                    ([1.0] * 12, [50.0] * 11 + [101.0])])
def test_synth_bad_input(tdb, rh):
    with pytest.raises(BadInput):
        synth_weather(tdb, rh, TEHRAN)


def test_series_is_read_only(city_weather):
    with pytest.raises(ValueError):
        city_weather["Tehran"].dry_bulb[0] = 99.0


def test_series_invariants():
    n = HOURS_PER_YEAR
    with pytest.raises(WrongLength):
        WeatherSeries(TEHRAN, np.zeros(10), np.zeros(10), np.zeros(10), np.zeros(10))
    with pytest.raises(BadInput):
        WeatherSeries(TEHRAN, np.zeros(n), np.zeros(n), -np.ones(n), np.zeros(n))
    with pytest.raises(BadInput):
        WeatherSeries(TEHRAN, np.full(n, 70.0), np.zeros(n), np.zeros(n), np.zeros(n))


def test_site_invariants():
    with pytest.raises(BadInput):
        SitePosition(95.0, 0.0, 0.0)
    with pytest.raises(BadInput):
        SitePosition(0.0, 181.0, 0.0)


def test_records_are_hourly_and_increasing(city_weather):
    recs = city_weather["Tehran"].records
    assert len(recs) == HOURS_PER_YEAR
    steps = {(b.timestamp - a.timestamp).total_seconds()
             for a, b in zip(recs[:50], recs[1:51])}
    assert steps == {3600.0}
    assert recs[0].timestamp.year == recs[-1].timestamp.year


@settings(max_examples=15, deadline=None)
@given(st.lists(st.floats(-30, 40), min_size=12, max_size=12),
       st.lists(st.floats(0, 100), min_size=12, max_size=12),
       st.floats(0, 10))
def test_normals_round_trip_property(tdb, rh, amp):
    wx = synth_weather(tdb, rh, TEHRAN, diurnal_amplitude=amp)
    got = np.array(monthly_summary(wx))
    np.testing.assert_allclose(got[:, 0], tdb, atol=0.01)
    np.testing.assert_allclose(got[:, 1], rh, atol=0.1)
