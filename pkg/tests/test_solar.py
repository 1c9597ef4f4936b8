import math
from datetime import datetime, timedelta

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rdsim.solar import (PlaneIrradiance, SolarPosition, SunBelowHorizon,
                         incidence_angle_from, plane_irradiance, plane_of_array,
                         position_from_solar_time, profile_angle,
                         profile_angle_from, solar_position)
from rdsim.weather import SitePosition, WeatherRecord

from oracles import noaa_solar_altitude

TEHRAN = SitePosition(35.42, 51.15, 3.5)


def test_equinox_noon_identity():
    # day 80 is 21 March; declination is within a few hundredths of zero
    alt, _ = position_from_solar_time(35.42, 80, 12.0)
    assert float(alt) == pytest.approx(90 - 35.42, abs=0.5)


def test_midnight_sun_down():
    for site in (TEHRAN, SitePosition(38.13, 46.23, 3.5)):
        assert not solar_position(site, datetime(2018, 1, 15, 0)).sun_up


def test_june_noon_against_noaa():
    # 21 June, apparent solar noon for Tehran falls near 12:11 clock time
    for minute in range(0, 60, 10):
        when = datetime(2018, 6, 21, 12, minute)
        ours = solar_position(TEHRAN, when, step_offset=0.0).altitude
        ref = noaa_solar_altitude(35.42, 51.15, 3.5, when)
        assert ours == pytest.approx(ref, abs=0.5)


def test_azimuth_range_and_noon_south():
    alt, az = position_from_solar_time(35.42, np.arange(1, 366), 12.0)
    assert np.all((az >= 0) & (az < 360))
    np.testing.assert_allclose(az, 180.0, atol=1e-6)


def test_noon_altitude_peaks_in_june():
    days = np.arange(1, 366)
    for lat in (35.42, 38.13, 31.90):
        alt, _ = position_from_solar_time(lat, days, 12.0)
        assert 160 <= days[np.argmax(alt)] <= 185
        assert days[np.argmin(alt)] >= 340 or days[np.argmin(alt)] <= 5


def test_profile_equals_altitude_due_south():
    assert profile_angle(SolarPosition(40.0, 180.0)) == pytest.approx(40.0)


def test_profile_grazing():
    assert profile_angle(SolarPosition(0.1, 250.0)) == pytest.approx(0.0, abs=0.3)


def test_profile_hand_value():
    # tan p = tan 45 / cos 60 = 2
    assert profile_angle(SolarPosition(45.0, 240.0)) == pytest.approx(63.43, abs=0.01)
    assert profile_angle(SolarPosition(45.0, 120.0)) == pytest.approx(63.43, abs=0.01)


def test_profile_below_horizon():
    with pytest.raises(SunBelowHorizon):
        profile_angle(SolarPosition(-3.0, 180.0))


def test_profile_clamped_below_90():
    p = profile_angle_from(60.0, 269.999)
    assert 0 <= p < 90


def _record(dni, dhi):
    return WeatherRecord(datetime(2018, 6, 1, 12), 25.0, 30.0, dni, dhi)


def test_poa_night_diffuse():
    poa = plane_of_array(_record(0.0, 100.0), SolarPosition(-5.0, 0.0))
    assert poa.beam == 0.0 and poa.sky_diffuse == 50.0


def test_poa_zero():
    poa = plane_of_array(_record(0.0, 0.0), SolarPosition(30.0, 180.0))
    assert poa.total == 0.0


def test_poa_hand_value():
    # incidence 60 deg with altitude 30 deg: cos i = cos30 cos(gamma) = 0.5
    gamma = math.degrees(math.acos(0.5 / math.cos(math.radians(30.0))))
    poa = plane_of_array(_record(800.0, 100.0), SolarPosition(30.0, 180.0 + gamma))
    assert poa.incidence_angle == pytest.approx(60.0)
    assert poa.beam == pytest.approx(400.0)
    assert poa.sky_diffuse == pytest.approx(50.0)
    assert poa.ground_reflected == pytest.approx(50.0)


def test_incidence_due_south():
    # on a vertical facade the sun's angle from the normal equals its altitude
    # when it stands in the normal's vertical plane
    for alt in (10.0, 35.0, 70.0):
        assert incidence_angle_from(alt, 180.0) == pytest.approx(alt)


def test_beam_zero_behind_facade():
    poa = plane_irradiance(900.0, 100.0, 20.0, 10.0)  # sun in the north
    assert poa.beam == 0.0


@given(st.floats(0, 1100), st.floats(0, 1100), st.floats(0, 500),
       st.floats(-10, 89), st.floats(0, 359.9))
def test_poa_monotone_in_inputs(dni, extra, dhi, alt, az):
    a = plane_irradiance(dni, dhi, alt, az)
    b = plane_irradiance(dni + extra, dhi, alt, az)
    c = plane_irradiance(dni, dhi + extra, alt, az)
    for f in ("beam", "sky_diffuse", "ground_reflected"):
        assert getattr(b, f) >= getattr(a, f) - 1e-9
        assert getattr(c, f) >= getattr(a, f) - 1e-9
        assert getattr(a, f) >= 0.0
