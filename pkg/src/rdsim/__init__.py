"""Single-zone simulator for windows with interior, exterior and seasonally
relocated venetian blinds."""
from .blind_optics import (BlindLocation, BlindOpticalProperties, BlindState,
                           SlatGeometry, beam_beam_transmittance,
                           beam_diffuse_split, blind_properties,
                           diffuse_exchange)
from .control import BlindMode, SeasonCalendar, blind_state_for
from .scenario import (CITIES, Scenario, city_scenario, comparison_report,
                       efficiency, load_config, rds_decomposition_check,
                       run_sweep)
from .weather import SitePosition, WeatherSeries, parse_epw, synth_weather
from .zone import LoadReport, ZoneSpec, run_annual

__all__ = [
    "BlindLocation", "BlindMode", "BlindOpticalProperties", "BlindState",
    "CITIES", "LoadReport", "Scenario", "SeasonCalendar", "SitePosition",
    "SlatGeometry", "WeatherSeries", "ZoneSpec", "beam_beam_transmittance",
    "beam_diffuse_split", "blind_properties", "blind_state_for",
    "city_scenario", "comparison_report", "diffuse_exchange", "efficiency",
    "load_config", "parse_epw", "rds_decomposition_check", "run_annual",
    "run_sweep", "synth_weather",
]
