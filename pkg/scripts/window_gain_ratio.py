"""Interior versus exterior blind window heat gain for Tehran in summer.

Prints the ratio at the hour of peak direct-normal irradiance, at the hour of
peak beam on the facade, and summed over the summer and the peak day.
"""
import numpy as np

from rdsim.control import BlindMode
from rdsim.scenario import city_scenario, preset_weather
from rdsim.weather import CALENDAR
from rdsim.zone import run_annual


def main(reflectance=0.5):
    wx = preset_weather("Tehran")
    q = {m: run_annual(city_scenario("Tehran", m, reflectance, weather=wx),
                       window_breakdown=True).trace
         for m in (BlindMode.FIXED_INTERIOR, BlindMode.FIXED_EXTERIOR)}
    qi = q[BlindMode.FIXED_INTERIOR]["q_total"]
    qe = q[BlindMode.FIXED_EXTERIOR]["q_total"]
    beam = q[BlindMode.FIXED_INTERIOR]["beam"]
    summer = np.flatnonzero(np.isin(CALENDAR.month, [6, 7, 8]))
    for name, h in (("peak DNI", summer[np.argmax(wx.direct_normal[summer])]),
                    ("peak facade beam", summer[np.argmax(beam[summer])])):
        print(f"{name:17s} {CALENDAR.timestamp(h)}  interior {qi[h]:7.1f} W  "
              f"exterior {qe[h]:6.1f} W  ratio {qi[h] / qe[h]:.2f}")
    print(f"summer total ratio {qi[summer].sum() / qe[summer].sum():.2f}")
    h = summer[np.argmax(wx.direct_normal[summer])]
    day = CALENDAR.day_of_year == CALENDAR.day_of_year[h]
    print(f"peak day ratio     {qi[day].sum() / qe[day].sum():.2f}")


if __name__ == "__main__":
    main()
