import csv
import json
from pathlib import Path

import pytest

from rdsim.cli import EXIT_CONFIG, EXIT_OK, EXIT_WEATHER, main

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def test_simulate_writes_loads(tmp_path):
    rc = main(["simulate", "--config", str(CONFIGS / "tehran.json"),
               "--out", str(tmp_path), "--trace", "--dump-window-gains"])
    assert rc == EXIT_OK
    rows = list(csv.DictReader(open(tmp_path / "loads.csv")))
    assert len(rows) == 1 and rows[0]["mode"] == "rds"
    header = (tmp_path / "trace.csv").open().readline().strip().split(",")
    assert "q_total" in header and "zone_temp" in header


def test_simulate_overrides(tmp_path):
    rc = main(["simulate", "--config", str(CONFIGS / "tehran.json"), "--mode",
               "exterior", "--reflectance", "0.9", "--out", str(tmp_path)])
    assert rc == EXIT_OK
    row = next(csv.DictReader(open(tmp_path / "loads.csv")))
    assert row["mode"] == "exterior" and float(row["reflectance"]) == 0.9


def test_bad_config_exit_code(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"site": {"city": "Tehran"}, "zone": {"wwr": 1.5}}))
    assert main(["simulate", "--config", str(cfg), "--out", str(tmp_path)]) == EXIT_CONFIG
    assert "wwr" in capsys.readouterr().err


def test_unreadable_json_exit_code(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text("{not json")
    assert main(["simulate", "--config", str(cfg), "--out", str(tmp_path)]) == EXIT_CONFIG


def test_missing_weather_exit_code(tmp_path):
    rc = main(["simulate", "--config", str(CONFIGS / "tehran.json"),
               "--weather", str(tmp_path / "nope.epw"), "--out", str(tmp_path)])
    assert rc == EXIT_WEATHER


def test_truncated_weather_exit_code(tmp_path):
    epw = tmp_path / "short.epw"
    epw.write_text("LOCATION,x\n" * 8 + "2018,1,1,1,0,x,5.0\n")
    rc = main(["simulate", "--config", str(CONFIGS / "tehran.json"),
               "--weather", str(epw), "--out", str(tmp_path)])
    assert rc == EXIT_WEATHER


def test_sweep_then_compare(tmp_path):
    out = tmp_path / "sweep"
    assert main(["sweep", "--config", str(CONFIGS / "three_city_sweep.json"),
                 "--out", str(out)]) == EXIT_OK
    loads = list(csv.DictReader(open(out / "loads.csv")))
    assert len(loads) == 27
    first = (out / "comparison.csv").read_bytes()
    (out / "comparison.csv").unlink()
    assert main(["compare", "--runs", str(out)]) == EXIT_OK
    assert (out / "comparison.csv").read_bytes() == first


def test_compare_empty_dir(tmp_path):
    assert main(["compare", "--runs", str(tmp_path)]) == EXIT_CONFIG


def test_blind_table(tmp_path):
    out = tmp_path / "table.csv"
    rc = main(["blind-table", "--geometry", "width=20,separation=20,reflectance=0.5",
               "--angles", "0,90", "--profiles", "0,30", "--out", str(out)])
    assert rc == EXIT_OK
    rows = list(csv.DictReader(open(out)))
    assert len(rows) == 4
    by_key = {(float(r["slat_angle"]), float(r["profile_angle"])): r for r in rows}
    assert float(by_key[0.0, 0.0]["tau_beam_beam"]) == pytest.approx(0.0, abs=1e-6)
    assert float(by_key[90.0, 0.0]["tau_beam_beam"]) == pytest.approx(1.0, abs=1e-6)


def test_blind_table_bad_geometry(tmp_path):
    rc = main(["blind-table", "--geometry", "width", "--out", str(tmp_path / "t.csv")])
    assert rc == EXIT_CONFIG
    rc = main(["blind-table", "--angles", "200", "--out", str(tmp_path / "t.csv")])
    assert rc == EXIT_CONFIG
