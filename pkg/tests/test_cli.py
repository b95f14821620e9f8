import json

import pytest

from evenquad import parse_half
from evenquad.cli import main

GOLDEN_20 = ('{"E":20,"a":"0","b":2,"c":1,"d":"2",'
             '"L1":"2","L2":"3","R1":"1","R2":"4"}')


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_decompose_golden_json(capsys):
    code, out = run(capsys, "decompose", "20", "--format", "json")
    assert code == 0
    assert out.strip() == GOLDEN_20


def test_decompose_json_roundtrip(capsys):
    code, out = run(capsys, "decompose", "10", "-f", "json")
    assert code == 0
    data = json.loads(out)
    assert parse_half(data["d"]).doubled == 3
    assert parse_half(data["a"]).doubled == 2
    assert data["b"] == 0 and data["c"] == 0
    assert parse_half(data["L2"]).doubled == 3


def test_decompose_csv_schema(capsys):
    code, out = run(capsys, "decompose", "10", "-f", "csv")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "# schema=1"
    assert lines[1] == "E,a,b,c,d,L1,L2,R1,R2"
    assert lines[2] == "10,1,0,0,3/2,1,3/2,1,3/2"


def test_types_csv_has_75_rows(capsys):
    code, out = run(capsys, "types", "-f", "csv")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "# schema=1"
    assert lines[1] == "type_id,canonical,category,excluded"
    assert len(lines) == 77
    assert sum(1 for ln in lines if ln.endswith(",true")) == 3


def test_interactions(capsys):
    code, out = run(capsys, "interactions", "20", "-f", "json")
    assert code == 0
    data = json.loads(out)
    assert data["pairs"] == [[1, 19], [3, 17], [5, 15], [7, 13], [9, 11]]


def test_census_single_row_csv(capsys):
    code, out = run(capsys, "census", "--from", "20", "--to", "20",
                    "-f", "csv", "--workers", "1")
    assert code == 0
    assert out.splitlines() == ["# schema=1", "type,count", "a<c<b=d,1"]


def test_goldbach_exit_codes(capsys):
    code, _ = run(capsys, "goldbach", "--from", "4", "--to", "200",
                  "--workers", "1")
    assert code == 0   # E = 4 is the known exception
    code, _ = run(capsys, "goldbach", "--from", "4", "--to", "200",
                  "--workers", "1", "--strict")
    assert code == 4
    code, out = run(capsys, "goldbach", "--from", "6", "--to", "200",
                    "--workers", "1", "-f", "csv")
    assert code == 0
    assert out.splitlines() == ["# schema=1", "E"]


def test_dusart_exit_codes(capsys):
    code, out = run(capsys, "dusart", "--from", "2", "--to", "1000",
                    "--constant", "1.2251", "-f", "json")
    assert code == 3
    data = json.loads(out)
    assert data["first_upper_violation"] == 19
    assert 113 in data["upper_violations"]
    code, _ = run(capsys, "dusart", "--from", "2", "--to", "1000")
    assert code == 0


def test_bounds_single_and_range(capsys):
    code, out = run(capsys, "bounds", "10000", "-f", "json")
    assert code == 0
    data = json.loads(out)
    assert data["checks"]["eq33"]["state"] == "holds"
    assert data["checks"]["eq35_5"]["state"] == "holds"

    code, _ = run(capsys, "bounds", "--from", "2526", "--to", "2600",
                  "--workers", "1")
    assert code == 0


def test_theorem_and_excluded_exit(capsys):
    code, out = run(capsys, "theorem", "--from", "2526", "--to", "2600",
                    "--workers", "1", "-f", "json")
    assert code == 0
    data = json.loads(out)
    assert data["theorem_violations"] == []
    assert data["excluded_hits"]  # the dominant structure at this scale

    code, _ = run(capsys, "theorem", "--from", "2526", "--to", "2600",
                  "--workers", "1", "--exit-on-excluded")
    assert code == 5


def test_thresholds(capsys):
    code, out = run(capsys, "thresholds", "-f", "json")
    assert code == 0
    rows = {r["function"]: r for r in json.loads(out)}
    assert abs(rows["f_35"]["root"] - 130.4574578) < 0.5
    assert rows["f_35"]["reference"] == 130.4574578
    assert 20269 < rows["threshold_235"]["root"] < 20271
    assert rows["threshold_235"]["reference"] == 2322.61
    assert rows["threshold_24"]["root"] is None
    assert "no sign change" in rows["threshold_24"]["note"]


def test_config_errors_exit_1(capsys):
    assert run(capsys, "decompose", "7")[0] == 1
    assert run(capsys, "decompose", "0")[0] == 1
    assert run(capsys, "census", "--from", "100", "--to", "4",
               "--workers", "1")[0] == 1
    assert run(capsys, "census", "--from", "3", "--to", "10",
               "--workers", "1")[0] == 1
    assert run(capsys, "decompose", "100", "--sieve-limit", "50")[0] == 1
    assert run(capsys, "no-such-command")[0] == 1


def test_resource_error_exit_2(capsys):
    assert run(capsys, "decompose", str(10 ** 12))[0] == 2


def test_unwritable_output_exit_2(capsys):
    code, _ = run(capsys, "types", "-f", "csv",
                  "-o", "/nonexistent-dir/types.csv")
    assert code == 2


def test_output_file_written(capsys, tmp_path):
    path = tmp_path / "dec.json"
    code, out = run(capsys, "decompose", "20", "-f", "json",
                    "-o", str(path))
    assert code == 0
    assert out == ""
    assert path.read_text(encoding="utf-8").strip() == GOLDEN_20


def test_env_worker_override(capsys, monkeypatch):
    monkeypatch.setenv("EVENQUAD_WORKERS", "2")
    code, out = run(capsys, "census", "--from", "4", "--to", "600",
                    "-f", "json", "--chunk-size", "64")
    assert code == 0
    assert json.loads(out)["scanned"] == 299
