import json
import math

import pytest

from pluricap.capacity import CapacityEstimate
from pluricap.cli import main
from pluricap.geometry import VolumeEstimate


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr()


def test_capacity_product_exact(tmp_path, capsys):
    f = write(tmp_path, "f.json", {"factors": [
        {"K": {"type": "disc", "center": [0, 0], "radius": 0.3}, "B": {"type": "disc", "center": [0, 0], "radius": 1}},
        {"K": {"type": "disc", "center": [0, 0], "radius": 1}, "B": {"type": "disc", "center": [0, 0], "radius": 1}}]})
    code, out = run(["capacity", "--product", f], capsys)
    assert code == 0
    est = CapacityEstimate.from_json(json.loads(out.out))
    assert est.value == pytest.approx(0.3) and est.direction == "exact"


def test_missing_and_malformed_input(tmp_path, capsys):
    code, out = run(["capacity", "--set", str(tmp_path / "nope.json")], capsys)
    assert code == 1 and out.err.startswith("error:")
    bad = write(tmp_path, "bad.json", "{not json")
    code, out = run(["volume", "--set", bad], capsys)
    assert code == 1
    code, out = run(["volume", "--set", write(tmp_path, "s.json", {"type": "ball"})], capsys)
    assert code == 1 and "missing field /ball" in out.err


def test_volume_round_trip(tmp_path, capsys):
    s = write(tmp_path, "s.json", {"type": "ball", "ball": {"center": [[0, 0]], "radius": 0.5,
                                                    "space": {"n": 1, "m": 1}}})
    code, out = run(["volume", "--set", s, "--samples", "2e4", "--seed", "3"], capsys)
    assert code == 0, out.err
    v = VolumeEstimate.from_json(json.loads(out.out))
    assert abs(v.value - math.pi / 4) <= 4 * v.std_error + 1e-3


def test_extremal_lundin_point(capsys):
    code, out = run(["extremal", "--fn", "lundin", "--n", "2", "--point", "i,0"], capsys)
    assert code == 0
    assert json.loads(out.out)["value"] == pytest.approx(math.log(1 + math.sqrt(2)), abs=1e-12)


def test_lemniscate_csv(tmp_path, capsys):
    code, out = run(["lemniscate", "--s-grid", "0.5:2:4", "--samples", "2e4"], capsys)
    assert code == 0
    assert out.out.splitlines()[0].startswith("s,")
    assert len(out.out.splitlines()) == 5


def test_verify_and_report(tmp_path, capsys):
    outdir = str(tmp_path / "bundle")
    code, out = run(["verify", "--suite", "lemniscate", "--seed", "2", "--out", outdir], capsys)
    assert code == 0, out.err
    summary = json.loads(out.out)
    assert summary["reports"] >= 3 and summary["audit_problems"] == []
    code, out = run(["report", outdir], capsys)
    assert code == 0
    assert out.out.startswith("theorem,label,instances")


def test_verify_unknown_suite(capsys):
    code, _ = run(["verify", "--suite", "nonsense"], capsys)
    assert code == 1


def test_report_missing_bundle(tmp_path, capsys):
    code, _ = run(["report", str(tmp_path / "none")], capsys)
    assert code == 1
