import json
import subprocess
import sys
from fractions import Fraction

import pytest

from csd import serialize

F = Fraction


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "csd.cli"] + list(args),
                          capture_output=True, text=True)


@pytest.fixture(scope="module")
def paths(tmp_path_factory, a2, g2, a2_diagram, g2_diagram):
    d = tmp_path_factory.mktemp("cli")
    p = {}
    p["a2_seed"] = d / "a2_seed.json"
    serialize.save(p["a2_seed"], serialize.fd_to_json(a2))
    p["a2"] = d / "a2.json"
    serialize.save(p["a2"], serialize.diagram_to_json(a2_diagram))
    p["g2"] = d / "g2.json"
    serialize.save(p["g2"], serialize.diagram_to_json(g2_diagram))
    p["seg"] = d / "seg.json"
    serialize.save(p["seg"], {
        "start": [1, -5], "end": [2, 4], "total_time": "5",
        "pieces": [
            {"exponent": [1, -3], "coeff": "1", "bend": [0, -2], "duration": "1"},
            {"exponent": [1, -2], "coeff": "1", "bend": [-1, 0], "duration": "1"},
            {"exponent": [-1, -2], "coeff": "1", "bend": [0, 2], "duration": "1"},
            {"exponent": [-1, -1], "coeff": "1", "bend": None, "duration": "2"},
        ]})
    p["quad"] = d / "quad.json"
    serialize.save(p["quad"], [[-1, 0], [1, -3], [2, -3], [1, 0]])
    p["dir"] = d
    return p


def test_build(paths):
    out = paths["dir"] / "built.json"
    r = run_cli("build", "--seed", str(paths["a2_seed"]), "--order", "5",
                "--out", str(out))
    assert r.returncode == 0, r.stderr
    assert "walls: 3" in r.stdout
    assert "saturated: True" in r.stdout
    doc = json.loads(out.read_text())
    assert doc["order"] == 5


def test_theta(paths):
    r = run_cli("theta", "--diagram", str(paths["a2"]),
                "--direction", "-1,0", "--endpoint", "2,1")
    assert r.returncode == 0, r.stderr
    assert r.stdout.strip() == "z^(-1,0) + z^(-1,1)"


def test_multiply(paths):
    r = run_cli("multiply", "--diagram", str(paths["g2"]), "-p", "1,0", "-q", "-1,0")
    assert r.returncode == 0, r.stderr
    lines = r.stdout.strip().splitlines()
    assert "r=(0,0): 1" in lines
    assert "r=(0,3): 1" in lines


def test_pair_and_segment_roundtrip(paths):
    pair_out = paths["dir"] / "pair.json"
    r = run_cli("pair-from-segment", "--diagram", str(paths["g2"]),
                "--segment", str(paths["seg"]), "--tau", "5/2",
                "--out", str(pair_out))
    assert r.returncode == 0, r.stderr
    assert "a=6 b=6" in r.stdout
    assert "base=(-6,12)" in r.stdout
    seg_out = paths["dir"] / "seg2.json"
    r = run_cli("segment-from-pair", "--diagram", str(paths["g2"]),
                "--pair", str(pair_out), "-a", "6", "-b", "6",
                "--out", str(seg_out))
    assert r.returncode == 0, r.stderr
    assert "segment (1,-5) -> (2,4)" in r.stdout
    doc = json.loads(seg_out.read_text())
    assert doc["start"] == [1, -5] and doc["end"] == [2, 4]


def test_hull_and_check_positive(paths):
    hull_out = paths["dir"] / "hull.json"
    r = run_cli("hull", "--diagram", str(paths["g2"]),
                "--points", str(paths["quad"]), "--out", str(hull_out))
    assert r.returncode == 0, r.stderr
    pts = {tuple(F(str(c)) for c in p) for p in json.loads(hull_out.read_text())}
    assert (F(0), F(3, 2)) in pts
    # the ordinary quadrilateral fails positivity: exit code 1 with a witness
    r = run_cli("check-positive", "--diagram", str(paths["g2"]),
                "--polygon", str(paths["quad"]), "--max-degree", "2")
    assert r.returncode == 1
    assert "verdict: False" in r.stdout
    # its broken-line hull passes
    r = run_cli("check-positive", "--diagram", str(paths["g2"]),
                "--polygon", str(hull_out), "--max-degree", "2")
    assert r.returncode == 0
    assert "verdict: True" in r.stdout


def test_harness(paths):
    r = run_cli("harness", "--diagram", str(paths["a2"]), "--trials", "3")
    assert r.returncode == 0, r.stderr
    assert "disagreements=0" in r.stdout


def test_render(paths):
    out = paths["dir"] / "fig.svg"
    r = run_cli("render", "--diagram", str(paths["g2"]), "--segment",
                str(paths["seg"]), "--out", str(out))
    assert r.returncode == 0, r.stderr
    assert out.read_text().startswith("<svg") or "<svg" in out.read_text()


def test_usage_errors(paths):
    r = run_cli("theta", "--diagram", str(paths["dir"] / "missing.json"),
                "--direction", "1,0", "--endpoint", "2,1")
    assert r.returncode == 2
    r = run_cli("theta", "--diagram", str(paths["a2"]),
                "--direction", "1;0", "--endpoint", "2,1")
    assert r.returncode == 2
    # endpoint on a wall is an input error, not a crash
    r = run_cli("theta", "--diagram", str(paths["a2"]),
                "--direction", "1,0", "--endpoint", "0,1")
    assert r.returncode == 2
