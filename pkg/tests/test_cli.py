import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from trimetric import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["--domain", "halfspace", "--x", "0,1", "--y", "0,3"], 0.5),
        (["--domain", "punctured", "--x", "2,0", "--y", "0.6666666666666666,0"], 0.5),
        (["--domain", "punctured", "--x", "1,0", "--y", "2,0", "--metric", "j"], math.log(2)),
        (["--domain", "halfspace", "--x", "0,1", "--y", "0,3", "--metric", "rho"], math.log(3)),
        (["--domain", "polygon", "--x", "0.3,0.3", "--y", "0.3,0.3"], 0.0),
    ],
)
def test_dist(capsys, argv, expected):
    code, out, _ = run(capsys, "dist", *argv)
    assert code == 0
    assert float(out) == pytest.approx(expected, abs=1e-14)


@pytest.mark.parametrize(
    "argv, code",
    [
        (["dist", "--domain", "halfspace", "--x", "0,0", "--y", "0,1"], 3),
        (["dist", "--domain", "polygon", "--x", "0.5,0.5", "--y", "2,2"], 3),
        (["dist", "--domain", "halfspace", "--x", "0,1", "--y", "0,1,2"], 2),
        (["dist", "--domain", "nowhere", "--x", "0,1", "--y", "0,2"], 2),
        (["dist", "--domain", "halfspace", "--x", "zero,1", "--y", "0,2"], 2),
        (["ball", "--domain", "punctured", "--x", "2,0", "--r", "1.5"], 3),
        (["dist", "--domain", "polygon", "--vertices", "0,0;1,1;1,0;0,1", "--x", "0.5,0.2", "--y", "0.5,0.3"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    try:
        got = cli.main(argv)
    except SystemExit as exc:
        got = exc.code
    assert got == code
    assert capsys.readouterr().err


def test_ball_csv_to_stdout(capsys):
    code, out, _ = run(capsys, "ball", "--domain", "punctured", "--x", "2,0", "--r", "0.5", "--samples", "64")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "param,px,py,residual"
    assert all(float(line.split(",")[3]) <= 1e-9 for line in lines[1:])


def test_ball_writes_one_csv_per_radius(tmp_path, capsys):
    base = tmp_path / "ball.csv"
    code, _, _ = run(capsys, "ball", "--domain", "halfspace", "--x", "0,1", "--r", "0.2,0.5", "--out", str(base))
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["ball-r0.2.csv", "ball-r0.5.csv"]


@pytest.mark.parametrize(
    "domain, x, overlays",
    [
        ("punctured", "2,0", ["euclid", "j", "k"]),
        ("halfspace", "0,1", ["k"]),
        ("punctured-halfspace", "0,0.1", []),
        ("polygon", "0.3,0.4", ["j"]),
        ("angular", "1,0.2", []),
    ],
)
def test_ball_svg_is_valid(tmp_path, capsys, domain, x, overlays):
    svg = tmp_path / "out.svg"
    extra = ["--alpha", "1.5"] if domain == "angular" else []
    argv = ["ball", "--domain", domain, "--x", x, "--r", "0.2,0.4", "--svg", str(svg), "--samples", "128", *extra]
    for o in overlays:
        argv += ["--overlay", o]
    code, _, _ = run(capsys, *argv)
    assert code == 0
    text = svg.read_text()
    assert text.startswith("<?xml")
    root = ET.fromstring(text)
    assert root.tag.endswith("svg")
    assert text.count("<!--") >= 2 + 2 * len(overlays)


def test_ball_output_is_byte_identical(tmp_path, capsys):
    outs = []
    for i in range(2):
        svg, csv = tmp_path / f"a{i}.svg", tmp_path / f"a{i}.csv"
        run(capsys, "ball", "--domain", "polygon", "--x", "0.3,0.4", "--r", "0.3", "--svg", str(svg),
            "--out", str(csv), "--overlay", "j", "--samples", "128")
        outs.append((svg.read_bytes(), csv.read_bytes()))
    assert outs[0] == outs[1]


@pytest.mark.parametrize("suite", ["euclid", "j", "k", "lemmas", "conjectures"])
def test_verify_suites(capsys, suite):
    code, out, err = run(capsys, "verify", "--suite", suite)
    doc = json.loads(out)
    assert code == 0, err
    assert doc["schema"] == 1 and doc["suite"] == suite
    names = [r["name"] for r in doc["reports"]]
    assert names and names == sorted(names)
    assert all(r["pass"] for r in doc["reports"])


def test_verify_is_deterministic(capsys):
    first = run(capsys, "verify", "--suite", "j", "--seed", "3")[1]
    assert run(capsys, "verify", "--suite", "j", "--seed", "3")[1] == first


def test_verify_custom_configuration(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "euclid", "--domain", "punctured", "--x", "3,1", "--r", "0.25,0.75")
    doc = json.loads(out)
    assert code == 0 and len(doc["reports"]) == 4


def test_verify_tolerance_override_can_fail(capsys):
    # a negative tolerance demands a margin of at least 1, which no lemma check has
    code, _, err = run(capsys, "verify", "--suite", "lemmas", "--tol", "-1")
    assert code == 1 and "FAIL" in err


def test_convexity_punctured(capsys):
    code, out, _ = run(capsys, "convexity", "--domain", "punctured", "--x", "2,0",
                       "--grid", "0.3,0.5,0.6", "--expect", "0.5", "--samples", "512")
    rep = json.loads(out)["reports"][0]
    assert code == 0 and rep["pass"]
    assert abs(rep["details"]["convexity_radius"] - 0.5) <= 1e-3
    assert [row["convex"] for row in rep["details"]["table"]] == [True, True, False]


def test_convexity_mismatch_exits_one(capsys):
    code, out, _ = run(capsys, "convexity", "--domain", "punctured", "--x", "2,0",
                       "--grid", "0.3", "--expect", "0.7", "--samples", "256")
    assert code == 1 and not json.loads(out)["reports"][0]["pass"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "trimetric", "dist", "--domain", "halfspace",
                           "--x", "0,1", "--y", "0,3"], capture_output=True, text=True, check=True)
    assert float(proc.stdout) == pytest.approx(0.5)
