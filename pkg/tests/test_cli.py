import json
import math

import numpy as np
import pytest

import sphaera.acceptance as ac
import sphaera.cli as cli
import sphaera.extremal as ex
import sphaera.regionio as rio
import sphaera.regions as rg
from sphaera.errors import ArgumentError

X = np.array([1.0, 0.0, 0.0])


def write_hexagon(path):
    P = ex.cap_regular_polygon(0.5, 6, X)
    path.write_text(json.dumps({"vertices": P.vertices.tolist()}))
    return P


# ---------------------------------------------------------------------------
# region files
# ---------------------------------------------------------------------------

def test_parse_region_variants():
    P = ex.cap_regular_polygon(0.4, 5, X)
    assert isinstance(rio.parse_region({"vertices": P.vertices.tolist()}),
                      rg.GeodesicPolygon)
    cap = rio.parse_region({"cap": {"center": [1, 0, 0], "radius": 0.3}})
    assert isinstance(cap, rg.CapSpec) and cap.radius == 0.3
    pts = rg.CapSpec(X, 0.4).boundary_points(64)
    bd = rio.parse_region({"boundary_samples": pts.tolist()})
    assert bd.is_convex()


def test_parse_region_rejections():
    with pytest.raises(ArgumentError):
        rio.parse_region([1, 2, 3])  # not an object
    with pytest.raises(ArgumentError):
        rio.parse_region({})  # no region key
    with pytest.raises(ArgumentError):
        rio.parse_region({"vertices": [[1, 0, 0]],
                          "cap": {"center": [1, 0, 0], "radius": 0.1}})
    with pytest.raises(ArgumentError):
        rio.parse_region({"vertices": [[1.0, 1.0, 0.0], [0, 0, 1], [0, 1, 0]]})
    with pytest.raises(ArgumentError):
        rio.parse_region({"cap": {"center": [1, 0, 0]}})  # radius missing


# ---------------------------------------------------------------------------
# exit code 0: clean runs
# ---------------------------------------------------------------------------

def test_symmetrize_hexagon_exit_zero(tmp_path):
    infile = tmp_path / "hex.json"
    P = write_hexagon(infile)
    out = tmp_path / "out"
    assert cli.main(["--cmd", "symmetrize", "--in", str(infile),
                     "--out", str(out)]) == 0
    body = (out / "symmetrize.csv").read_text().splitlines()
    assert body[0].startswith("area_before,area_after")
    fields = body[1].split(",")
    # 17-significant-digit fixed formatting, symmetral of a symmetric input
    assert fields[0] == f"{P.area():.17g}"
    assert float(fields[1]) == pytest.approx(P.area(), rel=1e-6)
    assert fields[6] == "1"
    assert (out / "symmetrize.png").stat().st_size > 0
    assert not (out / "violations.json").exists()


def test_outputs_are_byte_stable(tmp_path):
    infile = tmp_path / "hex.json"
    write_hexagon(infile)
    blobs = []
    for name in ("a", "b"):
        out = tmp_path / name
        assert cli.main(["--cmd", "symmetrize", "--in", str(infile),
                         "--out", str(out), "--seed", "7"]) == 0
        blobs.append((out / "symmetrize.csv").read_bytes())
    assert blobs[0] == blobs[1]


def test_sas_command(tmp_path):
    infile = tmp_path / "cap.json"
    infile.write_text(json.dumps({"cap": {"center": [1, 0, 0], "radius": 0.5}}))
    out = tmp_path / "out"
    assert cli.main(["--cmd", "sas", "--in", str(infile), "--out", str(out),
                     "--samples", "3", "--restarts", "1"]) == 0
    body = (out / "sas.csv").read_text().splitlines()
    assert body[0] == "N,r_equal_area,A_N,C(r,N),gap"
    assert len(body) == 4  # N = 3, 4, 5
    for line in body[1:]:
        n, r_eq, a_n, c, gap = (float(t) for t in line.split(","))
        assert r_eq == pytest.approx(0.5, abs=1e-12)
        assert a_n == pytest.approx(ex.sas_constant(0.5, int(n)), abs=1e-7)
        assert gap >= -1e-4


# ---------------------------------------------------------------------------
# exit code 1: input and usage errors
# ---------------------------------------------------------------------------

def test_missing_infile_flag(tmp_path, capsys):
    assert cli.main(["--cmd", "symmetrize", "--out", str(tmp_path)]) == 1
    assert "--in is required" in capsys.readouterr().err


def test_nonexistent_input_file(tmp_path, capsys):
    assert cli.main(["--cmd", "symmetrize", "--in", str(tmp_path / "no.json"),
                     "--out", str(tmp_path)]) == 1
    assert "no such file" in capsys.readouterr().err


def test_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["--cmd", "symmetrize", "--in", str(bad),
                     "--out", str(tmp_path)]) == 1
    assert "malformed JSON" in capsys.readouterr().err


def test_unknown_command(tmp_path):
    assert cli.main(["--cmd", "fold", "--in", "x.json"]) == 1


def test_wrong_region_kind_for_floating(tmp_path, capsys):
    infile = tmp_path / "hex.json"
    write_hexagon(infile)
    assert cli.main(["--cmd", "floating", "--in", str(infile),
                     "--out", str(tmp_path)]) == 1
    assert "needs a cap or smooth boundary" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# exit code 2: property violations
# ---------------------------------------------------------------------------

def test_nonconvergence_reports_violation(tmp_path):
    infile = tmp_path / "hex.json"
    write_hexagon(infile)
    out = tmp_path / "out"
    rc = cli.main(["--cmd", "converge", "--in", str(infile), "--out", str(out),
                   "--eps", "1e-9", "--levels", "64"])
    assert rc == 2
    doc = json.loads((out / "violations.json").read_text())
    assert any(v["check"] == "converged" for v in doc["violations"])
    # the trajectory CSV is still written for inspection
    head = (out / "converge.csv").read_text().splitlines()[0]
    assert head == "iteration,area,perimeter,diameter,circumradius,hausdorff_to_cap"


# ---------------------------------------------------------------------------
# suite plumbing (stubbed criteria; the real ones run in test_acceptance)
# ---------------------------------------------------------------------------

def _stub(cid, passed):
    def run():
        return ac.AcceptanceResult(cid=cid, name=f"stub_{cid}", passed=passed,
                                   detail="stubbed", values={})
    return run


def test_suite_all_pass(tmp_path, monkeypatch, capsys):
    monkeypatch.setattr(ac, "CRITERIA", [_stub(1, True), _stub(2, True)])
    monkeypatch.setenv("SPHAERA_THREADS", "2")
    out = tmp_path / "out"
    assert cli.main(["--cmd", "suite", "--out", str(out)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert any(line.startswith("[PASS] criterion 01") for line in lines)
    body = (out / "suite.csv").read_text().splitlines()
    assert body[0] == "criterion,name,passed,detail"
    assert len(body) == 3


def test_suite_reports_failures(tmp_path, monkeypatch):
    monkeypatch.setattr(ac, "CRITERIA", [_stub(1, True), _stub(2, False)])
    out = tmp_path / "out"
    assert cli.main(["--cmd", "suite", "--out", str(out)]) == 2
    doc = json.loads((out / "violations.json").read_text())
    assert doc["violations"][0]["check"] == "criterion_02"
