"""Command-line interface: formats, determinism, exit codes."""
import json
import math
import subprocess
import sys

import pytest

from plemelj.cli import (DomainMapRequest, dump_json, main, run_domain_map,
                         run_functional, write_domain_map_csv)
from plemelj.contours import segment_path


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "plemelj.cli", *args],
                          capture_output=True, text=True)


# -- domain map -----------------------------------------------------------------

def test_single_point_grid_at_i():
    req = DomainMapRequest(grid=(0.0, 0.0, 1.0, 1.0, 1, 1), kernel="I_plus")
    rows = run_domain_map(req)
    assert len(rows) == 1
    re, im, status, absv = rows[0]
    assert (re, im) == (0.0, 1.0)
    assert status == "converged"
    assert abs(absv - 1.0) < 1e-12


def test_grid_validation():
    with pytest.raises(ValueError):
        DomainMapRequest(grid=(0.0, 1.0, 0.0, 1.0, 1, 5), kernel="I_plus")
    with pytest.raises(ValueError):
        DomainMapRequest(grid=(1.0, 0.0, 0.0, 1.0, 5, 5), kernel="I_plus")
    with pytest.raises(ValueError):
        DomainMapRequest(grid=(0.0, 1.0, 0.0, 1.0, 5, 5), kernel="bogus")


def test_row_order_and_origin_row(tmp_path):
    req = DomainMapRequest(grid=(-1.0, 1.0, -1.0, 1.0, 3, 3), kernel="I_plus")
    rows = run_domain_map(req)
    assert len(rows) == 9
    assert [(r[0], r[1]) for r in rows[:3]] == [(-1.0, -1.0), (0.0, -1.0), (1.0, -1.0)]
    by_point = {(r[0], r[1]): r for r in rows}
    assert by_point[(0.0, 0.0)][2] == "diverged"        # apex
    assert by_point[(0.0, -1.0)][2] == "diverged"       # wedge bisector
    assert by_point[(0.0, 1.0)][2] == "converged"
    assert abs(by_point[(0.0, 1.0)][3] - 1.0) < 1e-12


def test_mirror_map_excludes_upper_wedge():
    req = DomainMapRequest(grid=(-1.0, 1.0, -1.0, 1.0, 5, 5), kernel="I_minus")
    status = {(r[0], r[1]): r[2] for r in run_domain_map(req)}
    assert status[(0.0, 0.5)] == "diverged"     # upper wedge
    assert status[(0.0, -0.5)] == "converged"   # lower half is regular
    assert status[(0.5, 0.0)] == "converged"


def test_full_line_map_excludes_both_wedges():
    req = DomainMapRequest(grid=(-1.0, 1.0, -1.0, 1.0, 5, 5),
                           kernel="full_line")
    status = {(r[0], r[1]): r[2] for r in run_domain_map(req)}
    assert status[(0.0, 0.5)] == "diverged"
    assert status[(0.0, -0.5)] == "diverged"
    assert status[(0.5, 0.0)] == "converged"
    assert status[(-0.5, 0.0)] == "converged"


def test_csv_format(tmp_path):
    req = DomainMapRequest(grid=(0.0, 0.0, 1.0, 1.0, 1, 1), kernel="I_plus")
    out = tmp_path / "m.csv"
    with open(out, "w") as fh:
        write_domain_map_csv(run_domain_map(req), fh)
    text = out.read_text()
    lines = text.splitlines()
    assert lines[0] == "re,im,status,abs_value"
    assert lines[1] == ("0.0000000000000000e+00,1.0000000000000000e+00,"
                        "converged,1.0000000000000000e+00")


def test_cli_domain_map_deterministic(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (out1, out2):
        r = run_cli("domain-map", "--kernel", "I_plus",
                    "--grid=-1:1:7,-1:1:7", "--out", str(out))
        assert r.returncode == 0, r.stderr
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_lambda_flags_change_schedule(tmp_path):
    # a 5-step ladder stops at lambda = 1e-2, too coarse to certify z = i
    out = tmp_path / "m.csv"
    r = run_cli("domain-map", "--kernel", "I_plus", "--grid", "0:0:1,1:1:1",
                "--out", str(out), "--lambda-steps", "5")
    assert r.returncode == 0, r.stderr
    assert out.read_text().splitlines()[1].split(",")[2] == "undecided"


def test_cli_bad_grid_usage_error(tmp_path):
    r = run_cli("domain-map", "--kernel", "I_plus", "--grid", "nonsense",
                "--out", str(tmp_path / "x.csv"))
    assert r.returncode == 2
    assert "grid" in r.stderr


def test_cli_unknown_kernel_usage_error(tmp_path):
    r = run_cli("domain-map", "--kernel", "I_weird", "--grid", "0:1:3,0:1:3",
                "--out", str(tmp_path / "x.csv"))
    assert r.returncode == 2


# -- functional reports ------------------------------------------------------------

def _contour_file(tmp_path, points, crossing):
    path = segment_path(*points, crossing=crossing)
    f = tmp_path / "contour.json"
    f.write_text(path.to_json())
    return f


def test_functional_report_symmetric_gaussian(tmp_path):
    contour = _contour_file(tmp_path, (-3.0, 3.0), 0)
    out = tmp_path / "rep.json"
    r = run_cli("functional", "--kernel", "I_plus", "--function", "gauss(0)",
                "--contour", str(contour), "--out", str(out))
    assert r.returncode == 0, r.stderr
    rep = json.loads(out.read_text())
    assert abs(rep["value"]["re"] - math.pi) < 1e-6
    assert abs(rep["value"]["im"]) < 1e-6
    assert rep["cross_check"] is None
    assert len(rep["epsilon_trace"]) == 8
    eps = [e["epsilon"] for e in rep["epsilon_trace"]]
    assert all(b < a for a, b in zip(eps[:-1], eps[1:]))


def test_functional_delta_bent_path_cross_check(tmp_path):
    path = segment_path(-2.0, -0.5 + 0.4j, 0.0, 0.5 + 0.4j, 2.0)
    f = tmp_path / "bent.json"
    f.write_text(path.to_json())
    out = tmp_path / "rep.json"
    r = run_cli("functional", "--kernel", "delta", "--function", "gauss(0)",
                "--contour", str(f), "--out", str(out), "--cross-check")
    assert r.returncode == 0, r.stderr
    rep = json.loads(out.read_text())
    assert abs(rep["value"]["re"] - 2 * math.pi) < 1e-8
    assert rep["cross_check"]["agree"] is True


def test_functional_cross_check_tilted(tmp_path):
    d = complex(math.cos(math.pi / 8), math.sin(math.pi / 8))
    contour = _contour_file(tmp_path, (-2.0 * d, 0.0, 2.0 * d), 1)
    out = tmp_path / "rep.json"
    r = run_cli("functional", "--kernel", "I_plus", "--function", "gauss(0.3)",
                "--contour", str(contour), "--out", str(out), "--cross-check")
    assert r.returncode == 0, r.stderr
    rep = json.loads(out.read_text())
    assert rep["cross_check"]["agree"] is True
    lam = complex(rep["cross_check"]["lambda_route"]["re"],
                  rep["cross_check"]["lambda_route"]["im"])
    formula = complex(rep["value"]["re"], rep["value"]["im"])
    assert abs(lam - formula) <= 1e-5 * abs(formula)


def test_functional_domain_violation_exit_1(tmp_path):
    contour = _contour_file(tmp_path, (-1.0, -0.5 - 1.2j, 0.0, 1.0), 2)
    out = tmp_path / "rep.json"
    r = run_cli("functional", "--kernel", "I_plus", "--function", "gauss(0)",
                "--contour", str(contour), "--out", str(out))
    assert r.returncode == 1
    assert "segment" in r.stderr


def test_functional_unknown_function_exit_2(tmp_path):
    contour = _contour_file(tmp_path, (-1.0, 1.0), 0)
    r = run_cli("functional", "--kernel", "I_plus", "--function", "blorp(1)",
                "--contour", str(contour), "--out", str(tmp_path / "r.json"))
    assert r.returncode == 2


def test_functional_malformed_contour_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    r = run_cli("functional", "--kernel", "I_plus", "--function", "gauss(0)",
                "--contour", str(bad), "--out", str(tmp_path / "r.json"))
    assert r.returncode == 2


def test_functional_report_deterministic(tmp_path):
    contour = _contour_file(tmp_path, (-3.0, 3.0), 0)
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        r = run_cli("functional", "--kernel", "I_minus", "--function",
                    "poly_gauss(1,0)", "--contour", str(contour),
                    "--out", str(out))
        assert r.returncode == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


# -- verify ---------------------------------------------------------------------------

def test_verify_special_suite_passes():
    r = run_cli("verify", "--suite", "special")
    assert r.returncode == 0, r.stdout + r.stderr
    lines = [l for l in r.stdout.splitlines() if l.startswith("[")]
    assert all(l.startswith("[PASS]") for l in lines)
    assert all("measured=" in l and "tol=" in l for l in lines)


def test_verify_unknown_suite_usage_error():
    r = run_cli("verify", "--suite", "bogus")
    assert r.returncode == 2


# -- JSON emitter ----------------------------------------------------------------------

def test_dump_json_formats_floats():
    text = dump_json({"x": 0.1, "flag": True, "none": None, "list": [1.5]})
    assert "1.0000000000000001e-01" in text
    assert "true" in text and "null" in text
    assert json.loads(text) == {"x": 0.1, "flag": True, "none": None,
                                "list": [1.5]}
