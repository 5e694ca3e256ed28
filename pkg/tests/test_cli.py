import json

import pytest
from click.testing import CliRunner

from mapdim.cli import (
    EXIT_BUDGET,
    EXIT_INPUT,
    EXIT_NO,
    EXIT_OK,
    EXIT_REFUSED,
    AnalysisReport,
    main,
)
from mapdim.formats import format_realizer, parse_map, parse_poset, parse_realizer
from mapdim.catalog import get
from mapdim.planar_map import isomorphic


def run(*args):
    return CliRunner().invoke(main, list(args))


@pytest.mark.parametrize("args, code", [
    (["realize-vef", "fan:8"], EXIT_OK),
    (["realize-vef", "snake:12"], EXIT_NO),
    (["realize-vef", "k4"], EXIT_REFUSED),
    (["realize-vf", "snake:9"], EXIT_OK),
    (["realize-vf", "t4"], EXIT_REFUSED),
    (["realize-vf", "map_ex"], EXIT_REFUSED),
    (["color", "canonical"], EXIT_OK),
    (["color", "snake:12"], EXIT_NO),
    (["dim", "k4", "--t", "3"], EXIT_NO),
    (["dim", "k4", "--t", "4"], EXIT_OK),
    (["dim", "vf_dim4", "--t", "3", "--budget-nodes", "5"], EXIT_BUDGET),
    (["gen", "no_such_map"], EXIT_INPUT),
    (["analyze", "missing_file.map"], EXIT_INPUT),
])
def test_exit_codes(args, code):
    r = run(*args)
    assert r.exit_code == code, r.output


def test_refusal_prints_witness():
    r = run("realize-vf", "t4")
    assert "dual-not-outerplanar" in r.output and "K23" in r.output


def test_dim4_certificate():
    r = run("realize-vef", "snake:12")
    assert "DIM4 reason=bicolored-pair" in r.output


def test_realize_then_verify(tmp_path):
    out = tmp_path / "r.txt"
    assert run("realize-vf", "snake:9", "--out", str(out)).exit_code == EXIT_OK
    R = parse_realizer(out.read_text())
    assert len(R) == 3
    r = run("verify", "snake:9", str(out), "--poset", "vf")
    assert r.exit_code == EXIT_OK and r.output.startswith("PASS")
    # one extension three times reverses nothing new
    bad = tmp_path / "bad.txt"
    bad.write_text(format_realizer([R[0]] * 3))
    r = run("verify", "snake:9", str(bad), "--poset", "vf")
    assert r.exit_code == EXIT_NO and r.output.startswith("FAIL unreversed")


def test_verify_against_exported_poset(tmp_path):
    p = tmp_path / "p.txt"
    rf = tmp_path / "r.txt"
    assert run("export", "fan:6", "--poset", "vef", "--out", str(p)).exit_code == EXIT_OK
    assert run("realize-vef", "fan:6", "--out", str(rf)).exit_code == EXIT_OK
    assert len(parse_poset(p.read_text())) == 6 + 9 + 5
    assert run("verify", str(p), str(rf)).exit_code == EXIT_OK


def test_gen_and_export_round_trip(tmp_path):
    f = tmp_path / "c.map"
    assert run("gen", "canonical", "--out", str(f)).exit_code == EXIT_OK
    M = parse_map(f.read_text())
    assert isomorphic(M, get("canonical").map, rooted_outer=True)
    r = run("export", str(f), "--json")
    assert r.exit_code == EXIT_OK and parse_map(r.output) == M


def test_analyze_json_round_trip(tmp_path):
    out = tmp_path / "a.json"
    assert run("analyze", "canonical", "--json", "--out", str(out)).exit_code == EXIT_OK
    d = json.loads(out.read_text())
    rep = AnalysisReport.from_dict(d)
    assert rep.to_dict() == d
    facts = {(f.quantity, f.relation, f.value) for f in rep.facts}
    assert ("dim(vef)", "=", 3) in facts and ("dim(vf)", "=", 3) in facts
    assert rep.coloring


def test_analyze_k4_text():
    r = run("analyze", "k4")
    assert r.exit_code == EXIT_OK
    assert "witness" in r.output and "dim(vf) = 4" in r.output
