import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from agcycles import cli, golden
from agcycles import cycleclasses as cc
from agcycles.ppoly import P, PPoly
from agcycles.tautring import RingMode, TautClass

from strategies import ppolys, taut_classes


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,want", [
    (["ring", "--g", "2", "l1*l1"], "2*l2"),
    (["ring", "--g", "1", "--degree", "l1"], "1/24"),
    (["ring", "--g", "3", "--mode", "open", "l3"], "0"),
    (["ring", "--g", "3", "(p-1)*l1 + l1*(1-p)"], "0"),
    (["ring", "--g", "2", "-l1^2/2 + l2"], "0"),
    (["ring", "--g", "2", "--degree", "l1^3"], "1/2880"),
    (["ring", "--g", "3", "(p^2-1)*l2*l3"], "(p^2-1)*l2*l3"),
    (["masses", "--g", "1"], "superspecial mass (g=1): (p-1)/24"),
    (["masses", "--g", "1", "--p", "101"], "at p=101: 25/6"),
    (["masses", "--g", "2", "--p", "3"], "at p=3: 1/288"),
    (["bounds", "--g", "1"], "bound (g-1)! * prod n_i: 24"),
    (["bounds", "--g", "2"], "bound (g-1)! * prod n_i: 5760"),
    (["bounds", "--g", "3"], "bound (g-1)! * prod n_i: 5806080"),
])
def test_examples(capsys, argv, want):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert want in out.splitlines()


def test_mass_at_p3_matches_formula(capsys):
    code, out, _ = run(capsys, "masses", "--g", "2", "--p", "3", "--format", "json")
    assert json.loads(out)["value"] == "1/288"
    assert cc.superspecial_mass(2)(3) == Fraction(1, 288)


@pytest.mark.parametrize("argv", [
    ["ring", "--g", "2", "l1 +* l2"],
    ["ring", "--g", "2", "l3"],
    ["ring", "--g", "2", "l1 / l2"],
    ["ring", "--g", "2", "l1 / 0"],
    ["ring", "--g", "2", "l1 $ 2"],
    ["ring", "--g", "2", "(l1"],
    ["ring", "--g", "2", "--degree", "l1"],
    ["ring", "--g", "3", "--mode", "open", "--degree", "l1*l2*l3"],
    ["masses", "--g", "1", "--p", "4"],
    ["strata", "--g", "7"],
    ["strata", "--g", "0"],
    ["bounds", "--g", "0"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_parse_error_position(capsys):
    code, _, err = run(capsys, "ring", "--g", "2", "l1 + ?")
    assert code == 2
    assert "position 5" in err and "^" in err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["ring"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["nonsense"])
    assert exc.value.code == 2


def test_strata_g1(capsys):
    code, out, _ = run(capsys, "strata", "--g", "1")
    doc = json.loads(out)
    assert code == 0 and len(doc["rows"]) == 2
    assert [r["mu"] for r in doc["rows"]] == [[], [1]]


def test_strata_g3_rows(capsys):
    code, out, _ = run(capsys, "strata", "--g", "3", "--format", "json")
    doc = json.loads(out)
    assert len(doc["rows"]) == 8
    assert doc["metadata"]["conventions"] == cc.FROZEN.as_dict()
    classes = cli.atlas_classes(doc)
    assert classes == golden.CORRECTED_G3
    row = next(r for r in doc["rows"] if r["mu"] == [3, 2])
    assert [t["monomial"] for t in row["class_terms"]] == [[2, 3]]
    keys = [(r["codim"], r["mu"]) for r in doc["rows"]]
    assert keys == sorted(keys)


def test_strata_json_is_byte_stable():
    cmd = [sys.executable, "-m", "agcycles.cli", "strata", "--g", "3"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.endswith(b"\n")


def test_strata_md(capsys):
    code, out, _ = run(capsys, "strata", "--g", "3", "--format", "md")
    lines = [l for l in out.splitlines() if l.startswith(("| {", "| ∅"))]
    assert code == 0 and len(lines) == 8
    by_mu = {l.split("|")[1].strip(): l for l in lines}
    assert "[4,5,6,1,2,3]" in by_mu["∅"] and "s3s2s3s1s2s3" in by_mu["∅"]
    assert "[1,4,5,2,3,6]" in by_mu["{3}"] and "s3s2s3" in by_mu["{3}"]
    assert "[p+1] × {" in by_mu["{2,1}"]


def test_strata_g6_has_no_classes(capsys):
    doc = cli.build_atlas(6, with_classes=False)
    assert len(doc["rows"]) == 64
    assert all(r["class_terms"] is None for r in doc["rows"])


def test_conventions_flag(capsys):
    code, out, _ = run(capsys, "--conventions")
    assert code == 0
    assert json.loads(out)["conventions"] == cc.FROZEN.as_dict()


def test_check_passes(capsys):
    code, out, _ = run(capsys, "check")
    assert code == 0
    assert all(l.startswith("PASS") for l in out.splitlines())


@pytest.mark.parametrize("switch", cc.Conventions.switch_names())
def test_check_with_perturbed_convention_fails(capsys, switch):
    code, out, _ = run(capsys, "check", "--perturb", switch)
    assert code == 1
    assert "FAIL cycleclasses.golden_g3" in out
    diff = json.loads(out[out.index("{"):])
    assert diff["check"] == "cycleclasses.golden_g3"


@given(ppolys)
def test_ppoly_json_round_trip(c):
    assert cli.ppoly_from_json(json.loads(json.dumps(cli.ppoly_to_json(c)))) == c


@given(st.integers(1, 4).flatmap(lambda g: taut_classes(g)))
def test_class_json_round_trip(c):
    back = cli.class_from_json(c.g, json.loads(cli.dumps(cli.class_to_json(c))))
    assert back == c


def test_json_rationals_lowest_terms():
    obj = cli.ppoly_to_json(PPoly({0: Fraction(2, 4), 3: -3}))
    assert obj == {"p_coeffs": [["0", "1/2"], ["3", "-3/1"]]}


@given(st.integers(1, 4).flatmap(lambda g: taut_classes(g)))
def test_rendered_classes_parse_back(c):
    # every rendered class is itself a valid calculator expression
    assert cli.parse_expression(str(c), c.g) == c


def test_atlas_round_trip():
    doc = cli.build_atlas(3)
    again = json.loads(cli.dumps(doc))
    assert cli.atlas_classes(again) == {r.mu.mu: r.raw_pushforward for r in cc.strata_table(3)}
