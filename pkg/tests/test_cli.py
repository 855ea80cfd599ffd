import io
import json
import subprocess
import sys

import pytest

from cubicmirror import cli


def run(*argv):
    buf = io.StringIO()
    code = cli.run(list(argv), stdout=buf)
    return code, buf.getvalue()


def test_classify_L_is_mum():
    code, out = run("pf", "classify", "--op", "L", "--point", "z=0")
    r = json.loads(out)["results"]
    assert code == 0 and r["classification"] == "MUM" and r["jordan"] == [4]


def test_classify_R_is_K():
    code, out = run("pf", "classify", "--op", "R", "--point", "psi=0")
    r = json.loads(out)["results"]
    assert r["classification"] == "K" and r["jordan"] == [2, 2]


def test_wrong_point_is_usage_error():
    assert run("pf", "classify", "--op", "L", "--point", "z=1")[0] == 2


@pytest.mark.parametrize("argv", [
    ("pf", "annihilate"), ("pf", "yukawa"), ("pf", "diamond"), ("pf", "diamond", "--rank", "2"),
    ("nef", "dual"), ("nef", "check"), ("fan", "compare"), ("family", "pullback"),
    ("family", "singular", "--psi", "z6"), ("family", "rays"),
])
def test_passing_commands(argv):
    code, out = run(*argv)
    assert code == 0, out
    assert json.loads(out)["status"] == "pass"


def test_yukawa_perturbed_fails():
    code, out = run("pf", "yukawa", "--constant", "243")
    assert code == 1 and json.loads(out)["status"] == "fail"


def test_odp_reports_printed_mismatch():
    code, out = run("family", "odp")
    r = json.loads(out)["results"]
    assert r["all_odp"] and not r["all_match_printed_form"]
    assert code == 1


def test_byte_identical_output():
    a = run("pf", "frobenius", "--op", "R", "--order", "12")
    b = run("pf", "frobenius", "--op", "R", "--order", "12")
    assert a == b and a[0] == 0


def test_empty_input_is_usage_error(tmp_path):
    p = tmp_path / "empty.json"
    p.write_text("")
    assert run("polytope", "dual", "--in", str(p))[0] == 2


def test_polytope_roundtrip_through_files(tmp_path):
    code, out = run("polytope", "dual", "--builtin", "delta")
    dual = json.loads(out)["results"]["dual"]
    p = tmp_path / "nabla.json"
    p.write_text(json.dumps(dual))
    code, out = run("polytope", "dual", "--in", str(p))
    assert code == 0
    assert json.loads(out)["results"]["vertices"] == 6


def test_non_interior_origin_fails(tmp_path):
    p = tmp_path / "tri.json"
    p.write_text(json.dumps({"space": "Z2", "vertices": [[0, 0], [1, 0], [0, 1]]}))
    code, _ = run("polytope", "dual", "--in", str(p))
    assert code in (1, 2)


@pytest.mark.parametrize("lit", ["1+", "z7", "", "1/0"])
def test_malformed_cyclotomic_literal(lit):
    assert run("family", "singular", "--psi", lit)[0] == 2


def test_unknown_subcommand():
    assert run("frobnicate")[0] == 2
    assert run("pf", "frobnicate")[0] == 2


def test_points_of_P():
    code, out = run("polytope", "points", "--builtin", "P")
    assert json.loads(out)["results"]["count"] == 111


def test_patch_command():
    code, out = run("family", "patch", "--cone", "C36")
    assert json.loads(out)["results"]["relations"] == ["y2*y3*y5*y6 - y1^3*y4^3"]


def test_mother_projectivity_fails_with_witness():
    code, out = run("projectivity", "check", "--builtin", "mother")
    r = json.loads(out)["results"]
    assert code == 1 and not r["regular"] and r["witness_verified"]


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "cubicmirror.cli", "pf", "yukawa", "--json"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "\n" not in out.stdout.strip()
