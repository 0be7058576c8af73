import io
import json
import subprocess
import sys

import jsonschema
import pytest
from hypothesis import given, strategies as st

from cyclichom.cli import (REPORT_SCHEMA, SpecDoc, SpecParseError, build, format_spec, main,
                           parse_spec, records_from_text)
from cyclichom.dga import DgaSpec
from cyclichom.mixed import MixedComplex
from cyclichom.models import FreeGCASpec


def run(argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        old = sys.stdin
        sys.stdin = io.StringIO(stdin)
    try:
        code = main(argv, out, err)
    finally:
        if stdin is not None:
            sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def dims(text):
    return [r["dimension"] for r in records_from_text(text)]


ES1_FILE = """\
kind: mixed
name: ES1 to degree 5
[basis]
0: 1
1: a
2: b
3: ab
4: b2
5: ab2
[delta]
a b 1
ab b2 1
[D]
a 1 1
ab b 1
ab2 b2 1
"""

S2_FILE = """\
kind: dga
name: H(S2)
unit: 1
augmented: yes
[degrees]
1 0
v 2
"""

SPHERE_MODEL = """\
kind: free-model
name: S2
[generators]
a 2
b 3
[differential]
b a^2 1
"""


# ---------------------------------------------------------------------------
# commands

def test_homology_point_dga():
    code, out, _ = run(["homology", "builtin", "point_dga", "--flavour", "[[u]]",
                        "--degrees", "0..6"])
    assert code == 0
    assert dims(out) == [1, 0, 1, 0, 1, 0, 1]


def test_homology_es1():
    code, out, _ = run(["homology", "builtin", "es1", "--flavour", "[[u-1]]",
                        "--degrees", "0..5"])
    assert code == 0
    assert dims(out) == [0, 1, 0, 1, 0, 1]


def test_homology_from_file(tmp_path):
    p = tmp_path / "s2.txt"
    p.write_text(S2_FILE)
    code, out, _ = run(["homology", str(p), "--flavour", "[u]", "--degrees", "0..5"])
    assert code == 0
    # the reduced complex of H(S2) is used: v R[v^2] shifted into [u]
    assert dims(out) == [0, 1, 0, 1, 0, 1]


def test_homology_from_stdin():
    code, out, _ = run(["homology", "-", "--flavour", "borel", "--degrees", "0..4"],
                       stdin=ES1_FILE)
    assert code == 0
    assert "exact" in out


@pytest.mark.parametrize("relative,degrees,want", [
    (True, "0..8", [0, 0, 1, 0, 1, 0, 1, 0, 1]),
    (False, "0..4", [1, 0, 2, 0, 2]),
])
def test_loop_odd_sphere(relative, degrees, want):
    argv = ["loop", "builtin", "sphere(3)", "--degrees", degrees] + (["--relative"] if relative
                                                                       else [])
    code, out, _ = run(argv)
    assert code == 0
    assert dims(out) == want


def test_loop_from_file(tmp_path):
    p = tmp_path / "s2.model"
    p.write_text(SPHERE_MODEL)
    code, out, _ = run(["loop", str(p), "--relative", "--degrees", "0..7"])
    assert code == 0
    assert dims(out) == [0, 1, 0, 1, 0, 1, 0, 1]
    code, out, _ = run(["loop", str(p), "--degrees", "0..0"])
    assert dims(out) == [1]


def test_verify_passes():
    code, out, _ = run(["verify", "builtin", "es1", "--suite", "gysin"])
    assert code == 0
    assert out.rstrip().endswith("verify: PASS")


def test_verify_corollary_sphere():
    code, out, _ = run(["verify", "builtin", "sphere(2)", "--suite", "corollary"])
    assert code == 0, out


# ---------------------------------------------------------------------------
# errors and exit codes

def test_parse_error_has_position(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text(ES1_FILE.replace("a b 1", "a b 1/x"))
    code, _, err = run(["homology", str(p)])
    assert code == 2
    assert "line 11, column 5" in err


def test_undeclared_label(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text(ES1_FILE.replace("ab b2 1", "ab zz 1"))
    code, _, err = run(["homology", str(p)])
    assert code == 2
    assert "undeclared label 'zz'" in err


def test_missing_file_and_unknown_builtin():
    assert run(["homology", "/nonexistent/file"])[0] == 2
    assert run(["homology", "builtin", "torus"])[0] == 2


def test_validation_failure(tmp_path):
    # D a = 1 together with delta a = b but D b = 0 and a stray D on 1 -> axioms fail
    broken = ES1_FILE.replace("[D]\n", "[D]\nb a 1\n")
    p = tmp_path / "broken.txt"
    p.write_text(broken)
    code, _, err = run(["homology", str(p)])
    assert code == 3
    assert "validation error" in err
    code, out, _ = run(["verify", str(p), "--suite", "axioms"])
    assert code == 1
    assert "FAIL" in out and "fails on" in out


def test_degree_violation_is_a_validation_error(tmp_path):
    p = tmp_path / "deg.txt"
    p.write_text(ES1_FILE.replace("a b 1", "a ab 1"))
    assert run(["homology", str(p)])[0] == 3


# ---------------------------------------------------------------------------
# machine-readable output

def test_json_matches_text_and_schema():
    argv = ["homology", "builtin", "es1", "--flavour", "[[u,u-1]", "--degrees", "-3..3"]
    code_t, text, _ = run(argv)
    code_j, js, _ = run(argv + ["--format", "json"])
    assert code_t == code_j == 0
    records = [json.loads(line) for line in js.splitlines()]
    for r in records:
        jsonschema.validate(r, REPORT_SCHEMA)
    assert [r for r in records if r["record"] == "row"] == records_from_text(text)


def test_verify_json_validates():
    code, js, _ = run(["verify", "builtin", "point", "--suite", "axioms", "--format", "json"])
    assert code == 0
    records = [json.loads(line) for line in js.splitlines()]
    for r in records:
        jsonschema.validate(r, REPORT_SCHEMA)
    assert records[-1] == {"record": "summary", "passed": True}


def test_schema_command():
    code, out, _ = run(["schema"])
    assert code == 0 and json.loads(out) == REPORT_SCHEMA
    jsonschema.Draft202012Validator.check_schema(REPORT_SCHEMA)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cyclichom", "homology", "builtin", "point",
                           "--degrees", "0..2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert dims(proc.stdout) == [1, 0, 1]


# ---------------------------------------------------------------------------
# parse / print round trip

names = st.from_regex(r"[a-z][a-z0-9_]{0,3}", fullmatch=True)
rationals = st.fractions(min_value=-9, max_value=9, max_denominator=7).filter(lambda q: q != 0)


@st.composite
def mixed_docs(draw):
    labels = draw(st.lists(names, min_size=1, max_size=6, unique=True))
    degs = {l: draw(st.integers(-3, 3)) for l in labels}
    by_deg = {}
    for l in labels:
        by_deg.setdefault(degs[l], []).append(l)
    basis = [(k,) + tuple(v) for k, v in sorted(by_deg.items())]
    triple = st.tuples(st.sampled_from(labels), st.sampled_from(labels), rationals)
    return SpecDoc("mixed", {"name": draw(names)},
                   {"basis": basis, "delta": draw(st.lists(triple, max_size=4)),
                    "D": draw(st.lists(triple, max_size=4))})


@st.composite
def dga_docs(draw):
    labels = ["1"] + draw(st.lists(names, max_size=4, unique=True))
    degrees = [(l, 0 if l == "1" else draw(st.integers(0, 6))) for l in labels]
    pick = st.sampled_from(labels)
    return SpecDoc("dga", {"name": draw(names), "unit": "1",
                           "augmented": draw(st.sampled_from(["yes", "no"]))},
                   {"degrees": degrees,
                    "product": draw(st.lists(st.tuples(pick, pick, pick, rationals), max_size=4)),
                    "differential": draw(st.lists(st.tuples(pick, pick, rationals),
                                                  max_size=3))})


@st.composite
def model_docs(draw):
    gens = draw(st.lists(names, min_size=1, max_size=3, unique=True))
    mono = st.lists(st.sampled_from(gens), max_size=3).map(tuple)
    return SpecDoc("free-model", {"name": draw(names)},
                   {"generators": [(g, draw(st.integers(1, 6))) for g in gens],
                    "differential": draw(st.lists(st.tuples(st.sampled_from(gens), mono,
                                                            rationals), max_size=3))})


@given(st.one_of(mixed_docs(), dga_docs(), model_docs()))
def test_parse_print_parse_is_identity(doc):
    text = format_spec(doc)
    again = parse_spec(text)
    assert again == doc
    assert format_spec(again) == text


def test_canonicalization_of_a_hand_written_file():
    messy = SPHERE_MODEL.replace("b a^2 1", "b   a*a   2/2   # comment")
    doc = parse_spec(messy)
    assert format_spec(doc) == SPHERE_MODEL.replace("a^2", "a*a")
    assert parse_spec(format_spec(doc)) == doc


def test_builds():
    assert isinstance(build(parse_spec(ES1_FILE)), MixedComplex)
    assert isinstance(build(parse_spec(S2_FILE)), DgaSpec)
    assert isinstance(build(parse_spec(SPHERE_MODEL)), FreeGCASpec)
    assert build(parse_spec("kind: builtin\nbuiltin: sphere(4)\n")).degrees["v"] == 4


@pytest.mark.parametrize("text,line,col", [
    ("[basis]\n", 1, 1),
    ("kind: torus\n", 1, 7),
    ("kind: mixed\n[basis]\nx: a\n", 3, 1),
    ("kind: mixed\n[basis]\n0: a\n[delta]\na a\n", 5, 3),
    ("kind: mixed\n[colour]\n", 2, 2),
    ("kind: dga\nunit: 1\n[degrees]\n1 zero\n", 4, 3),
    ("kind: free-model\n[generators]\na 2\n[differential]\na 3b 1\n", 5, 3),
])
def test_parse_errors(text, line, col):
    with pytest.raises(SpecParseError) as e:
        parse_spec(text)
    assert (e.value.line, e.value.col) == (line, col)


def test_verify_normalized_on_an_infinite_hochschild_complex():
    # C(H(S3)) is infinite in each degree; the suite must stay in a small box
    code, out, _ = run(["verify", "builtin", "sphere(3)", "--suite", "normalized"])
    assert code == 0
    assert out.rstrip().endswith("verify: PASS")
