import io
import json
from pathlib import Path

import pytest

from twcoend.cli import run

DATA = Path(__file__).parent / "data"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_coend_both_routes():
    code, out, _ = call("coend", DATA / "hom.txt", "--functor", "H", "--method", "both")
    assert code == 0 and out.strip() == "2 elements; routes agree"


def test_end_single_route():
    for method in ("tw", "classical"):
        code, out, _ = call("end", DATA / "hom.txt", "--functor", "H", "--method", method)
        assert (code, out.strip()) == (0, "1 element")


def test_tw_counts_and_dot(tmp_path):
    dot = tmp_path / "tw.dot"
    code, out, _ = call("tw", DATA / "hom.txt", "--category", "C", "--dot", dot)
    assert (code, out.strip()) == (0, "6 objects, 15 morphisms")
    text = dot.read_text()
    assert text.startswith("digraph") and "Σ=" in text


def test_tw_dot_of_arrow_is_a_span(tmp_path):
    dot = tmp_path / "tw.dot"
    call("tw", DATA / "hom.txt", "--category", "A", "--dot", dot)
    lines = dot.read_text().splitlines()
    assert sum("->" in ln for ln in lines) == 2
    assert sum("[label=" in ln and "->" not in ln for ln in lines) == 3


def test_fubini_hom_example():
    code, out, _ = call("fubini", DATA / "hom.txt", "--functor", "H4")
    assert (code, out.strip()) == (0, "pass; size 4,4,4")


def test_adjunction():
    code, out, _ = call("adjunction", DATA / "hom.txt", "--functor", "H", "--set-size", "2")
    assert code == 0 and out.startswith("pass; coend side 4")


def test_nerve_and_esd():
    assert call("nerve", DATA / "hom.txt", "--category", "A", "--level", "2")[1].strip() == "dims 2,3,4"
    code, out, _ = call("esd", DATA / "hom.txt", "--category", "C", "--level", "1")
    assert code == 0 and out.startswith("dims 6,15")
    code, out, _ = call("esd", DATA / "monoid.txt", "--sset", "N", "--level", "1")
    assert (code, out.strip()) == (0, "dims 2,8")


def test_json_reports_are_stable():
    a = call("coend", DATA / "hom.txt", "--functor", "H", "--format", "json")[1]
    b = call("coend", DATA / "hom.txt", "--functor", "H", "--format", "json")[1]
    assert a == b
    report = json.loads(a)
    assert list(report) == sorted(report)
    assert report["witness"]["round_trip"] is True
    assert report["size"] == 2


def test_suite_is_reproducible():
    a = call("suite", "--cases", "12", "--seed", "5", "--max-objects", "3")
    b = call("suite", "--cases", "12", "--seed", "5", "--max-objects", "3")
    assert a == b and a[0] == 0
    assert a[1].splitlines()[-1] == "12 cases, 12 passed, 0 failed"
    assert call("suite", "--cases", "12", "--seed", "6", "--max-objects", "3")[1] != a[1]


def test_print_round_trips_through_cli(tmp_path):
    code, out, _ = call("print", DATA / "explicit_functor.txt")
    p = tmp_path / "again.txt"
    p.write_text(out)
    assert call("print", p)[1] == out


@pytest.mark.parametrize(
    "argv,code",
    [
        (["validate", DATA / "arrow.txt"], 0),
        (["validate", DATA / "empty.txt"], 0),
        (["validate", DATA / "monoid.txt"], 0),
        (["validate", DATA / "bad_unknown_object.txt"], 1),
        (["validate", DATA / "bad_missing_composite.txt"], 1),
        (["validate", DATA / "bad_identity.txt"], 1),
        (["validate", DATA / "bad_functor.txt"], 1),
        (["validate", DATA / "bad_syntax.txt"], 3),
        (["validate", DATA / "bad_stray.txt"], 3),
        (["validate", DATA / "bad_utf8.txt"], 3),
        (["validate", DATA / "missing.txt"], 3),
        (["coend", DATA / "hom.txt", "--functor", "H4"], 1),
        (["coend", DATA / "hom.txt", "--functor", "nope"], 1),
        (["esd", DATA / "monoid.txt", "--sset", "V", "--level", "1"], 1),
        (["tw", DATA / "hom.txt", "--category", "A", "--dot", "/nonexistent/dir/x.dot"], 3),
        (["validate", DATA / "arrow.txt", "--output", "/nonexistent/dir/x.txt"], 3),
        (["frobnicate"], 3),
    ],
)
def test_exit_code_matrix(argv, code):
    assert call(*argv)[0] == code


def test_diagnostic_is_printed_with_location():
    code, _, err = call("validate", DATA / "bad_unknown_object.txt")
    assert code == 1
    assert "bad_unknown_object.txt:3:21: error: unknown object 'b'" in err


def test_property_failure_exit_code(monkeypatch):
    import twcoend.cli as cli

    def broken(A, F):
        raise cli.CoendError("forced disagreement")

    monkeypatch.setattr(cli, "coend_route_witness", broken)
    code, out, err = call("coend", DATA / "hom.txt", "--functor", "H", "--format", "json")
    assert code == 2
    assert json.loads(out)["counterexample"] == "forced disagreement"
