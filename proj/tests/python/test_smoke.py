"""End-to-end checks of the Python bindings against the worked examples."""

import pytest

import buchitrace

EX1_REC = "f = o(b) ; o(a) ; f\n"

EX1_AUT = """\
states: s0 s1
alphabet: a b
initial: s0
final: s1
trans: s0 a s0
trans: s0 b s1
trans: s1 a s0
trans: s1 b s1
"""

LOOP_A_REC = "m = o(a) ; m\n"


def test_analyze_pass():
    report = buchitrace.analyze(EX1_REC, EX1_AUT)
    assert report["schema"] == 1
    assert report["verdict"] == "pass"
    assert report["entry"] == "f"
    proc = report["procedures"]["f"]
    assert proc["finite"] == []
    assert len(proc["infinite"]) == 2
    assert proc["finite_ok"] and proc["infinite_ok"]
    assert report["diagnostics"] == []


def test_analyze_fail_with_witness():
    report = buchitrace.analyze(LOOP_A_REC, EX1_AUT)
    assert report["verdict"] == "fail"
    (diag,) = report["diagnostics"]
    assert diag["proc"] == "m"
    assert diag["part"] == "infinite"
    assert diag["witness"] == {"prefix": "<eps>", "period": "a"}


def test_analyze_unknown_entry():
    with pytest.raises(ValueError):
        buchitrace.analyze(EX1_REC, EX1_AUT, entry="zz")


def test_analyze_rejects_malformed_program():
    with pytest.raises(RuntimeError):
        buchitrace.analyze("f = o(\n", EX1_AUT)


def test_classes():
    report = buchitrace.classes(EX1_AUT)
    assert len(report["classes"]) == 4
    assert len(report["pairs"]) == 8
    reprs = {c["repr"] for c in report["classes"]}
    assert reprs == {"<eps>", "a", "b", "ba"}


def test_enumerate_prefixes():
    runs = buchitrace.enumerate_prefixes(EX1_REC, "f", 2)
    assert runs == [
        ("<eps>", "truncated"),
        ("ba", "truncated"),
        ("baba", "truncated"),
    ]


def test_search_lasso():
    assert buchitrace.search_lasso(EX1_REC, "f") == ("<eps>", "ba")
    assert buchitrace.search_lasso("f = o(a)\n", "f") is None


def test_iterate_phi():
    levels = buchitrace.iterate_phi("t = o(a) ? (o(b) ; t)\n", 2)
    assert levels == [("t", ["a", "ba"])]
