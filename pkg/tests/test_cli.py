import json
import subprocess
import sys

import pytest

from liecoh.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    # canonical: re-serialising the parsed document reproduces the same bytes
    doc = json.loads(out)
    assert json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n" == out
    return code, doc


def test_analyze(capsys):
    code, doc = run_json(capsys, "analyze", "[-23,0,0,-46,56,0]")
    assert code == 0
    assert doc["unimodular"] is True and doc["step"] == 2
    assert doc["nilradical"]["dim"] == 5 and doc["nilradical"]["codim"] == 1
    assert doc["almost_abelian"] is False


def test_analyze_text_matches_json(capsys):
    _, out, _ = run(capsys, "analyze", "[-23,0,0,-46,56,0]")
    lines = dict(line.split(None, 1) for line in out.strip().splitlines())
    assert lines["unimodular"] == "yes" and lines["step"] == "2"
    assert lines["nilradical.codim"] == "1" and lines["almost_abelian"] == "no"


def test_betti(capsys):
    code, doc = run_json(capsys, "betti", "--catalog", "g6.15")
    assert code == 0 and doc["betti"] == [1, 1, 2, 4, 2, 1, 1]
    code, doc = run_json(capsys, "betti", "--catalog", "g6.3", "--param", "a=-1", "--degree", "2")
    assert doc["degree"]["b"] == len(doc["degree"]["representatives"]) == doc["betti"][2]


def test_symplectic(capsys):
    code, doc = run_json(capsys, "symplectic", "--catalog", "g6.3", "--param", "a=-1", "--witness")
    assert code == 0 and doc["exists"] is True
    assert doc["witness"]["omega"] == "16+23+45"
    code, doc = run_json(capsys, "symplectic", "--catalog", "g6.4")
    assert doc["exists"] is False and "witness" not in doc


def test_hodge(capsys):
    code, doc = run_json(capsys, "hodge", "--catalog", "g3.4+3R", "--omega", "12+36+45")
    assert code == 0 and doc["hard_lefschetz"] is True
    for kind in ("d", "d+dL", "d&dL"):
        assert doc["dims"][kind][1:4] == [4, 7, 8]
    assert doc["duality"] is True


def test_hodge_scan(capsys):
    code, doc = run_json(capsys, "hodge", "--catalog", "g3.4+3R", "--scan-witnesses", "2")
    assert code == 0 and len(doc["scan"]) == 2


def test_rationals_are_strings(capsys):
    code, doc = run_json(capsys, "betti", "--catalog", "g6.13", "--param", "a=1/2", "--param", "b=-1",
                         "--param", "h=0")
    assert doc["source"]["params"] == {"a": "1/2", "b": "-1", "h": "0"}


def test_catalog_commands(capsys):
    code, doc = run_json(capsys, "catalog", "list", "--filter", "group=3+3")
    assert code == 0 and doc["count"] == 7
    code, doc = run_json(capsys, "catalog", "list", "--families")
    assert doc["count"] == 32
    code, doc = run_json(capsys, "catalog", "show", "g6.3")
    assert doc["params"] == ["a"] and doc["fixtures"]
    code, doc = run_json(capsys, "catalog", "verify", "--filter", "name=g3", "--jobs", "1")
    assert code == 0 and doc["failed"] == []


@pytest.mark.parametrize("argv,code", [
    (["analyze", "[-23,0,0,-4x6,56,0]"], 3),
    (["analyze", "[21,0]"], 3),
    (["betti", "--catalog", "g6.999"], 3),
    (["betti", "--catalog", "g6.3", "--param", "a=0"], 3),
    (["betti", "--catalog", "g6.3"], 3),
    (["hodge", "[0,0,0,0,0,0]", "--omega", "12+34"], 3),
    (["betti"], 2),
    (["hodge", "[0,0,0,0,0,0]"], 2),
    (["frobnicate"], 2),
    (["betti", "[0,0]", "--catalog", "g6.15"], 2),
])
def test_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code and err and not out


def test_parse_error_shows_position(capsys):
    _, _, err = run(capsys, "analyze", "[-23,0,0,-4x6,56,0]")
    caret = err.splitlines()[-1]
    assert caret.index("^") - 2 == 10


def test_verify_failure_exit_code(capsys, tmp_path, monkeypatch):
    doc = [{"name": "toy", "params": [], "constraints": [], "diff": ["0", "0"], "group": "6", "superscript": "",
            "tags": [], "fixtures": [{"params": {}, "expect": {"betti": [1]}, "label": "generic", "cite": "derived"}]}]
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps(doc))
    monkeypatch.setenv("LIECOH_CATALOG", str(path))
    code, out, _ = run(capsys, "catalog", "verify", "--jobs", "1")
    assert code == 1 and out.startswith("FAIL")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "liecoh", "betti", "[-23,0,0]", "--json"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["betti"] == [1, 2, 2, 1]
