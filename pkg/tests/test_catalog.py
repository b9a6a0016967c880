import json
from fractions import Fraction

import pytest

from liecoh import catalog as cat
from liecoh.errors import ArityMismatch, ConstraintViolation, ParseError, UnknownName

from helpers import catalog


def test_lookup_examples():
    assert cat.lookup("g6.3", dict(a=-1)).canonical_text() == "[-26,-36,0,-46,56,0]"
    assert cat.lookup("g5.7+R", dict(p=1, q=-1, r=-1)).canonical_text() == "[-15,-25,35,45,0,0]"
    with pytest.raises(ConstraintViolation):
        cat.lookup("g6.1", dict(a=1, b=1, c=1, e=1))


def test_lookup_errors():
    with pytest.raises(UnknownName):
        cat.lookup("g9.99")
    with pytest.raises(ArityMismatch):
        cat.lookup("g6.3")
    with pytest.raises(ArityMismatch):
        cat.lookup("g6.3", dict(a=-1, z=2))
    with pytest.raises(ConstraintViolation):
        cat.lookup("g6.3", dict(a=0))


def test_parse_params():
    assert cat.parse_params(["a=1/2", "b=-1"]) == {"a": Fraction(1, 2), "b": Fraction(-1)}
    assert cat.parse_params({"a": "0.25"}) == {"a": Fraction(1, 4)}
    assert cat.format_params({"a": Fraction(-1, 3), "b": Fraction(2)}) in ("a=-1/3,b=2", "a=-1/3, b=2")


def test_enumerate_counts():
    c = catalog()
    assert len(c.enumerate()) == 107
    assert len(c.enumerate(["group=3+3"])) == 7
    assert len(c.families) == 32
    assert all(e.dim == 6 for e in c.enumerate())
    assert {e.dim for e in c.enumerate(["group=factor"], include_factors=True)} == {3, 4, 5}
    assert all(not e.params for e in c.enumerate(["parameter-free"]))
    assert [e.name for e in c.enumerate(["name=g3.4+g3"])] == ["g3.4+g3.4", "g3.4+g3.5"]


def test_every_entry_instantiates_at_its_fixtures():
    c = catalog()
    for fx in c.fixtures():
        g = c.get(fx.entry).instantiate(fx.params)
        assert g.dim == c.get(fx.entry).dim


def test_family_points_are_catalog_points():
    c = catalog()
    pts = c.family_points()
    assert len({name for name, _, _ in pts}) == 32
    for _, entry, p in pts:
        c.get(entry).instantiate(p)


def test_verify_examples():
    rep = cat.verify_fixtures(["name=g3.4+3R"], jobs=1)
    assert rep["failed"] == [] and rep["total"] >= 1
    c = catalog()
    pick = [fx for fx in c.get("g6.23").fixtures if fx.params == dict(a=0, eps=1)]
    results = [cat.verify_fixture(fx, c) for fx in pick]
    assert {"symplectic", "symplectic_template"} <= {k for fx in pick for k in fx.expect}
    assert all(r.ok for r in results)
    step = [fx for fx in c.get("g6.21").fixtures if "step" in fx.expect]
    assert step and all(cat.verify_fixture(fx, c).ok for fx in step)


def test_verify_reports_failures(tmp_path, monkeypatch):
    doc = [{
        "name": "toy", "params": [], "constraints": [], "diff": ["-13", "23", "0", "0", "0", "0"],
        "group": "6", "superscript": "", "tags": [],
        "fixtures": [{"params": {}, "expect": {"betti": [4, 7, 9]}, "label": "generic", "cite": "derived: toy"}],
    }]
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps(doc))
    monkeypatch.setenv(cat.ENV_VAR, str(path))
    c = cat.load_catalog()
    assert list(c.entries) == ["toy"]
    assert len(c.families) == 32  # lists fall back to the bundled copy
    rep = cat.verify_fixtures(jobs=1)
    assert rep["total"] == 1 and rep["failed"] == ["toy[] generic"]
    bad = rep["results"][0]["checks"][0]
    assert bad["expected"] == [4, 7, 9] and bad["got"] == [4, 7, 8]


def test_duplicate_names_rejected(tmp_path):
    entry = {"name": "toy", "params": [], "constraints": [], "diff": ["0", "0"], "group": "6",
             "superscript": "", "tags": [], "fixtures": []}
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps([entry, entry]))
    with pytest.raises(ParseError):
        cat.load_catalog(path)


def test_full_catalog_verifies():
    rep = cat.verify_fixtures(jobs=4)
    assert rep["failed"] == [], rep["failed"]
    assert rep["total"] == len(catalog().fixtures())
