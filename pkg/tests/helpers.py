"""Shared fixtures data for the test modules: catalog points and symplectic pairs."""

from __future__ import annotations

from functools import lru_cache

from liecoh import catalog as cat
from liecoh.grammar import parse_form
from liecoh.lie import LieAlgebra
from liecoh.symplectic import symplectic_witness


@lru_cache(maxsize=None)
def catalog():
    return cat.load_catalog()


@lru_cache(maxsize=None)
def algebra(entry: str, params: tuple = ()) -> LieAlgebra:
    return catalog().get(entry).instantiate(dict(params))


def key(params) -> tuple:
    return tuple(sorted(params.items()))


@lru_cache(maxsize=None)
def fixture_points() -> list[tuple[str, tuple]]:
    """Distinct (entry, params) over all fixtures, in catalog order."""
    seen = []
    for fx in catalog().fixtures():
        p = (fx.entry, key(fx.params))
        if p not in seen:
            seen.append(p)
    return seen


@lru_cache(maxsize=None)
def family_points() -> list[tuple[str, str, tuple]]:
    return [(name, entry, key(p)) for name, entry, p in catalog().family_points()]


@lru_cache(maxsize=None)
def hl_fixtures():
    return [fx for fx in catalog().fixtures() if fx.cite.startswith("hard-lefschetz-examples")]


@lru_cache(maxsize=None)
def symplectic_pairs() -> list[tuple[str, LieAlgebra, object]]:
    """(label, algebra, omega) for every family point, template row and HL example,
    plus the abelian standard pair."""
    out = [("abelian", LieAlgebra.abelian(6), parse_form("12+34+56", 6))]
    for name, entry, p in family_points():
        g = algebra(entry, p)
        out.append((f"family {name} {dict(p)}", g, symplectic_witness(g).omega))
    for fx in catalog().fixtures():
        if "symplectic_template" in fx.expect:
            g = algebra(fx.entry, key(fx.params))
            out.append((f"template {fx.key}", g, cat.template_witness(fx.expect["symplectic_template"], g.dim)))
    for fx in hl_fixtures():
        g = algebra(fx.entry, key(fx.params))
        out.append((f"hl {fx.key} {fx.expect['hl']['omega']}", g, parse_form(fx.expect["hl"]["omega"], g.dim)))
    return out
