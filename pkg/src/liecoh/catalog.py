"""Catalog of solvable unimodular Lie algebras with fixtures to verify.

The catalog is a JSON array of entries (``data/catalog.json`` by default, or
the path in ``$LIECOH_CATALOG``).  Each entry has a differential template in
the algebra grammar whose coefficients may be expressions in named
parameters, plus constraint strings over those parameters.  Fixtures pin
expected invariants at exact rational parameter points.

Named lists (symplectic families, step exceptions, the lattice list, the
skipped manifest) live in ``lists.json`` next to the catalog file; the
bundled copy is used when the override directory has none.

A fixture may carry ``published`` values that differ from ``expect``: the
expected values are the verified ones, the published ones are kept for the
record together with a ``note``.
"""

from __future__ import annotations

import json
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from .cohomology import betti_numbers
from .errors import (
    ArityMismatch,
    ConstraintViolation,
    LiecohError,
    ParseError,
    UnknownName,
)
from .exterior import Form
from .grammar import evaluate, parse_entries, parse_form, parse_rational
from .lie import LieAlgebra, is_nilpotent, is_unimodular, nilradical, solvable_step
from .symplectic import (
    ClosedTwoFormSpace,
    closed_two_forms,
    has_symplectic,
    span_of_forms,
    top_coefficient,
    volume_polynomial,
)

ENV_VAR = "LIECOH_CATALOG"
DEFAULT_PATH = Path(__file__).with_name("data") / "catalog.json"


def catalog_path(path: str | os.PathLike | None = None) -> Path:
    if path is not None:
        return Path(path)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else DEFAULT_PATH


def format_params(params: Mapping[str, Fraction]) -> str:
    return ",".join(f"{k}={_q(v)}" for k, v in params.items())


def _q(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_params(raw: Mapping[str, Any] | Iterable[str] | None) -> dict[str, Fraction]:
    """Accept {'a': '1/2'} or ['a=1/2', ...]; values become exact Fractions."""
    if raw is None:
        return {}
    if isinstance(raw, Mapping):
        return {k: parse_rational(str(v)) for k, v in raw.items()}
    out = {}
    for item in raw:
        if "=" not in item:
            raise ParseError(f"expected name=value, got {item!r}", item, 0)
        k, v = item.split("=", 1)
        out[k.strip()] = parse_rational(v)
    return out


@dataclass(frozen=True)
class Fixture:
    entry: str
    params: dict[str, Fraction]
    expect: dict[str, Any]
    cite: str
    label: str = ""
    published: dict[str, Any] = field(default_factory=dict)
    note: str = ""

    @property
    def key(self) -> str:
        p = format_params(self.params)
        return f"{self.entry}[{p}]" + (f" {self.label}" if self.label else "")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: tuple[str, ...]
    constraints: tuple[str, ...]
    diff: tuple[str, ...]
    group: str
    superscript: str = ""
    tags: tuple[str, ...] = ()
    note: str = ""
    fixtures: tuple[Fixture, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.diff)

    @property
    def template(self) -> str:
        return "[" + ",".join(self.diff) + "]"

    def check_params(self, params: Mapping[str, Fraction]) -> None:
        given, want = set(params), set(self.params)
        if given != want:
            missing = sorted(want - given)
            extra = sorted(given - want)
            raise ArityMismatch(
                f"{self.name} takes parameters ({', '.join(self.params)})"
                + (f"; missing {missing}" if missing else "")
                + (f"; unexpected {extra}" if extra else "")
            )
        for c in self.constraints:
            if not evaluate(c, params):
                raise ConstraintViolation(f"{self.name}: constraint {c!r} fails at {format_params(params)}")

    def satisfies(self, params: Mapping[str, Fraction]) -> bool:
        try:
            self.check_params(params)
        except (ArityMismatch, ConstraintViolation):
            return False
        return True

    def instantiate(self, params: Mapping[str, Any] | None = None) -> LieAlgebra:
        p = parse_params(params)
        self.check_params(p)
        g = LieAlgebra(parse_entries(self.template, params=p))
        if not is_unimodular(g):
            raise ConstraintViolation(f"{self.name} at {format_params(p)} is not unimodular")
        return g


@dataclass
class Catalog:
    entries: dict[str, CatalogEntry]
    families: list[dict]
    lists: dict[str, Any]
    path: Path | None = None

    def get(self, name: str) -> CatalogEntry:
        try:
            return self.entries[name]
        except KeyError:
            raise UnknownName(f"unknown catalog entry {name!r}") from None

    def lookup(self, name: str, params: Mapping[str, Any] | None = None) -> LieAlgebra:
        return self.get(name).instantiate(params)

    @property
    def skipped(self) -> list[dict]:
        return list(self.lists.get("skipped", []))

    def family_points(self) -> list[tuple[str, str, dict[str, Fraction]]]:
        """(family name, entry, params) for every listed symplectic family point."""
        return [(f["name"], f["entry"], parse_params(p)) for f in self.families for p in f["points"]]

    def fixtures(self) -> list[Fixture]:
        return [f for e in self.entries.values() for f in e.fixtures]

    def enumerate(self, filters: Sequence[str] = (), *, include_factors: bool = False) -> list[CatalogEntry]:
        return [e for e in self.entries.values()
                if (include_factors or e.group != "factor") and all(_match(e, f) for f in filters)]


def _match(e: CatalogEntry, flt: str) -> bool:
    """Filters: ``dim=N``, ``group=G``, ``tag=T``, ``parameter-free``, ``name=PREFIX``."""
    if flt == "parameter-free":
        return not e.params
    key, _, val = flt.partition("=")
    if key == "dim":
        return e.dim == int(val)
    if key == "group":
        return e.group == val
    if key == "tag":
        return val in e.tags
    if key == "name":
        return e.name.startswith(val)
    raise ParseError(f"unknown filter {flt!r}", flt, 0)


def _entry_from_json(raw: dict) -> CatalogEntry:
    name = raw["name"]
    fixtures = tuple(
        Fixture(name, parse_params(fx.get("params", {})), dict(fx.get("expect", {})), fx.get("cite", ""),
                fx.get("label", ""), dict(fx.get("published", {})), fx.get("note", ""))
        for fx in raw.get("fixtures", [])
    )
    return CatalogEntry(
        name=name,
        params=tuple(raw.get("params", [])),
        constraints=tuple(raw.get("constraints", [])),
        diff=tuple(raw["diff"]),
        group=raw.get("group", "6"),
        superscript=raw.get("superscript", ""),
        tags=tuple(raw.get("tags", [])),
        note=raw.get("note", ""),
        fixtures=fixtures,
    )


@lru_cache(maxsize=8)
def _load(path: str) -> Catalog:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    entries = {}
    for raw in doc:
        e = _entry_from_json(raw)
        if e.name in entries:
            raise ParseError(f"duplicate catalog entry {e.name!r}", path, 0)
        entries[e.name] = e
    lists_path = Path(path).with_name("lists.json")
    if not lists_path.exists():
        lists_path = DEFAULT_PATH.with_name("lists.json")
    with open(lists_path, encoding="utf-8") as fh:
        lists = json.load(fh)
    return Catalog(entries, list(lists.get("symplectic_families", [])), lists, Path(path))


def load_catalog(path: str | os.PathLike | None = None) -> Catalog:
    return _load(str(catalog_path(path)))


def lookup(name: str, params: Mapping[str, Any] | None = None, *, path=None) -> LieAlgebra:
    return load_catalog(path).lookup(name, params)


def enumerate_entries(filters: Sequence[str] = (), *, path=None, include_factors: bool = False) -> list[CatalogEntry]:
    return load_catalog(path).enumerate(filters, include_factors=include_factors)


# -- fixture verification ------------------------------------------------------


@dataclass
class Check:
    name: str
    ok: bool
    expected: Any = None
    got: Any = None
    logged: bool = False  # informational only, never a failure

    def as_dict(self) -> dict:
        d = {"check": self.name, "ok": self.ok, "expected": jsonable(self.expected), "got": jsonable(self.got)}
        if self.logged:
            d["logged"] = True
        return d


@dataclass
class FixtureResult:
    key: str
    entry: str
    cite: str
    checks: list[Check] = field(default_factory=list)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and all(c.ok for c in self.checks)

    def as_dict(self) -> dict:
        d = {"fixture": self.key, "entry": self.entry, "cite": self.cite, "ok": self.ok,
             "checks": [c.as_dict() for c in self.checks]}
        if self.error:
            d["error"] = self.error
        return d


def jsonable(v):
    if isinstance(v, Fraction):
        return _q(v)
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: jsonable(x) for k, x in v.items()}
    return v


_PRODUCT = re.compile(r"^\s*(w\d\d(\s*\*\s*w\d\d)*)\s*!=\s*0\s*$")


def template_forms(template: Mapping[str, Any], n: int) -> tuple[list[str], list[Form]]:
    """Variables and generator 2-forms of a symplectic template."""
    variables = list(template["vars"])
    gens = [parse_form(s, n) for s in template["generators"]]
    if len(variables) != len(gens):
        raise ArityMismatch("template variables and generators differ in length")
    return variables, gens


def _witness_env(template: Mapping[str, Any]) -> dict[str, Fraction]:
    env = {v: Fraction(0) for v in template["vars"]}
    env.update(parse_params(template.get("witness", {})))
    return env


def template_witness(template: Mapping[str, Any], n: int) -> Form:
    """The 2-form sum w_v * generator_v at the template's witness values."""
    variables, gens = template_forms(template, n)
    env = _witness_env(template)
    omega = Form.zero(n)
    for v, f in zip(variables, gens):
        if env[v]:
            omega = omega + f * env[v]
    return omega


def check_template(g: LieAlgebra, template: Mapping[str, Any]) -> list[Check]:
    """Closedness, span equality, witness nondegeneracy and product-condition spot checks."""
    n = g.dim
    variables, gens = template_forms(template, n)
    checks = []
    closed = [str(f) for f in gens if not g.d(f).is_zero()]
    checks.append(Check("template_closed", not closed, [], closed))
    space = closed_two_forms(g)
    fam = span_of_forms(gens, n)
    checks.append(Check("template_span", fam == space.subspace, space.dim, fam.rank))
    env = _witness_env(template)
    conds = list(template.get("conditions", []))
    cond_ok = all(evaluate(c, env) for c in conds)
    checks.append(Check("witness_conditions", cond_ok, True, cond_ok))
    omega = template_witness(template, n)
    top = top_coefficient(omega)
    checks.append(Check("witness_nondegenerate", bool(top) and g.d(omega).is_zero(), "nonzero", top))
    # a factor of a pure-product condition is expected to force omega^3 = 0 when it
    # vanishes, unless the template lists it as non-forcing
    poly = volume_polynomial(ClosedTwoFormSpace(g, tuple(gens)))
    loose = set(template.get("non_forcing_factors", []))
    for c in conds:
        m = _PRODUCT.match(c)
        if not m:
            continue
        for var in re.findall(r"w\d\d", m.group(1)):
            forced = poly.substitute(variables.index(var), 0).is_zero()
            checks.append(Check(f"factor_{var}_forces_degenerate", forced != (var in loose), var not in loose, forced))
    return checks


def hl_checks(g: LieAlgebra, want_hl: Mapping[str, Any]) -> list[Check]:
    from .tseng_yau import build_pair, hard_lefschetz

    omega = parse_form(want_hl["omega"], g.dim)
    verdict, report = hard_lefschetz(build_pair(g, omega))
    checks = [Check("hl_verdict", verdict == want_hl["verdict"], want_hl["verdict"], verdict)]
    for kind, want in want_hl.get("dims", {}).items():
        got = list(report.triple(kind))
        checks.append(Check(f"hl_dims_{kind}", got == list(want), list(want), got))
    checks.append(Check("hl_duality", report.duality, True, report.duality))
    return checks


def verify_fixture(fx: Fixture, catalog: Catalog | None = None) -> FixtureResult:
    cat = catalog or load_catalog()
    res = FixtureResult(fx.key, fx.entry, fx.cite)
    try:
        entry = cat.get(fx.entry)
        g = entry.instantiate(fx.params)
        ex = fx.expect
        if "betti" in ex:
            b = betti_numbers(g)
            got = list(b[1:1 + len(ex["betti"])])
            res.checks.append(Check("betti", got == list(ex["betti"]), list(ex["betti"]), got))
        if "symplectic" in ex:
            got = has_symplectic(g)
            res.checks.append(Check("symplectic", got == ex["symplectic"], ex["symplectic"], got))
        if "symplectic_template" in ex:
            res.checks.extend(check_template(g, ex["symplectic_template"]))
        if "step" in ex:
            got = solvable_step(g)
            res.checks.append(Check("step", got == ex["step"], ex["step"], got))
        if "step_logged" in ex:
            got = solvable_step(g)
            res.checks.append(Check("step_in_2_3", got in (2, 3), [2, 3], got, logged=True))
        if "nilradical_codim" in ex:
            got = g.dim - nilradical(g).rank
            res.checks.append(Check("nilradical_codim", got == ex["nilradical_codim"], ex["nilradical_codim"], got))
        if "nilpotent" in ex:
            got = is_nilpotent(g)
            res.checks.append(Check("nilpotent", got == ex["nilpotent"], ex["nilpotent"], got))
        if "hl" in ex:
            res.checks.extend(hl_checks(g, ex["hl"]))
    except LiecohError as e:
        res.error = f"{type(e).__name__}: {e}"
    return res


def _verify_batch(args) -> list[dict]:
    path, keys = args
    cat = load_catalog(path)
    wanted = set(keys)
    return [verify_fixture(fx, cat).as_dict() for fx in cat.fixtures() if fx.key in wanted]


def select_fixtures(cat: Catalog, filters: Sequence[str] = ()) -> list[Fixture]:
    names = {e.name for e in cat.enumerate(filters, include_factors=True)}
    return [fx for fx in cat.fixtures() if fx.entry in names]


def verify_fixtures(filters: Sequence[str] = (), *, jobs: int | None = None, path=None) -> dict:
    """Run every selected fixture; the report lists each result and a summary."""
    cat = load_catalog(path)
    fixtures = select_fixtures(cat, filters)
    jobs = jobs or os.cpu_count() or 1
    if jobs <= 1 or len(fixtures) < 2:
        results = [verify_fixture(fx, cat).as_dict() for fx in fixtures]
    else:
        by_entry: dict[str, list[str]] = {}
        for fx in fixtures:
            by_entry.setdefault(fx.entry, []).append(fx.key)
        batches = [(str(cat.path), keys) for keys in by_entry.values()]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_verify_batch, batches))
        order = {fx.key: i for i, fx in enumerate(fixtures)}
        results = sorted((r for part in parts for r in part), key=lambda r: order[r["fixture"]])
    failed = [r["fixture"] for r in results if not r["ok"]]
    return {"total": len(results), "passed": len(results) - len(failed), "failed": failed, "results": results}
