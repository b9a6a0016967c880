"""Command-line interface: ``liecoh analyze|betti|symplectic|hodge|catalog``.

Every report is built once as a plain dict (strings, ints, bools, lists) and
rendered either as canonical JSON (``--json``: sorted keys, rationals as
"p/q" strings) or as an aligned text table holding the same data.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 parse or
constraint error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import catalog as cat
from .cohomology import betti, betti_numbers, multi_moment_eligible
from .errors import LiecohError, NilpotentInput, NotSolvable, ParseError
from .exterior import format_form
from .grammar import parse_form
from .lie import (
    LieAlgebra,
    bracket_kernel_dim,
    derived_series,
    is_almost_abelian,
    is_nilpotent,
    is_solvable,
    is_unimodular,
    lower_central_series,
    nilradical,
    parse_algebra,
)
from .symplectic import closed_two_forms, scan_witnesses, symplectic_witness, volume_polynomial
from .tseng_yau import KINDS, build_pair, hard_lefschetz

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


def q(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def vector(v: Sequence) -> str:
    return "(" + ",".join(q(x) for x in v) + ")"


# -- rendering -------------------------------------------------------------------


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _flatten(prefix: str, value: Any, out: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else k, value[k], out)
    elif isinstance(value, list) and value and all(isinstance(x, dict) for x in value):
        for i, x in enumerate(value):
            _flatten(f"{prefix}[{i}]", x, out)
    else:
        out.append((prefix, _scalar(value)))


def _scalar(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    if isinstance(value, list):
        return "(" + ", ".join(_scalar(x) for x in value) + ")"
    return str(value)


def to_text(report: dict) -> str:
    rows: list[tuple[str, str]] = []
    _flatten("", report, rows)
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def emit(report: dict, as_json: bool) -> None:
    sys.stdout.write(to_json(report) if as_json else to_text(report))


# -- input -----------------------------------------------------------------------


def load_algebra(args) -> tuple[LieAlgebra, dict]:
    """The algebra from a positional spec or ``--catalog NAME --param k=v``."""
    if args.catalog_name:
        if args.spec:
            raise UsageError("give either an algebra spec or --catalog, not both")
        params = cat.parse_params(args.param or [])
        g = cat.lookup(args.catalog_name, params)
        source = {"catalog": args.catalog_name, "params": {k: q(v) for k, v in params.items()}}
        return g, source
    if not args.spec:
        raise UsageError("an algebra spec or --catalog NAME is required")
    if args.param:
        raise UsageError("--param only applies with --catalog")
    return parse_algebra(args.spec), {"spec": args.spec}


class UsageError(Exception):
    pass


# -- commands --------------------------------------------------------------------


def cmd_analyze(args) -> tuple[dict, int]:
    g, source = load_algebra(args)
    solvable = is_solvable(g)
    nil = nilradical(g)
    report: dict[str, Any] = {
        "source": source,
        "algebra": g.canonical_text(),
        "dim": g.dim,
        "unimodular": is_unimodular(g),
        "solvable": solvable,
        "nilpotent": is_nilpotent(g),
        "derived_series_dims": list(derived_series(g).dims),
        "lower_central_series_dims": list(lower_central_series(g).dims),
        "step": derived_series(g).step if solvable else None,
        "nilradical": {"dim": nil.rank, "codim": g.dim - nil.rank, "basis": [vector(v) for v in nil.basis]},
        "bracket_kernel_dim": bracket_kernel_dim(g),
        "multi_moment_eligible": multi_moment_eligible(g),
    }
    try:
        report["almost_abelian"] = is_almost_abelian(g)
    except (NotSolvable, NilpotentInput):
        report["almost_abelian"] = None
    return report, EXIT_OK


def cmd_betti(args) -> tuple[dict, int]:
    g, source = load_algebra(args)
    report: dict[str, Any] = {"source": source, "algebra": g.canonical_text(), "betti": list(betti_numbers(g))}
    if args.degree is not None:
        k = args.degree
        if not 0 <= k <= g.dim:
            raise UsageError(f"--degree must lie in 0..{g.dim}")
        full = betti(g)
        report["degree"] = {
            "k": k,
            "b": full.b[k],
            "cocycles_dim": full.cocycles[k].rank,
            "coboundaries_dim": full.coboundaries[k].rank,
            "representatives": [format_form(f) for f in full.representatives[k]],
        }
    return report, EXIT_OK


def cmd_symplectic(args) -> tuple[dict, int]:
    g, source = load_algebra(args)
    report: dict[str, Any] = {"source": source, "algebra": g.canonical_text(), "dim": g.dim}
    if g.dim % 2:
        report["exists"] = False
        report["reason"] = "odd dimension"
        return report, EXIT_OK
    space = closed_two_forms(g)
    poly = volume_polynomial(space)
    report["exists"] = not poly.is_zero()
    report["closed_two_forms"] = {"dim": space.dim, "basis": [format_form(f) for f in space.basis]}
    report["volume_polynomial"] = {"variables": poly.nvars, "degree": poly.degree, "terms": len(poly.terms)}
    if args.witness and report["exists"]:
        w = symplectic_witness(g, space)
        report["witness"] = {"omega": format_form(w.omega), "top_coefficient": q(w.top_coefficient)}
    return report, EXIT_OK


def _hodge_block(g: LieAlgebra, omega) -> dict:
    verdict, rep = hard_lefschetz(build_pair(g, omega))
    return {
        "omega": format_form(omega),
        "dims": {k: list(rep.dims[k]) for k in KINDS},
        "duality": rep.duality,
        "hard_lefschetz": verdict,
        "criteria": dict(rep.criteria),
        "lefschetz_ranks": list(rep.lefschetz_ranks),
    }


def cmd_hodge(args) -> tuple[dict, int]:
    g, source = load_algebra(args)
    if args.omega is None and not args.scan_witnesses:
        raise UsageError("--omega or --scan-witnesses is required")
    report: dict[str, Any] = {"source": source, "algebra": g.canonical_text()}
    if args.omega is not None:
        report.update(_hodge_block(g, parse_form(args.omega, g.dim)))
    if args.scan_witnesses:
        report["scan"] = [_hodge_block(g, w) for w in scan_witnesses(g, args.scan_witnesses)]
    return report, EXIT_OK


def _entry_summary(e: cat.CatalogEntry) -> dict:
    return {"name": e.name, "dim": e.dim, "group": e.group, "params": list(e.params), "tags": list(e.tags)}


def cmd_catalog(args) -> tuple[dict, int]:
    c = cat.load_catalog()
    filters = args.filter or []
    if args.action == "list":
        if args.families:
            fams = [{"name": f["name"], "entry": f["entry"], "points": f["points"]} for f in c.families]
            return {"families": fams, "count": len(fams)}, EXIT_OK
        entries = c.enumerate(filters, include_factors=args.all)
        return {"entries": [_entry_summary(e) for e in entries], "count": len(entries)}, EXIT_OK
    if args.action == "show":
        if not args.name:
            raise UsageError("catalog show needs an entry name")
        e = c.get(args.name)
        d = _entry_summary(e)
        d.update({
            "constraints": list(e.constraints),
            "diff": e.template,
            "note": e.note,
            "fixtures": [{"params": {k: q(v) for k, v in fx.params.items()}, "cite": fx.cite, "label": fx.label,
                          "expect": cat.jsonable(fx.expect)} for fx in e.fixtures],
        })
        return d, EXIT_OK
    report = cat.verify_fixtures(filters, jobs=args.jobs)
    return report, EXIT_OK if not report["failed"] else EXIT_FAIL


def _verify_text(report: dict) -> str:
    lines = []
    for r in report["results"]:
        status = "PASS" if r["ok"] else "FAIL"
        lines.append(f"{status}  {r['fixture']}  [{r['cite']}]")
        if not r["ok"]:
            if r.get("error"):
                lines.append(f"      error: {r['error']}")
            for chk in r["checks"]:
                if not chk["ok"]:
                    lines.append(f"      {chk['check']}: expected {chk['expected']}, got {chk['got']}")
    lines.append(f"{report['passed']}/{report['total']} fixtures passed")
    return "\n".join(lines) + "\n"


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit canonical JSON")

    algebra = argparse.ArgumentParser(add_help=False)
    algebra.add_argument("spec", nargs="?", help='algebra as "[dalpha_1,...,dalpha_n]", e.g. "[-23,0,0]"')
    algebra.add_argument("--catalog", dest="catalog_name", metavar="NAME", help="use a catalog entry")
    algebra.add_argument("--param", action="append", metavar="K=V", help="catalog parameter (repeatable)")

    p = argparse.ArgumentParser(prog="liecoh", description="Exact cohomology of small Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("analyze", parents=[common, algebra], help="structural report")
    b = sub.add_parser("betti", parents=[common, algebra], help="Betti numbers")
    b.add_argument("--degree", type=int, help="also report cocycles, coboundaries and representatives in degree k")
    s = sub.add_parser("symplectic", parents=[common, algebra], help="existence of symplectic forms")
    s.add_argument("--witness", action="store_true", help="produce an explicit closed nondegenerate form")
    h = sub.add_parser("hodge", parents=[common, algebra], help="symplectic cohomologies and Hard Lefschetz")
    h.add_argument("--omega", help='symplectic form, e.g. "12+36+45"')
    h.add_argument("--scan-witnesses", type=int, default=0, metavar="N",
                   help="also analyze up to N witnesses with coefficients in {0,1,-1}")
    c = sub.add_parser("catalog", parents=[common], help="list, show or verify the catalog")
    c.add_argument("action", choices=["list", "show", "verify"])
    c.add_argument("name", nargs="?", help="entry name for show")
    c.add_argument("--filter", action="append",
                   help="dim=N, group=G, tag=T, name=PREFIX or parameter-free (repeatable)")
    c.add_argument("--jobs", type=int, default=None, help="worker processes for verify")
    c.add_argument("--families", action="store_true", help="list the symplectic families instead of entries")
    c.add_argument("--all", action="store_true", help="include low-dimensional factor entries")
    return p


COMMANDS = {"analyze": cmd_analyze, "betti": cmd_betti, "symplectic": cmd_symplectic, "hodge": cmd_hodge,
            "catalog": cmd_catalog}


def _report_error(e: Exception) -> None:
    sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
    if isinstance(e, ParseError) and e.text:
        sys.stderr.write(f"  {e.text}\n  {' ' * e.position}^\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        report, code = COMMANDS[args.command](args)
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE
    except LiecohError as e:
        _report_error(e)
        return EXIT_INPUT
    if args.command == "catalog" and args.action == "verify" and not args.json:
        sys.stdout.write(_verify_text(report))
    else:
        emit(report, args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
