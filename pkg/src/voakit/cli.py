"""``voakit`` command line."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

__all__ = ["main", "build_parser"]


def _rational_json(text: str):
    """Parse JSON in which bare fractions like ``-3/8`` are allowed."""
    quoted = re.sub(r"(?<![\"\w])(-?\d+/\d+)", r'"\1"', text)
    return _fractions(json.loads(quoted))


def _fractions(x):
    if isinstance(x, list):
        return [_fractions(v) for v in x]
    if isinstance(x, (int, str)):
        return Fraction(x)
    return x


def _read_json(path):
    with open(path) as fh:
        return json.load(fh)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=1, sort_keys=False, default=str))


def _vec_str(v):
    return [str(x) for x in v]


# -- verify / engine ---------------------------------------------------------------

def _cmd_verify(args) -> int:
    from .cases import registry, run_case
    from .presets import use_data_dir
    ids = args.case or [c["id"] for c in registry()]
    with use_data_dir(args.data):
        reports = [run_case(i, args.order) for i in ids]
    if args.json:
        _emit({"order": args.order, "cases": [r.to_dict(args.timing) for r in reports]})
    else:
        for r in reports:
            print(r.text(args.timing))
        counts = {s: sum(r.status == s for r in reports) for s in ("pass", "fail", "skipped")}
        print(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skipped']} skipped")
    return 0 if all(r.status != "fail" for r in reports) else 1


def _ctx(preset: str):
    from .presets import build, parse_preset
    return build(parse_preset(preset))


def _cmd_nth(args) -> int:
    from .engine import nth_product
    from .expr import format_state, parse_state
    c = _ctx(args.preset)
    print(format_state(nth_product(c, parse_state(c, args.a), parse_state(c, args.b), args.n)))
    return 0


def _cmd_canon(args) -> int:
    from .expr import format_state, parse_state
    print(format_state(parse_state(_ctx(args.preset), args.expr)))
    return 0


# -- lattice --------------------------------------------------------------------------

def _lattice_doc(L) -> dict:
    return {"gram": [_vec_str(r) for r in L.gram], "basis": [_vec_str(b) for b in L.basis],
            "ambient_gram": [_vec_str(r) for r in L.ambient_gram], "det": str(L.det())}


def _cmd_lattice(args) -> int:
    from . import lattice as lt
    L = lt.lattice_from_dict(_read_json(args.file))
    op = args.op
    if op == "dual":
        _emit(_lattice_doc(lt.dual_lattice(L)))
    elif op == "complement":
        _emit(_lattice_doc(lt.orthogonal_complement(L, _rational_json(args.sub))))
    elif op == "discriminant":
        G = lt.discriminant_group(L)
        _emit({"invariants": G.invariants, "order": G.order,
               "generators": [_vec_str(g) for g in G.generators]})
    elif op == "solve-lift":
        sol = lt.solve_lift(L, _rational_json(args.targets), monodromy=args.monodromy)
        out = sol.to_dict()
        if args.modulo:
            N = lt.Lattice(L.ambient_gram, _rational_json(args.modulo))
            out["lifting_set"] = [_vec_str(v) for v in lt.lifting_set(sol, N)]
        _emit(out)
    elif op == "check-extension":
        wf = _rational_json(args.form) if args.form else L.weight_form
        if wf is None:
            raise SystemExit("check-extension needs --form or a weight_form in the lattice file")
        _emit({"result": lt.extension_check(L, wf, _rational_json(args.sub))})
    return 0


# -- characters -------------------------------------------------------------------------

def _series(path):
    from .qseries import TwoVariableSeries
    return TwoVariableSeries.from_dict(_read_json(path))


def _cmd_char(args) -> int:
    from . import qseries as qs
    op = args.op
    if op == "standard":
        params = dict(p.split("=", 1) for p in args.param)
        _emit(qs.standard_character(args.kind, params, args.order).to_dict())
        return 0
    ch = _series(args.file)
    if op == "branch":
        b = qs.branching_extract(ch, _rational_json(args.form), _rational_json(args.mu), args.order)
        _emit(b.to_dict(f"branching at {args.mu}"))
    elif op == "criterion":
        r = qs.multfree_char_criterion(ch, _rational_json(args.form), _rational_json(args.lam), args.order)
        _emit({"holds": r.holds, "verdict": r.verdict, "order": str(r.order),
               "failure": None if r.failure is None else [_vec_str(r.failure[0])] + [str(x) for x in r.failure[1:]],
               "unverified_charges": [_vec_str(m) for m in r.unverified_charges]})
        return 0 if r.holds else 1
    elif op == "decompose":
        doc = _read_json(args.pairs)
        wf = _fractions(doc["weight_form"])
        pairs = [((wf, _fractions(p["lambda"])), qs.TwoVariableSeries.from_dict(p["coset"])) for p in doc["pairs"]]
        r = qs.verify_decomposition(ch, pairs, args.order)
        _emit({"ok": r.ok, "order": str(r.order),
               "first_residual": None if r.first_residual is None else str(r.first_residual),
               "residual": r.residual.to_dict("residual")})
        return 0 if r.ok else 1
    elif op == "flow":
        _emit(qs.spectral_flow(ch, args.ell, Fraction(args.k), args.order).to_dict(f"sigma^{args.ell}"))
    return 0


# -- mtc / modrep ------------------------------------------------------------------------

def _cmd_mtc(args) -> int:
    from .mtc import hopf_criterion, load_ribbon_data, simple_current_order
    R = load_ribbon_data(args.data)
    Ps = [args.P] if args.P else list(R.labels)
    out = {"J": args.J, "order": simple_current_order(R, args.J), "X": args.X, "s": args.s, "results": []}
    for P in Ps:
        r = hopf_criterion(R, args.J, args.X, args.s, P)
        out["results"].append({"P": P, "case": r.case, "scalar": str(r.scalar), "S": str(r.s_entry)})
    _emit(out)
    return 0 if all(r["case"] != "violation" for r in out["results"]) else 1


def _label_json(x):
    if hasattr(x, "to_dict"):
        return x.to_dict()
    if isinstance(x, tuple):
        return [str(v) for v in x]
    return str(x)


def _cmd_modrep(args) -> int:
    from . import modrep as mr
    op = args.op
    if op == "regroup":
        r = mr.sw_regroup(mr.load_decomposition(args.file))
        _emit({"N": [_vec_str(b) for b in r.N.basis], "quotient": r.quotient, "order": r.order,
               "classes": [{"rep": _vec_str(m), "label": _label_json(lab)} for m, lab in r.classes]})
    elif op == "split":
        parts = mr.orbit_split(mr.load_decomposition(args.file))
        _emit([p.to_dict() for p in parts])
    elif op == "fuse":
        D = mr.LoewyDiagram.from_dict(_read_json(args.file))
        elem = tuple(int(x) for x in args.element.split(",")) if args.element else ()
        mod = tuple(int(x) for x in args.modulus.split(",")) if args.modulus else ()
        relabel = _read_json(args.relabel) if args.relabel else None
        out = mr.fuse_diagram(mr.SimpleCurrentLabel(args.J, elem, mod), D, relabel)
        _emit(out.to_dict())
    elif op == "check-ses":
        ses = [mr.load_decomposition(p) for p in (args.sub, args.mid, args.quo)]
        try:
            rep = mr.exactness_transport(ses)
        except mr.LengthMismatch as exc:
            _emit({"consistent": False, "error": str(exc), "weight": _vec_str(exc.mu)})
            return 1
        _emit({"consistent": True,
               "lengths": [{"weight": _vec_str(m), "lengths": list(v)} for m, v in rep["lengths"].items()]})
    return 0


# -- parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="voakit", description="Exact VOA, character and lattice checks.")
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run verification cases")
    v.add_argument("--case", action="append", help="case id (repeatable; default all)")
    v.add_argument("--order", type=int, default=20, help="q-truncation for character cases")
    v.add_argument("--json", action="store_true")
    v.add_argument("--data", help="data directory (VOAKIT_DATA takes precedence)")
    v.add_argument("--timing", action="store_true", help="include elapsed seconds")
    v.set_defaults(func=_cmd_verify)

    n = sub.add_parser("nth-product", help="a_(n) b in a preset")
    n.add_argument("--preset", required=True)
    n.add_argument("--a", required=True)
    n.add_argument("--b", required=True)
    n.add_argument("-n", type=int, required=True)
    n.set_defaults(func=_cmd_nth)

    c = sub.add_parser("canon", help="canonical form of an expression")
    c.add_argument("--preset", required=True)
    c.add_argument("expr")
    c.set_defaults(func=_cmd_canon)

    lat = sub.add_parser("lattice", help="lattice operations on a lattice file")
    lat.add_argument("op", choices=["dual", "complement", "discriminant", "solve-lift", "check-extension"])
    lat.add_argument("file")
    lat.add_argument("--sub", help="sublattice basis, e.g. [[1,2]]")
    lat.add_argument("--targets", help="lift targets, e.g. [0,1/2]")
    lat.add_argument("--monodromy", action="store_true")
    lat.add_argument("--modulo", help="basis of N for the lifting set")
    lat.add_argument("--form", help="Fock weight form")
    lat.set_defaults(func=_cmd_lattice)

    ch = sub.add_parser("char", help="character operations")
    ch.add_argument("op", choices=["standard", "branch", "criterion", "decompose", "flow"])
    ch.add_argument("file", nargs="?", help="character file (or kind for 'standard')")
    ch.add_argument("--param", action="append", default=[], help="key=value for 'standard'")
    ch.add_argument("--order", type=Fraction, default=Fraction(20))
    ch.add_argument("--form")
    ch.add_argument("--mu")
    ch.add_argument("--lam")
    ch.add_argument("--pairs", help="decomposition pairs file")
    ch.add_argument("--ell", type=int, default=1)
    ch.add_argument("--k")
    ch.set_defaults(func=_cmd_char)

    m = sub.add_parser("mtc", help="ribbon-category checks")
    msub = m.add_subparsers(dest="op", required=True)
    h = msub.add_parser("hopf")
    h.add_argument("--data", required=True)
    h.add_argument("--J", required=True)
    h.add_argument("--X", required=True)
    h.add_argument("--s", type=int, default=1)
    h.add_argument("--P", help="default: every simple")
    h.set_defaults(func=_cmd_mtc)

    r = sub.add_parser("modrep", help="decomposition and diagram bookkeeping")
    r.add_argument("op", choices=["regroup", "fuse", "split", "check-ses"])
    r.add_argument("file", nargs="?")
    r.add_argument("--J", default="J")
    r.add_argument("--element", help="group element, comma separated")
    r.add_argument("--modulus", help="invariant factors, comma separated")
    r.add_argument("--relabel", help="JSON file mapping S to J x S")
    r.add_argument("--sub")
    r.add_argument("--mid")
    r.add_argument("--quo")
    r.set_defaults(func=_cmd_modrep)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "cmd", None) == "char" and args.op == "standard":
        args.kind = args.file
    from .cases import UnknownCase
    try:
        return args.func(args)
    except UnknownCase as exc:
        print(f"error: unknown case {exc.args[0]!r}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
