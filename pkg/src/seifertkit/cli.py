"""Command line entry point: ``seifertkit <command> ...``.

Reports are JSON on stdout.  Exit codes: 0 success, 1 a mathematical
check failed (the report carries the witness), 2 bad usage or payload,
3 internal error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import cohomology, engine, extensions, heisenberg, invariants, polyrep
from .cochains import CochainError, cohomologous, is_cocycle
from .groups import GroupError
from .poly import PolyError, polymap_from_json, polymap_to_json
from .serialize import (
    SchemaError, cochain1_to_json, element_to_json, frac, fvec,
    named_group, named_module, parse_action, parse_cocycle, parse_element, parse_extension, parse_group,
    parse_int, parse_list, parse_module, parse_presentation, require,
)

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


def _check_json(chk):
    out = {"ok": chk.ok}
    if not chk.ok:
        out["condition"] = chk.condition
        out["witness"] = _jsonable(chk.witness)
    return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return frac(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def _payload(args, required=True):
    src = getattr(args, "json", None)
    if src is None and required and not sys.stdin.isatty():
        src = "-"
    if src is None:
        if required:
            raise SchemaError("<payload>", "a JSON payload is required (--json FILE or stdin)")
        return None
    try:
        text = sys.stdin.read() if src == "-" else open(src, encoding="utf-8").read()
    except OSError as exc:
        raise SchemaError("<payload>", f"cannot read {src}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("<payload>", f"invalid JSON: {exc.msg} at line {exc.lineno}") from None


# ---------------------------------------------------------------------------
# commands

def cmd_group(args):
    payload = _payload(args, required=args.group is None)
    if args.group is not None:
        G = named_group(args.group, "--group")
    elif isinstance(payload, dict) and "Q" in payload:
        G = parse_group(payload["Q"], "Q")
    else:
        G = parse_group(payload, "")
    return {
        "input": payload if payload is not None else {"group": args.group},
        "order": G.order,
        "abelian": G.is_abelian(),
        "element_orders": [G.element_order(a) for a in G],
        "inverses": list(G.inv),
        "valid": True,
    }, True


def cmd_cocycle(args):
    payload = _payload(args)
    Q = parse_group(require(payload, "Q", ""), "Q")
    A = parse_module(require(payload, "module", ""), Q, "module")
    f = parse_cocycle(require(payload, "cocycle", ""), A, "cocycle")
    chk = is_cocycle(f)
    report = {"input": payload, "is_cocycle": _check_json(chk)}
    ok = chk.ok
    if ok and "compare" in payload:
        g = parse_cocycle(payload["compare"], A, "compare")
        chk2 = is_cocycle(g)
        if not chk2:
            report["compare"] = {"is_cocycle": _check_json(chk2)}
            return report, False
        lam = cohomologous(f, g)
        report["compare"] = {"cohomologous": lam is not None,
                             "witness": cochain1_to_json(lam) if lam is not None else None}
    return report, ok


def cmd_h2(args):
    if args.group is not None:
        Q = named_group(args.group, "--group")
        A = named_module(args.module, Q, "--module")
        echo = {"group": args.group, "module": args.module, "degree": args.degree}
    else:
        payload = _payload(args)
        Q = parse_group(require(payload, "Q", ""), "Q")
        A = parse_module(require(payload, "module", ""), Q, "module")
        echo = dict(payload, degree=args.degree)
    if getattr(A, "rank", 0) * (Q.order - 1) ** (args.degree + 1) > 20000:
        raise SchemaError("--degree", "cochain space too large for exact computation")
    factors = cohomology.invariant_factors(A, args.degree)
    key = "invariant_factors" if args.degree == 2 else f"h{args.degree}_invariant_factors"
    report = {"input": echo, key: factors, "order": cohomology.h_order(factors) or "infinite"}
    if args.degree == 2:
        report["h1_invariant_factors"] = cohomology.invariant_factors(A, 1)
    return report, True


def cmd_ext(args):
    payload = _payload(args)
    E = parse_extension(require(payload, "extension", ""), "extension")
    report = {"input": payload, "extension": E.to_json()}
    if E.module.is_finite or E.module.rank <= 2:
        w = extensions.associativity_witness(E.module, E.f, args.box)
        report["associative_on_box"] = w is None
    for key in ("elements", "products"):
        if key in payload:
            parse_list(payload[key], key)
    if "elements" in payload:
        out = []
        for i, x in enumerate(payload["elements"]):
            el = extensions.ExtElement(*parse_element(x, E.module, f"elements[{i}]"))
            out.append({"element": element_to_json(el),
                        "inverse": element_to_json(extensions.ext_inv(E, el)),
                        "order": extensions.torsion_order(E, el, args.bound) or f">{args.bound}"})
        report["elements"] = out
    if "products" in payload:
        out = []
        for i, pair in enumerate(payload["products"]):
            x, y = parse_list(pair, f"products[{i}]", 2)
            x = parse_element(x, E.module, f"products[{i}][0]")
            y = parse_element(y, E.module, f"products[{i}][1]")
            out.append(element_to_json(extensions.ext_mul(E, x, y)))
        report["products"] = out
    return report, report.get("associative_on_box", True)


def cmd_seifert(args):
    payload = _payload(args)
    E = parse_extension(require(payload, "extension", ""), "extension")
    rho = parse_action(require(payload, "action", ""), E.Q, "action")
    try:
        act = engine.construct_theta(E, rho, args.box)
    except engine.EngineError as exc:
        raise SchemaError("extension.module", str(exc)) from None
    fibers = engine.fiber_analysis(act)
    report = {
        "input": payload,
        "lambda": {str(a): [fvec(v) for v in act.lam_table(a)] for a in E.Q},
        "verification": act.report,
        "injective": _check_json(engine.injectivity_check(E.module, rho)),
        "fibers": [{"representative": f.representative, "orbit": list(f.orbit),
                    "stabilizer": list(f.stabilizer), "typical": f.typical,
                    "extension": f.extension.to_json()} for f in fibers.fibers],
    }
    return report, True


def _heis_point(text, path):
    parts = text.split(",")
    if len(parts) != 3:
        raise SchemaError(path, "expected 'z,x,y'")
    try:
        return heisenberg.heis(*(Fraction(p.strip()) for p in parts))
    except (ValueError, ZeroDivisionError):
        raise SchemaError(path, f"bad rational in {text!r}") from None


def cmd_heis(args):
    if args.op == "mul":
        g = _heis_point(args.g, "--g")
        h = _heis_point(args.h, "--h")
        prod = heisenberg.heis_mul(g, h)
        return {"input": {"g": fvec(g), "h": fvec(h)}, "product": fvec(prod),
                "matrix_agrees": heisenberg.from_matrix(heisenberg.matrix_mul(
                    heisenberg.to_matrix(g), heisenberg.to_matrix(h))) == prod}, True
    if args.p == 0:
        raise SchemaError("--p", "p must be nonzero")
    rng = random.Random(args.seed)
    pts = [heisenberg.random_point(rng) for _ in range(args.samples)]
    rel = heisenberg.lattice_relations(args.p)
    left = heisenberg.action_is_left_mult(args.p, pts)
    report = {"input": {"p": args.p, "samples": args.samples, "seed": args.seed},
              "relations": "pass" if rel else _check_json(rel),
              "left-mult": "pass" if left else _check_json(left)}
    return report, rel.ok and left.ok


def cmd_invariants(args):
    if args.enumerate:
        bounds = dict(max_genus=args.max_genus, max_cones=args.max_cones, max_order=args.max_order,
                      max_b=args.max_b, max_beta=args.max_beta)
        reports = [invariants.geometry_report(s).to_json() for s in invariants.enumerate_symbols(**bounds)]
        return {"input": bounds, "count": len(reports), "reports": reports}, True
    if args.symbol is None:
        raise SchemaError("--symbol", "give --symbol or --enumerate")
    try:
        sym = invariants.SeifertSymbol.parse(args.symbol)
    except invariants.SymbolError as exc:
        raise SchemaError("--symbol", str(exc)) from None
    rep = invariants.geometry_report(sym).to_json()
    rep["input"] = {"symbol": args.symbol}
    rep["abs_e_invariant"] = invariants.abs_euler_preserved(sym)
    return rep, True


def _parse_rep(obj, path):
    pres = parse_presentation(require(obj, "presentation", path), f"{path}.presentation")
    maps = require(obj, "maps", path)
    if not isinstance(maps, dict):
        raise SchemaError(f"{path}.maps", "expected an object keyed by generator")
    for g in pres.generators:
        if g not in maps:
            raise SchemaError(f"{path}.maps", f"unassigned generator {g!r}")
    try:
        parsed = {g: polymap_from_json(maps[g], f"{path}.maps.{g}") for g in pres.generators}
    except PolyError as exc:
        raise SchemaError(f"{path}.maps", str(exc)) from None
    dims = {m.dim for m in parsed.values()}
    if len(dims) > 1:
        raise SchemaError(f"{path}.maps", "maps have different dimensions")
    return polyrep.Representation(pres, tuple(parsed[g] for g in pres.generators))


def _rep_json(rep):
    return {"presentation": rep.presentation.to_json(), "maps": {g: polymap_to_json(m) for g, m in rep.items()}}


def _two_step(obj, path):
    if "heisenberg" in obj:
        p = parse_int(obj["heisenberg"], f"{path}.heisenberg", 1)
        return polyrep.heisenberg_data(p)
    k1 = parse_int(require(obj, "k1", path), f"{path}.k1", 1)
    k2 = parse_int(require(obj, "k2", path), f"{path}.k2", 1)
    try:
        return polyrep.TwoStepData(k1, k2, require(obj, "B", path), require(obj, "denom", path))
    except (ValueError, TypeError) as exc:
        raise SchemaError(path, str(exc)) from None


def cmd_polyrep(args):
    if args.op == "build":
        if args.heisenberg is not None:
            if args.heisenberg < 1:
                raise SchemaError("--heisenberg", "p must be >= 1")
            data, echo = polyrep.heisenberg_data(args.heisenberg), {"heisenberg": args.heisenberg}
        else:
            echo = _payload(args)
            data = _two_step(echo, "")
        try:
            rep = polyrep.construct_2step_rep(data)
        except ValueError as exc:
            return {"input": echo, "error": str(exc)}, False
        return {"input": echo, "representation": _rep_json(rep),
                "shape": "canonical", "relators": "pass"}, True
    payload = _payload(args)
    if args.op == "verify":
        if not isinstance(payload, dict):
            raise SchemaError("<payload>", "expected an object")
        rep = _parse_rep(payload.get("rep", payload), "rep" if "rep" in payload else "")
        chk = polyrep.verify_rep(rep)
        return {"input": payload, "verify": _check_json(chk)}, chk.ok
    rep1 = _parse_rep(require(payload, "rep1", ""), "rep1")
    rep2 = _parse_rep(require(payload, "rep2", ""), "rep2")
    if rep1.presentation.generators != rep2.presentation.generators:
        raise SchemaError("rep2.presentation", "generator lists differ")
    try:
        cand = polymap_from_json(require(payload, "cand", ""), "cand")
    except PolyError as exc:
        raise SchemaError("cand", str(exc)) from None
    if not cand.has_inverse:
        raise SchemaError("cand.inverse", "the candidate needs a stored inverse")
    chk = polyrep.conjugacy_verify(rep1, rep2, cand)
    return {"input": payload, "conjugate": _check_json(chk)}, chk.ok


# ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="FILE", help="read the payload from FILE ('-' for stdin)")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--box", type=int, default=2, help="module box radius for exhaustive checks")
    common.add_argument("--samples", type=int, default=100, help="number of random sample points")

    p = argparse.ArgumentParser(prog="seifertkit", description="Group extensions, Seifert constructions and invariants.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("group", parents=[common], help="validate a multiplication table")
    s.add_argument("--group", help="named group, e.g. cyclic:6, dihedral:3, symmetric:3, klein")
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("cocycle", parents=[common], help="check a 2-cocycle, optionally compare classes")
    s.set_defaults(func=cmd_cocycle)

    s = sub.add_parser("h2", parents=[common], help="invariant factors of group cohomology")
    s.add_argument("--group", help="named group, e.g. cyclic:4")
    s.add_argument("--module", default="trivial-Z", help="trivial-Z, sign-Z or trivial-Z/m")
    s.add_argument("--degree", type=int, default=2, choices=range(1, 5))
    s.set_defaults(func=cmd_h2)

    s = sub.add_parser("ext", parents=[common], help="extension arithmetic")
    s.add_argument("--bound", type=int, default=64, help="torsion order search bound")
    s.set_defaults(func=cmd_ext)

    s = sub.add_parser("seifert", parents=[common], help="Seifert construction")
    s.add_argument("op", choices=["construct"])
    s.set_defaults(func=cmd_seifert)

    s = sub.add_parser("heis", parents=[common], help="Heisenberg lattice checks")
    s.add_argument("op", choices=["verify", "mul"])
    s.add_argument("--p", type=int, default=1)
    s.add_argument("--g", default="0,0,0", help="first factor 'z,x,y' for mul")
    s.add_argument("--h", default="0,0,0", help="second factor 'z,x,y' for mul")
    s.set_defaults(func=cmd_heis)

    s = sub.add_parser("invariants", parents=[common], help="Seifert symbol invariants")
    s.add_argument("--symbol", help="'g;b;(a1,b1),(a2,b2),...'")
    s.add_argument("--enumerate", action="store_true", help="report every symbol within the bounds")
    s.add_argument("--max-genus", type=int, default=1)
    s.add_argument("--max-cones", type=int, default=2)
    s.add_argument("--max-order", type=int, default=3)
    s.add_argument("--max-b", type=int, default=1)
    s.add_argument("--max-beta", type=int, default=1)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("polyrep", parents=[common], help="polynomial representations")
    s.add_argument("op", choices=["build", "verify", "conjcheck"])
    s.add_argument("--heisenberg", type=int, metavar="P", help="build the Heisenberg representation for P")
    s.set_defaults(func=cmd_polyrep)
    return p


def _emit(obj, stream=None):
    (stream or sys.stdout).write(json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        report, ok = args.func(args)
    except SchemaError as exc:
        _emit({"error": str(exc), "path": exc.path}, sys.stderr)
        return EXIT_USAGE
    except (GroupError, extensions.ExtensionError, CochainError, PolyError, invariants.SymbolError) as exc:
        _emit({"ok": False, "error": str(exc), "witness": _jsonable(getattr(exc, "witness", None))})
        return EXIT_CHECK
    except Exception as exc:  # noqa: BLE001
        _emit({"error": f"internal error: {type(exc).__name__}: {exc}"}, sys.stderr)
        return EXIT_INTERNAL
    _emit(report)
    return EXIT_OK if ok else EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
