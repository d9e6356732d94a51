"""Command-line front end.

Exit codes: 0 success, 1 refusal or failed certificate, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bcut import (
    BSet,
    BSetError,
    Refusal,
    augmented_cones,
    b_cut,
    choose_compatible,
    choose_consistent,
    classify_cones,
    detect_b1,
    general_bset,
    slope_classes,
)
from .blowup import (
    TransformError,
    cox_presentation,
    numerical_data,
    proper_transform,
    relative_canonical,
    verify_desingularization,
)
from .fan import normal_fan
from .linalg import fmt_q
from .nondegeneracy import OracleConfig, OracleError, nondegeneracy_check
from .polyhedron import PolyhedronError, newton_polyhedron
from .polynomial import PolynomialError, parse_polynomial
from .zeta import (
    ZetaError,
    actual_poles,
    assemble_topological_zeta,
    candidate_poles,
    reduced_candidate_poles,
    removable_slope_classes,
)


class InputError(Exception):
    pass


class Refused(Exception):
    def __init__(self, payload):
        super().__init__(payload.get("reason", "refused"))
        self.payload = payload


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--poly", help="polynomial in x1..xn, e.g. 'x1^2+x2*x3'")
    common.add_argument("--n", type=int, help="number of variables")
    common.add_argument("--drop", help="'auto', or ';'-separated facet normals (e.g. '4,1,5;1,0,1') or facet indices")
    common.add_argument("--mode", choices=["consistent", "compatible"], default="consistent")
    common.add_argument("--general", action="store_true", help="accept any positive-level facets as drop set")
    common.add_argument("--prime", type=int, action="append", help="prime for the finite-field oracle (repeatable)")
    common.add_argument("--budget", type=int, default=10**7, help="torus points per face and prime")
    common.add_argument("--seed", type=int, default=None, help="fixes the order in which primes are tried")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--strata", help="JSON file with strata for ztop")

    parser = argparse.ArgumentParser(prog="newtoncut", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("analyze", "Newton polyhedron, normal fan and facet table"),
        ("b1", "B1 certificates and drop-set decisions"),
        ("bcut", "the cut polyhedron, its fan and the old/new cone table"),
        ("blowup", "Cox presentation, proper transform and canonical multiplicities"),
        ("verify", "SNC certificate above the origin"),
        ("poles", "candidate pole sets and removable slopes"),
        ("ztop", "topological zeta function from strata"),
    ]:
        sub.add_parser(name, parents=[common], help=help_)
    return parser


def _load(args):
    if args.poly is None or args.n is None:
        raise InputError("--poly and --n are required")
    f = parse_polynomial(args.poly, args.n)
    P = newton_polyhedron(f.support, f.n)
    return f, P


def _config(args) -> OracleConfig:
    primes = tuple(args.prime) if args.prime else (101, 103, 107)
    return OracleConfig(primes=primes, budget=args.budget, seed=args.seed)


def _parse_drop(P, spec: str) -> list[int]:
    out = []
    for item in (x.strip() for x in spec.split(";")):
        if not item:
            continue
        item = item.strip("()[] ")
        if "," in item:
            try:
                u = tuple(int(x) for x in item.split(","))
                out.append(P.facet_index(u))
            except (ValueError, KeyError):
                raise InputError(f"'{item}' is not a facet normal of the Newton polyhedron") from None
        else:
            try:
                k = int(item)
            except ValueError:
                raise InputError(f"cannot parse drop item '{item}'") from None
            if not 0 <= k < len(P.facets):
                raise InputError(f"facet index {k} out of range")
            out.append(k)
    return out


def _resolve_drop(args, P) -> tuple[BSet | Refusal, dict]:
    info: dict = {}
    spec = args.drop
    if spec is None or spec.strip().lower() in ("", "none"):
        ids: list[int] = []
    elif spec.strip().lower() == "auto":
        removable = removable_slope_classes(P, "consistent")
        ids = sorted({t for B in removable.values() for t in B.facets})
        info["auto"] = {"removableSlopes": [fmt_q(s) for s in removable], "facets": ids}
    else:
        ids = _parse_drop(P, spec)
    try:
        if args.general:
            B = general_bset(P, ids)
        elif args.mode == "compatible":
            B = choose_compatible(P, ids)
        else:
            B = choose_consistent(P, ids)
    except BSetError as exc:
        raise InputError(str(exc)) from None
    return B, info


def _require(B):
    if isinstance(B, Refusal):
        raise Refused(B.to_json())
    return B


def _facet_table(P):
    rows = []
    for t, f in enumerate(P.facets):
        rows.append({
            "facet": t,
            "u": list(f.u),
            "N": fmt_q(f.N),
            "datum": [fmt_q(f.N), f.norm],
            "slope": None if f.slope is None else fmt_q(f.slope),
            "noncompactDirs": sorted(i + 1 for i in f.noncompact),
        })
    return rows


def cmd_analyze(args):
    f, P = _load(args)
    fan = normal_fan(P)
    verdicts = nondegeneracy_check(f, _config(args), P)
    return 0, {
        "polynomial": f.to_text(),
        "polyhedron": P.to_json(),
        "fan": fan.to_json(),
        "facetTable": _facet_table(P),
        "nondegeneracy": [v.to_json() for v in verdicts],
    }


def cmd_b1(args):
    f, P = _load(args)
    certs = detect_b1(P)
    out = {
        "certificates": {str(t): [c.to_json() for c in cs] for t, cs in certs.items()},
        "slopeClasses": [],
    }
    for s, members in slope_classes(P).items():
        entry = {"slope": fmt_q(s), "facets": list(members)}
        if all(certs[t] for t in members):
            for name, chooser in (("consistent", choose_consistent), ("compatible", choose_compatible)):
                entry[name] = chooser(P, members).to_json()
        out["slopeClasses"].append(entry)
    code = 0
    if args.drop is not None:
        B, info = _resolve_drop(args, P)
        out["drop"] = dict(B.to_json(), **info)
        code = 1 if isinstance(B, Refusal) else 0
    return code, out


def cmd_bcut(args):
    f, P = _load(args)
    B, info = _resolve_drop(args, P)
    B = _require(B)
    cut = b_cut(P, B)
    fan = normal_fan(P)
    dfan = normal_fan(cut.dagger)
    classes = classify_cones(dfan, P, fan, B)
    table = [classes[S].to_json(dfan) for S in augmented_cones(dfan)]
    return 0, dict(
        {"bset": B.to_json(), "cut": cut.to_json(), "fan": dfan.to_json(), "cones": table}, **info
    )


def cmd_blowup(args):
    f, P = _load(args)
    B, info = _resolve_drop(args, P)
    B = _require(B)
    cut = b_cut(P, B)
    dfan = normal_fan(cut.dagger)
    pres = cox_presentation(dfan)
    fprime = proper_transform(f, dfan, P)
    canon = relative_canonical(dfan)
    return 0, dict({
        "bset": B.to_json(),
        "presentation": pres.to_json(),
        "properTransform": fprime.to_json(),
        "relativeCanonical": [{"ray": list(u), "multiplicity": m, "nu": nu} for u, (m, nu) in canon.items()],
        "numericalData": [list(x) for x in numerical_data(dfan, f, P)],
    }, **info)


def cmd_verify(args):
    f, P = _load(args)
    B, info = _resolve_drop(args, P)
    B = _require(B)
    cert = verify_desingularization(f, B, _config(args))
    out = dict(cert.to_json(), **info)
    out["reducedPoles"] = [fmt_q(x) for x in reduced_candidate_poles(P, B)]
    return (0 if cert.passed else 1), out


def cmd_poles(args):
    f, P = _load(args)
    out = {"candidatePoles": candidate_poles(P).to_json()}
    removable = removable_slope_classes(P, "consistent")
    out["removableSlopes"] = {fmt_q(s): B.to_json() for s, B in removable.items()}
    if P.n == 3:
        comp = removable_slope_classes(P, "compatible-n3")
        out["removableSlopesCompatible"] = {fmt_q(s): B.to_json() for s, B in comp.items()}
    code = 0
    if args.drop is not None:
        B, info = _resolve_drop(args, P)
        out.update(info)
        if isinstance(B, Refusal):
            out["reducedPoles"] = B.to_json()
            code = 1
        else:
            out["reducedPoles"] = reduced_candidate_poles(P, B).to_json()
    return code, out


def cmd_ztop(args):
    if not args.strata:
        raise InputError("--strata is required")
    try:
        with open(args.strata) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read strata: {exc}") from None
    if not isinstance(data, list):
        raise InputError("strata file must hold a JSON list")
    try:
        Z = assemble_topological_zeta(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed stratum: {exc}") from None
    poles = actual_poles(Z)
    return 0, {"zeta": Z.to_json(), "text": Z.to_text(), "poles": poles.to_json()}


COMMANDS = {
    "analyze": cmd_analyze,
    "b1": cmd_b1,
    "bcut": cmd_bcut,
    "blowup": cmd_blowup,
    "verify": cmd_verify,
    "poles": cmd_poles,
    "ztop": cmd_ztop,
}


def _text(command: str, payload: dict) -> str:
    lines = []
    if command == "analyze":
        lines.append(f"f = {payload['polynomial']}")
        for row in payload["facetTable"]:
            slope = row["slope"] or "-"
            lines.append(f"facet {row['facet']}: u={tuple(row['u'])} N={row['N']} slope={slope}")
    elif command == "ztop":
        lines.append(payload["text"])
        lines.append("poles: {" + ", ".join(payload["poles"]["poles"]) + "}")
    elif command == "verify":
        lines.append("PASS" if payload["pass"] else "FAIL")
        lines.append(f"f' = {payload['fPrime']}")
        for o in payload["orbits"]:
            cone = ",".join(str(tuple(u)) for u in o["cone"])
            lines.append(f"  [{o['case']}] {o['class']:3} {o['verdict']:4} {{{cone}}}")
        lines.append("numerical data: " + ", ".join(f"({a},{b})" for a, b in payload["numericalData"]))
        lines.append("reduced poles: {" + ", ".join(payload["reducedPoles"]) + "}")
    elif command == "poles":
        lines.append("candidate poles: {" + ", ".join(payload["candidatePoles"]["poles"]) + "}")
        lines.append("removable slopes: {" + ", ".join(payload["removableSlopes"]) + "}")
        if "reducedPoles" in payload and "poles" in payload["reducedPoles"]:
            lines.append("reduced poles: {" + ", ".join(payload["reducedPoles"]["poles"]) + "}")
    elif command == "blowup":
        pres = payload["presentation"]
        lines.extend(pres["pullback"])
        lines.append("irrelevant ideal: (" + ", ".join(pres["irrelevantMinimal"]) + ")")
        lines.append(f"f' = {payload['properTransform']['text']}")
    else:
        lines.append(json.dumps(payload, indent=2))
    return "\n".join(lines)


def run(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    try:
        code, payload = COMMANDS[args.command](args)
    except Refused as exc:
        print(json.dumps(exc.payload, indent=2))
        return 1
    except (InputError, PolynomialError, PolyhedronError, OracleError, ZetaError, TransformError, BSetError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(_text(args.command, payload))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
