"""Command-line front end.

One subcommand per scenario; text or JSON reports; exit codes:
0 all assertions pass, 1 an assertion failed, 2 an undecided local
verdict, 3 usage error.  Identical argv and seed give byte-identical
JSON.  Negative numbers go after a ``--`` sentinel.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction

from . import descent, pepin
from .arith import jacobi_symbol, octic_symbol, quartic_symbol
from .localsolve import (
    UNDECIDED,
    TorsorSpec,
    UndecidedError,
    everywhere_locally_solvable,
)
from .quadforms import QuadForm, class_group, ray_class_group

__all__ = ["main", "run_command"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 3 instead of argparse's 2
        raise _UsageError(message)


def _jsonable(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((_jsonable(v) for v in obj), key=str)
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    return str(obj)


def _parse_ring_element(text: str) -> int | tuple[int, int]:
    if "," in text:
        x, y = text.split(",", 1)
        return (int(x), int(y))
    return int(text)


def build_parser() -> _Parser:
    parser = _Parser(prog="hassefail", description=__doc__)
    parser.add_argument("--pmax", type=int, default=10000, help="prime scan bound")
    parser.add_argument("--height", type=int, default=200, help="point search bound")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    parser.add_argument("--trials", type=int, default=1000, help="randomized check count")
    parser.add_argument(
        "--output", choices=("text", "json"), default="text", help="report format"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classgroup", help="form class group of a discriminant")
    p.add_argument("disc", type=int)

    p = sub.add_parser("rayclass", help="ray class group of Q(i) or Q(sqrt(-2))")
    p.add_argument("field_disc", type=int, choices=(-4, -8))
    p.add_argument("modulus", type=_parse_ring_element, help="integer or x,y pair")

    p = sub.add_parser("symbol", help="residue symbol evaluation")
    p.add_argument("kind", choices=("jacobi", "quartic", "octic"))
    p.add_argument("a", type=int)
    p.add_argument("p", type=int)

    p = sub.add_parser("local", help="local solvability of a quartic torsor")
    p.add_argument("b1", type=int)
    p.add_argument("a", type=int)
    p.add_argument("b2", type=int)

    p = sub.add_parser("descent", help="first 2-descent on y^2 = x(x^2 + ax + b)")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)

    p = sub.add_parser("family", help="scan a prime family p*x^4 - m*y^4 = z^2")
    p.add_argument("coeffs", type=int, nargs="*", metavar="ALPHA BETA GAMMA")
    p.add_argument("--raw-form", type=int, nargs=3, metavar=("A", "B", "C"))

    p = sub.add_parser("prop4", help="torsor symbol-condition table rows")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)

    p = sub.add_parser("theorem6", help="descent plus quartic-symbol obstruction")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)

    p = sub.add_parser("case", help="historic case study")
    p.add_argument("case_id", choices=pepin.HISTORIC_CASES)

    sub.add_parser("flt7", help="exponent-7 Fermat verification stages")
    return parser


def _cmd_classgroup(args) -> tuple[dict, list]:
    cg = class_group(args.disc)
    results = {
        "disc": cg.disc,
        "order": cg.order,
        "invariant_factors": list(cg.invariant_factors),
        "cyclic": cg.is_cyclic(),
        "classes": [(f.a, f.b, f.c) for f in cg.classes],
    }
    return results, []


def _cmd_rayclass(args) -> tuple[dict, list]:
    rcg = ray_class_group(args.field_disc, args.modulus)
    results = {
        "field_disc": rcg.field_disc,
        "modulus": list(rcg.modulus),
        "order": rcg.order,
        "invariant_factors": list(rcg.invariant_factors),
    }
    return results, []


def _cmd_symbol(args) -> tuple[dict, list]:
    fn = {"jacobi": jacobi_symbol, "quartic": quartic_symbol, "octic": octic_symbol}[
        args.kind
    ]
    return {"kind": args.kind, "a": args.a, "p": args.p, "value": fn(args.a, args.p)}, []


def _cmd_local(args) -> tuple[dict, list]:
    spec = TorsorSpec(args.b1, args.a, args.b2)
    status, reports = everywhere_locally_solvable(spec)
    if status == UNDECIDED:
        place = next(r.place for r in reports if r.solvable == UNDECIDED)
        raise UndecidedError(spec, place)
    results = {
        "torsor": [args.b1, args.a, args.b2],
        "everywhere_locally_solvable": status,
        "places": [_jsonable(r) for r in reports],
    }
    return results, []


def _cmd_descent(args) -> tuple[dict, list]:
    report = descent.full_descent(args.a, args.b, args.height)
    results = {
        "curve": [args.a, args.b],
        "isogenous_curve": [report.pair.a_hat, report.pair.b_hat],
        "selmer_phi": sorted(report.selmer_phi.elements),
        "selmer_psi": sorted(report.selmer_psi.elements),
        "found_phi": sorted(report.found_phi),
        "found_psi": sorted(report.found_psi),
        "rank_lower": report.rank_lower,
        "rank_upper": report.rank_upper,
        "sha_candidates": sorted(report.sha_candidates),
        "points": {f"{iso}:{b1}": _jsonable(pt) for (iso, b1), pt in report.points.items()},
    }
    assertions = [
        {
            "claim": "every torsor with a point is everywhere locally solvable",
            "pass": report.found_phi <= report.selmer_phi.elements
            and report.found_psi <= report.selmer_psi.elements,
        },
        {"claim": "rank_lower <= rank_upper", "pass": report.rank_lower <= report.rank_upper},
    ]
    return results, assertions


def _cmd_family(args) -> tuple[dict, list]:
    if args.raw_form:
        spec = pepin.FamilySpec.from_form(QuadForm(*args.raw_form))
    elif len(args.coeffs) == 3:
        spec = pepin.FamilySpec.from_coefficients(*args.coeffs)
    else:
        raise _UsageError("family needs ALPHA BETA GAMMA or --raw-form A B C")
    reports = pepin.family_scan(spec, args.pmax, args.height)
    results = {
        "m": spec.m,
        "form": [spec.form.a, spec.form.b, spec.form.c],
        "conic_z_convention": "alpha^2*a + beta*b",
        "primes_scanned": len(reports),
        "reports": [_jsonable(r) for r in reports],
    }
    assertions = [
        {
            "claim": "all local verdicts decided",
            "pass": all(r.local_status != UNDECIDED for r in reports),
        },
        {
            "claim": "every conic point satisfies p*x^2 - m*y^2 = z^2",
            "pass": all(
                r.conic_point is None
                or r.p * r.conic_point[0] ** 2 - spec.m * r.conic_point[1] ** 2
                == r.conic_point[2] ** 2
                for r in reports
            ),
        },
    ]
    return results, assertions


def _cmd_prop4(args) -> tuple[dict, list]:
    rows = pepin.prop4_verify(args.p, args.q, args.height)
    results = {"p": args.p, "q": args.q, "rows": [_jsonable(r) for r in rows]}
    assertions = [
        {
            "claim": f"torsor {row.b1}: point implies {row.condition} = +1",
            "pass": row.consistent,
        }
        for row in rows
    ]
    return results, assertions


def _cmd_theorem6(args) -> tuple[dict, list]:
    rep = pepin.theorem6_report(args.p, args.q, args.height)
    results = _jsonable(rep)
    assertions = [
        {
            "claim": "a point on N^2 = p*M^4 - 4q^2*e^4 forces (2/p)_4 = (q/p)_4 = +1",
            "pass": rep.consistent,
        },
        {
            "claim": "rank_lower <= rank_upper",
            "pass": rep.descent.rank_lower <= rep.descent.rank_upper,
        },
    ]
    return results, assertions


_CASE_ASSERTIONS = {
    "lind_reichardt": [
        ("everywhere locally solvable", lambda r: r["locally_solvable"] is True),
        ("no rational point up to the bound", lambda r: r["point"] is None),
        ("odd fourth powers are 1 mod 16", lambda r: r["fourth_power_fact"]),
        ("any solution forces 4 | z", lambda r: r["solution_forces_4_divides_z"]),
    ],
    "euler_cube": [
        ("integral points are the five known ones", lambda r: r["points_match"]),
        ("rank upper bound is 0", lambda r: r["rank_upper"] == 0),
        ("no leftover locally solvable classes", lambda r: not r["sha_candidates"]),
    ],
    "pepin32": [
        ("no global points in the family", lambda r: r["no_global_points"]),
        (
            "ray class group mod 4 of Q(sqrt(-2)) is cyclic of order 4",
            lambda r: r["ray_invariant_factors"] == [4],
        ),
    ],
    "pepin2_consequence": [
        (
            "a point on p*x^4 - 2*y^4 = z^2 forces p = A^2 + 32*B^2",
            lambda r: r["implication_holds"],
        ),
    ],
}


def _cmd_case(args) -> tuple[dict, list]:
    report = pepin.historic_case(args.case_id, args.height)
    assertions = [
        {"claim": claim, "pass": bool(check(report))}
        for claim, check in _CASE_ASSERTIONS[args.case_id]
    ]
    return _jsonable(report), assertions


def _cmd_flt7(args) -> tuple[dict, list]:
    try:
        report = pepin.flt7_verify(args.trials, args.height, args.seed)
    except pepin.VerificationError as exc:
        return {"error": str(exc)}, [{"claim": str(exc), "pass": False}]
    stages = [
        "newton3_identity",
        "map_chain",
        "torsion",
        "rank_upper",
        "quartic_no_point",
        "flt7_factor_identity",
    ]
    assertions = [{"claim": f"stage {s}", "pass": s in report} for s in stages]
    return report, assertions


_COMMANDS = {
    "classgroup": _cmd_classgroup,
    "rayclass": _cmd_rayclass,
    "symbol": _cmd_symbol,
    "local": _cmd_local,
    "descent": _cmd_descent,
    "family": _cmd_family,
    "prop4": _cmd_prop4,
    "theorem6": _cmd_theorem6,
    "case": _cmd_case,
    "flt7": _cmd_flt7,
}


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
        return
    print(f"command: {payload['command']}")
    for key, value in payload["results"].items():
        if isinstance(value, list) and len(value) > 8:
            print(f"  {key}: [{len(value)} entries]")
        else:
            print(f"  {key}: {value}")
    for rec in payload["assertions"]:
        mark = "PASS" if rec["pass"] else "FAIL"
        print(f"  [{mark}] {rec['claim']}")


def run_command(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        results, assertions = _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 3
    except UndecidedError as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return 2
    except (ValueError, NotImplementedError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 3
    payload = {
        "command": args.command,
        "config": {
            "pmax": args.pmax,
            "height": args.height,
            "seed": args.seed,
            "trials": args.trials,
            "output": args.output,
        },
        "results": _jsonable(results),
        "assertions": assertions,
    }
    _emit(payload, args.output)
    return 0 if all(rec["pass"] for rec in assertions) else 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
