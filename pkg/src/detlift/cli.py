"""Command-line front end.

Exit status: 0 on success, 1 on domain errors, 2 on malformed input.  Errors
are reported as one JSON line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import bezout, finite
from .census import budget_from_env, run_census
from .construct import Role, check_identities, lift_matrix, linear_form, phi_eval, quad_det, simple_form
from .errors import DetliftError, ParseError, UnsupportedRing
from .mat import rows_mul
from .rings import IntegerRing, PolyRing, Ring, format_descriptor
from .ringspec import matrix_json, parse_matrix, parse_matrix2, parse_quad, parse_ring

UNSUPPORTED = "unsupported ring for this subcommand"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would print usage and exit 2
        raise UsageError(message)


def _euclidean(ring: Ring) -> bool:
    return isinstance(ring, (IntegerRing, PolyRing))


def _rows(rows) -> list[list[str]]:
    return [[str(e) for e in r] for r in rows]


def _quad(q) -> list[str]:
    return [str(e) for e in q]


# -- subcommands -------------------------------------------------------------------


def cmd_classify(args) -> dict:
    ring = parse_ring(args.ring)
    A = parse_matrix2(args.matrix, ring)
    if not ring.is_finite:
        raise UnsupportedRing(UNSUPPORTED)
    out = finite.classify(A).to_dict()
    out["ring"] = format_descriptor(ring.descriptor)
    return out


def cmd_census(args) -> dict:
    ring = parse_ring(args.ring)
    if not ring.is_finite:
        raise UnsupportedRing(UNSUPPORTED)
    bound = args.max_card if args.max_card is not None else budget_from_env()
    report = run_census(ring, max_cardinality=bound)
    print(f"census {report.ring}: {report.elapsed:.2f}s", file=sys.stderr)
    return {"_report": report}


def cmd_lift(args) -> dict:
    ring = parse_ring(args.ring)
    if not isinstance(ring, IntegerRing):
        raise UnsupportedRing(UNSUPPORTED)
    A = parse_matrix2(args.matrix, ring)
    h = bezout.hensel_det_lift(A, args.t, args.iters)
    return {
        "A": matrix_json(A),
        "B": matrix_json(h.B),
        "t": h.t,
        "iterations": h.iterations,
        "precision": h.modulus,
        "det_mod": h.B.det().value % h.modulus,
        "ladder": [matrix_json(B) for B in h.ladder],
    }


def cmd_snf(args) -> dict:
    ring = parse_ring(args.ring)
    if not _euclidean(ring):
        raise UnsupportedRing(UNSUPPORTED)
    M = parse_matrix(args.matrix, ring)
    r = bezout.smith_normal_form(M)
    assert rows_mul(rows_mul(r.U, r.D), r.V) == M
    return {"U": _rows(r.U), "D": _rows(r.D), "V": _rows(r.V), "diagonal": [str(e) for e in r.diagonal]}


def cmd_extend(args) -> dict:
    ring = parse_ring(args.ring)
    A = parse_matrix2(args.matrix, ring)
    if _euclidean(ring):
        w = bezout.simple_extension_witness(A)
        method = "smith-normal-form"
    elif ring.is_finite:
        w = finite.decide_simply_extendable(A) or finite.decide_extendable(A)
        method = "exhaustive"
    else:
        raise UnsupportedRing(UNSUPPORTED)
    out = {"matrix": matrix_json(A), "method": method, "extendable": w is not None}
    if w is not None:
        out["witness"] = w.to_dict()
        out["extension"] = _rows(w.extension().rows)
        out["simple"] = w.role is Role.SIMPLE_EXTENSION
    return out


def cmd_detlift(args) -> dict:
    ring = parse_ring(args.ring)
    A = parse_matrix2(args.matrix, ring)
    if _euclidean(ring):
        r = bezout.det_lift_witness(A)
        w, B, method = r.witness, r.lift, "smith-normal-form"
    elif ring.is_finite:
        w = finite.decide_det_liftable(A)
        B = None if w is None else lift_matrix(A, w.quad)
        method = "exhaustive"
    else:
        raise UnsupportedRing(UNSUPPORTED)
    out = {"matrix": matrix_json(A), "method": method, "det_liftable": w is not None}
    if w is not None:
        out["witness"] = w.to_dict()
        out["B"] = matrix_json(B)
        out["det_B"] = str(B.det())
    return out


def cmd_nonfull(args) -> dict:
    ring = parse_ring(args.ring)
    M = parse_matrix2(args.matrix, ring)
    if not _euclidean(ring):
        raise UnsupportedRing(UNSUPPORTED)
    f = bezout.nonfull_factor(M)
    return {"matrix": matrix_json(M), "col": _quad(f.col), "row": _quad(f.row)}


def cmd_verify(args) -> dict:
    ring = parse_ring(args.ring)
    if args.matrix is None:
        if args.quad is not None:
            raise UsageError("--quad needs --matrix")
        report = cmd_census(args)["_report"]
        return {
            "ring": report.ring,
            "all_pass": report.all_pass,
            "verdicts": [v.to_dict() for v in report.verdicts],
        }
    A = parse_matrix2(args.matrix, ring)
    if args.quad is None:
        raise UsageError("--matrix needs --quad")
    q = parse_quad(args.quad, ring)
    rep = check_identities(A, q)
    return {
        "matrix": matrix_json(A),
        "quad": _quad(q),
        "identities": rep.to_dict(),
        "identities_pass": rep.ok,
        "phi": str(phi_eval(A, q)),
        "simple_form": str(simple_form(A, q)),
        "linear_form": str(linear_form(A, q)),
        "quad_det": str(quad_det(q)),
        "is_simple_extension": simple_form(A, q) == 1,
        "is_det_lift": linear_form(A, q) == 1 and quad_det(q).is_zero,
        "is_phi_root": phi_eval(A, q).is_zero,
    }


COMMANDS = {
    "classify": cmd_classify,
    "census": cmd_census,
    "lift": cmd_lift,
    "snf": cmd_snf,
    "extend": cmd_extend,
    "detlift": cmd_detlift,
    "nonfull": cmd_nonfull,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="detlift", description="Completion and determinant lifting of 2x2 unimodular matrices.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, ring_default=None, matrix=True, matrix_required=True):
        sp.add_argument("--ring", default=ring_default, required=ring_default is None, help="ring, e.g. 'Z/4'")
        if matrix:
            sp.add_argument("--matrix", required=matrix_required, help="matrix literal, e.g. '[[1,0],[0,2]]'")
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
        sp.add_argument("--out", help="write the result here instead of stdout")

    common(sub.add_parser("classify", help="run every decider on one matrix over a finite ring"))
    sp = sub.add_parser("census", help="classify all unimodular matrices of a finite ring")
    common(sp, matrix=False)
    sp.add_argument("--max-card", type=int, help="largest ring cardinality accepted")
    sp = sub.add_parser("lift", help="Hensel determinant lift over Z")
    common(sp, ring_default="Z")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--iters", type=int, default=1)
    common(sub.add_parser("snf", help="Smith normal form over Z or GF(p)[x]"), ring_default="Z")
    common(sub.add_parser("extend", help="3x3 extension of determinant 1"))
    common(sub.add_parser("detlift", help="determinant-lift witness and lifted matrix"))
    common(sub.add_parser("nonfull", help="column-times-row factorization of a singular matrix"))
    sp = sub.add_parser("verify", help="check identities for a quad, or the theorem verdicts of a ring")
    common(sp, matrix_required=False)
    sp.add_argument("--quad", help="quad literal '[x,y,z,w]'")
    sp.add_argument("--max-card", type=int, help="largest ring cardinality accepted")
    return p


# -- rendering -------------------------------------------------------------------


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for k in sorted(obj):
        v = obj[k]
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(_text(item, indent + 1))
                lines.append(f"{pad}  --")
        else:
            lines.append(f"{pad}{k}: {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines)


def render(command: str, result: dict, fmt: str) -> str:
    report = result.get("_report")
    if report is not None:
        if fmt == "csv":
            return report.to_csv()
        if fmt == "text":
            return report.to_text()
        result = report.to_dict()
    elif fmt == "csv":
        if command != "classify":
            raise UsageError(f"csv output is not available for {command}")
        keys = finite.Classification.WITNESS_FIELDS
        lines = ["property,present"] + [f"{k},{str(result[k] is not None).lower()}" for k in keys]
        return "\n".join(lines) + "\n"
    if fmt == "text":
        return _text(result) + "\n"
    return json.dumps(result, sort_keys=True, indent=2) + "\n"


def _fail(kind: str, message: str, code: int, offset: Optional[int] = None) -> int:
    err = {"error": kind, "message": message, "exit": code}
    if offset is not None:
        err["offset"] = offset
    print(json.dumps(err, sort_keys=True), file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        result = COMMANDS[args.command](args)
        text = render(args.command, result, args.format)
    except UsageError as e:
        return _fail("UsageError", str(e), 2)
    except ParseError as e:
        return _fail("ParseError", str(e), 2, e.offset)
    except DetliftError as e:
        msg = str(e)
        if isinstance(e, UnsupportedRing) and not msg:
            msg = UNSUPPORTED
        return _fail(e.kind, msg, 1)
    except (ValueError, ArithmeticError, TypeError, OverflowError, RecursionError) as e:
        return _fail(type(e).__name__, str(e), 1)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
