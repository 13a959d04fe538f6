"""Command-line front end: JSON in, JSON out.

    troparith COMMAND --input FILE [--output FILE] [--epsilon EPS] [--box N]

Every run prints one envelope {"status", "payload", "diagnostics"} with
sorted keys, so identical inputs give byte-identical outputs. Exit status is
0 on success, 2 for invalid input to an operation, 3 for numerical failure,
64 for usage errors and 65 for malformed input documents.
"""
import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from itertools import product

import jsonschema

from . import codec, schemas
from .archtheta import DEFAULT_EPSILON, norm_theta, theta
from .delvor import (delaunay_cell, delaunay_complex, mdv_by_inequalities,
                     mdv_by_minimizers, voronoi_cell)
from .errors import SchemaViolation, TropArithError, UnknownCommand
from .heights import assemble_height
from .quadform import Covector, covector_in_image
from .sampling import random_pair
from .troptheta import (cocycle_check_c, cocycle_check_pl, theta_eq, theta_inv,
                        theta_pl, verify_admissibility)

EXIT_CODES = {"ok": 0, "validation": 2, "numerical": 3, "usage": 64, "schema": 65}


class UsageError(TropArithError):
    category = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _theta_payload(tv):
    return {"value": codec.rational(tv.value), "witnesses": [list(w) for w in tv.witnesses],
            "kind": tv.kind}


def _form_and_covector(doc):
    return codec.parse_quadchar(doc["form"]), codec.parse_covector(doc["covector"])


def cmd_theta_pl(doc, args):
    return _theta_payload(theta_pl(*_form_and_covector(doc)))


def cmd_theta_eq(doc, args):
    return _theta_payload(theta_eq(*_form_and_covector(doc)))


def cmd_theta_inv(doc, args):
    q = codec.parse_quadchar(doc["form"])
    if args.grid is None:
        if "covector" not in doc:
            raise SchemaViolation("theta-inv needs a covector unless --grid is given")
        return _theta_payload(theta_inv(q, codec.parse_covector(doc["covector"])))
    return theta_inv_grid(q, args.grid, doc.get("covector"))


def theta_inv_grid(q, n, offset=None):
    """CSV of theta_inv at l = offset + B t, t on the grid {0, 1/n, ..., 1}^g."""
    if n < 1:
        raise UsageError("--grid must be a positive integer")
    base = codec.parse_covector(offset) if offset is not None else Covector.zero(q.rank)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"t{i + 1}" for i in range(q.rank)] + ["theta_inv", "theta_inv_float"])
    for t in product(range(n + 1), repeat=q.rank):
        tt = tuple(Fraction(x, n) for x in t)
        value = theta_inv(q, base + covector_in_image(q, tt)).value
        writer.writerow([str(x) for x in tt] + [str(value), repr(float(value))])
    return buf.getvalue()


def cmd_cocycle_check(doc, args):
    q, l = _form_and_covector(doc)
    v = tuple(doc["vector"])
    out = {}
    for key, fn in (("pl", cocycle_check_pl), ("c", cocycle_check_c)):
        lhs, rhs = fn(q, l, v)
        out[key] = {"lhs": codec.rational(lhs), "rhs": codec.rational(rhs), "equal": lhs == rhs}
    return out


def cmd_delaunay_cell(doc, args):
    return codec.dump_cell(delaunay_cell(*_form_and_covector(doc)))


def cmd_delaunay_complex(doc, args):
    box = args.box if args.box is not None else doc.get("box", 1)
    cx = delaunay_complex(codec.parse_quadchar(doc["form"]), box)
    return {"box": cx.box, "cells": [codec.dump_cell(c) for c in cx.cells],
            "classes": [codec.dump_cell(c) for c in cx.classes]}


def cmd_voronoi_cell(doc, args):
    q = codec.parse_quadchar(doc["form"])
    ineqs = voronoi_cell(q, codec.parse_cell(doc["cell"]), codec.parse_rational(doc.get("slack", 0)))
    return {"inequalities": [{"vertex": list(h.vertex), "point": list(h.point),
                              "normal": [codec.rational(x) for x in h.normal],
                              "offset": codec.rational(h.offset)} for h in ineqs]}


def cmd_mdv_member(doc, args):
    q, l = _form_and_covector(doc)
    cell = codec.parse_cell(doc["cell"])
    by_min = mdv_by_minimizers(q, l, cell)
    by_ineq = mdv_by_inequalities(q, l, cell)
    return {"member": by_min and by_ineq, "by_minimizers": by_min, "by_inequalities": by_ineq}


def _siegel(doc, args):
    eps = args.epsilon if args.epsilon is not None else doc.get("epsilon", DEFAULT_EPSILON)
    s = codec.parse_tau(doc["tau"], eps)
    return codec.parse_complex_vector(doc["z"]), s


def cmd_riemann_theta(doc, args):
    z, s = _siegel(doc, args)
    r = theta(z, s)
    return {"re": float(r.value.real), "im": float(r.value.imag),
            "error_bound": r.error_bound, "terms_used": r.terms_used}


def cmd_norm_theta(doc, args):
    z, s = _siegel(doc, args)
    r = norm_theta(z, s)
    return {"value": r.value, "error_bound": r.error_bound, "terms_used": r.terms_used}


def cmd_nt_height(doc, args):
    res = assemble_height(codec.parse_worksheet(doc, args.epsilon))
    terms = {k: {"value": t.value, "error_bound": t.error_bound} for k, t in res.terms.items()}
    for k, t in res.terms.items():
        if t.exact_theta is not None:
            terms[k]["theta_inv"] = codec.rational(t.exact_theta)
    return {"height": res.height, "error_bound": res.error_bound, "terms": terms,
            "metadata": res.metadata}


def cmd_verify(doc, args):
    gmax = doc.get("gmax", 3)
    report = verify_admissibility(lambda rng, g=None: random_pair(rng, g, gmax=gmax),
                                  doc.get("trials", 50), seed=doc.get("seed", 0))
    return {"ok": report.ok, "trials": report.trials, "checked": report.checked,
            "counterexamples": {k: [repr(c) for c in v] for k, v in report.counterexamples.items()}}


COMMANDS = {
    "theta-pl": cmd_theta_pl,
    "theta-eq": cmd_theta_eq,
    "theta-inv": cmd_theta_inv,
    "cocycle-check": cmd_cocycle_check,
    "delaunay-cell": cmd_delaunay_cell,
    "delaunay-complex": cmd_delaunay_complex,
    "voronoi-cell": cmd_voronoi_cell,
    "mdv-member": cmd_mdv_member,
    "riemann-theta": cmd_riemann_theta,
    "norm-theta": cmd_norm_theta,
    "nt-height": cmd_nt_height,
    "verify": cmd_verify,
}


def _arg_parser(command):
    p = _Parser(prog=f"troparith {command}")
    p.add_argument("--input", help="JSON input file ('-' for stdin)")
    p.add_argument("--output", help="write the result here instead of stdout")
    p.add_argument("--epsilon", type=float, help="target absolute error for theta evaluations")
    p.add_argument("--box", type=int, help="box size N for delaunay-complex")
    p.add_argument("--grid", type=int, help="theta-inv only: emit a CSV on an (N+1)^g grid")
    return p


def _load(path):
    if path is None:
        return {}
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as err:
        raise UsageError(f"cannot read input: {err}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaViolation(f"input is not valid JSON: {err}") from None


def _validate(doc, schema, what):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as err:
        loc = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise SchemaViolation(f"{what} violates schema at {loc}: {err.message}") from None


def dumps(obj):
    return json.dumps(obj, sort_keys=True, allow_nan=False) + "\n"


def run(argv):
    """Execute one command. Returns (envelope or CSV text, exit code, output path)."""
    output = None
    try:
        if not argv or argv[0] not in COMMANDS:
            name = argv[0] if argv else ""
            raise UnknownCommand(f"unknown command {name!r}; expected one of {', '.join(COMMANDS)}")
        command = argv[0]
        args = _arg_parser(command).parse_args(argv[1:])
        output = args.output
        if args.grid is not None and command != "theta-inv":
            raise UsageError("--grid is only available for theta-inv")
        if args.input is None and command != "verify":
            raise UsageError("--input is required")
        doc = _load(args.input)
        _validate(doc, schemas.INPUTS[command], "input")
        payload = COMMANDS[command](doc, args)
        if isinstance(payload, str):
            return payload, 0, output
        _validate(payload, schemas.OUTPUTS[command], "output")
        result = {"status": "ok", "payload": payload, "diagnostics": []}
        return result, 0, output
    except TropArithError as err:
        payload = {"code": err.code, "message": str(err)}
        witness = getattr(err, "witness", None)
        if witness is not None:
            payload["witness"] = list(witness)
        result = {"status": "error", "payload": payload, "diagnostics": [f"category: {err.category}"]}
        return result, EXIT_CODES[err.category], output


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    result, code, output = run(argv)
    text = result if isinstance(result, str) else dumps(result)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
