"""Command-line interface.

Exit status: 0 on success or when the property holds, 1 when a property fails
(or a certificate does not verify), 2 on usage, input or cap errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import config
from .core import all_partitions, family_to_json, partition_from_json
from .engine import PARAMETERS, Certificate, certify, compute_width, parse_graph, verify_certificate
from .functions import connectivity_from_table, max_f, partition_function_from_table
from .properties import FUNCTION_CHECKERS, SET_CHECKERS
from .trees import closure

PROPERTIES = tuple(SET_CHECKERS) + tuple(FUNCTION_CHECKERS)


class UsageError(Exception):
    pass


def _load_json(arg: str):
    """Inline JSON text, or a path to a JSON file."""
    if os.path.exists(arg):
        with open(arg) as fh:
            return json.load(fh)
    try:
        return json.loads(arg)
    except json.JSONDecodeError:
        raise UsageError(f"{arg!r} is neither a file nor JSON text") from None


def _load_graph(path: str):
    try:
        with open(path) as fh:
            return parse_graph(fh.read())
    except OSError as exc:
        raise UsageError(str(exc)) from None


def _partition_set(data) -> tuple:
    if isinstance(data, list):
        if not data:
            raise UsageError("an empty list needs an explicit ground set: {\"n\": ..., \"partitions\": []}")
        n = 1 + max(i for p in data for b in p for i in b)
        return n, [partition_from_json(p, n) for p in data]
    n = int(data["n"])
    parts = data.get("partitions", [])
    if parts == "all":
        return n, list(all_partitions(n))
    return n, [partition_from_json(p, n) for p in parts]


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload) if args.json else text)


def cmd_width(args) -> int:
    g = _load_graph(args.input)
    w = compute_width(g, args.param)
    _emit(args, {"parameter": args.param, "width": w}, str(w))
    return 0


def cmd_certify(args) -> int:
    g = _load_graph(args.input)
    cert = certify(g, args.param, args.k)
    if args.dot and cert.tree is not None:
        with open(args.dot, "w") as fh:
            fh.write(cert.tree.to_dot())
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(cert.to_json(), fh, indent=2)
    text = f"{cert.kind} certificate for {args.param} <= {args.k}" if cert.kind == "tree" else \
        f"{cert.kind} certificate for {args.param} > {args.k}"
    _emit(args, cert.to_json(), text)
    for w in cert.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return 0


def cmd_closure(args) -> int:
    n, parts = _partition_set(_load_json(args.partitions))
    table = closure(parts, n)
    text = "\n".join(json.dumps(family_to_json(p)) for p in table)
    _emit(args, table.to_json(), text)
    return 0


def cmd_check(args) -> int:
    data = _load_json(args.input)
    if args.property in SET_CHECKERS:
        n, parts = _partition_set(data)
        kwargs = {}
        if args.property == "dualising":
            kwargs = {"sample": args.sample, "seed": args.seed}
        report = SET_CHECKERS[args.property](parts, n, **kwargs)
    else:
        n = int(data["n"])
        if "values" in data:
            psi = partition_function_from_table(n, data["values"], data.get("default"))
        elif "connectivity" in data:
            psi = max_f(connectivity_from_table(n, data["connectivity"]))
        else:
            raise UsageError("function input needs a 'values' or 'connectivity' table")
        report = FUNCTION_CHECKERS[args.property](psi)
    _emit(args, report.to_json(), f"{args.property}: {'holds' if report.holds else 'fails'}")
    return 0 if report.holds else 1


def cmd_verify(args) -> int:
    g = _load_graph(args.input)
    cert = Certificate.from_json(_load_json(args.cert))
    ok, reason = verify_certificate(cert, g)
    _emit(args, {"valid": ok, "reason": reason}, "valid" if ok else f"invalid: {reason}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, help="size cap for every exhaustive routine")
    common.add_argument("--seed", type=int, default=None, help="seed for sampled sweeps")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="widthdual", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("width", parents=[common], help="exact width of a graph")
    p.add_argument("--param", choices=PARAMETERS, required=True)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_width)

    p = sub.add_parser("certify", parents=[common], help="tree or bramble certificate at threshold k")
    p.add_argument("--param", choices=PARAMETERS, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--dot", help="write the tree certificate as DOT")
    p.add_argument("--output", help="write the certificate JSON to a file")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("closure", parents=[common], help="merge closure of a partition set")
    p.add_argument("--partitions", required=True)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("check", parents=[common], help="decide a structural property")
    p.add_argument("--property", choices=PROPERTIES, required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--sample", type=int, help="dualising: number of sampled small-set systems")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", parents=[common], help="re-check a certificate")
    p.add_argument("--cert", required=True)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.cap is not None:
        config.ENUMERATION_CAP = config.CLOSURE_CAP = config.SEARCH_CAP = args.cap
        config.GROUND_CAP = max(config.GROUND_CAP, args.cap)
    if args.seed is not None:
        config.SEED = args.seed
    try:
        return args.func(args)
    except (UsageError, config.CapExceeded, ValueError, KeyError) as exc:
        print(f"widthdual: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
