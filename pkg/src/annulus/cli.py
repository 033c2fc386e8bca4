"""Command-line front end.

Subcommands: decompose, fuse-vertical, fuse-horizontal, associator, table,
lw. Machine output is JSON (deterministic key order); text output renders the
same data aligned for humans. Phases are symbolic (w^k; i for p = 2), never
floats. Exit codes: 0 ok, 2 parse/usage error, 3 wall mismatch, 4 size limit
exceeded, 5 golden-table mismatch, 6 invalid structure/patch document.
"""

from __future__ import annotations

import argparse
import json
import sys

from .defects import parse_annotated_defect
from .engine import QuotientRep, SizeLimitError, decompose
from .fusion import (
    FusionResult, associator, check_associator_against_golden, generate_table,
    horizontal_fuse, load_golden_associators, vertical_fuse,
)
from .levinwen import load_patch
from .scalars import is_prime
from .structures import StructureError, load_compound
from .walls import BimoduleLabel

EXIT_PARSE = 2
EXIT_WALLS = 3
EXIT_SIZE = 4
EXIT_GOLDEN = 5
EXIT_STRUCTURE = 6


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _parse_defect(text, p):
    try:
        label, corners = parse_annotated_defect(text, p)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, f"bad defect label {text!r}: {exc}")
    return label, corners


def _emit(doc, fmt, out=sys.stdout):
    if fmt == "json":
        json.dump(doc, out, indent=1, sort_keys=True)
        out.write("\n")
    else:
        _emit_text(doc, out)


def _emit_text(doc, out):
    if "outcomes" in doc:  # a FusionResult
        out.write(f"# {doc['kind']} fusion, p={doc['p']}, "
                  f"inputs: {'  '.join(doc['inputs'])}\n")
        names = doc["corner_names"]
        for o in doc["outcomes"]:
            corner = ""
            if names:
                corner = "[" + ",".join(
                    f"{n}={v}" for n, v in zip(names, o["corners"])) + "]  "
            body = " + ".join(
                (f"{m}*{d}" if m != 1 else d) for d, m in o["defects"]) or "0"
            out.write(f"{corner}{body}\n")
        if doc.get("constraints"):
            pretty = ", ".join(
                f"{m} = {'' if c == 1 else str(c) + '*'}{n}"
                for m, n, c in doc["constraints"])
            out.write(f"# constraints: {pretty}\n")
    elif "entries" in doc:
        out.write(f"# {doc['kind']} table, p={doc['p']}, "
                  f"{len(doc['entries'])} entries\n")
        for entry in doc["entries"]:
            _emit_text(entry, out)
    else:
        for key in sorted(doc):
            out.write(f"{key}: {json.dumps(doc[key], sort_keys=True)}\n")


def _check_prime(p):
    if not is_prime(p):
        raise CliError(EXIT_PARSE, f"p must be prime, got {p}")


def cmd_fuse_vertical(args):
    _check_prime(args.p)
    d1, c1 = _parse_defect(args.defects[0], args.p)
    d2, c2 = _parse_defect(args.defects[1], args.p)
    if c1 or c2:
        raise CliError(EXIT_PARSE, "vertical fusion takes no corner annotations")
    try:
        result = vertical_fuse(d1, d2)
    except StructureError as exc:
        raise CliError(EXIT_WALLS, str(exc))
    _emit(result.to_json(), args.format)


def cmd_fuse_horizontal(args):
    _check_prime(args.p)
    d1, c1 = _parse_defect(args.defects[0], args.p)
    d2, c2 = _parse_defect(args.defects[1], args.p)
    corners = _merge_corners(args, c1, c2)
    try:
        result = horizontal_fuse(d1, d2, corners)
    except StructureError as exc:
        raise CliError(EXIT_WALLS, str(exc))
    _emit(result.to_json(), args.format)


def _merge_corners(args, *annotations):
    corners = {}
    for ann in annotations:
        corners.update(ann)
    for piece in args.corner or ():
        name, _, value = piece.partition("=")
        try:
            corners[name.strip()] = int(value)
        except ValueError:
            raise CliError(EXIT_PARSE, f"bad corner assignment {piece!r}")
    return corners or None


def cmd_associator(args):
    _check_prime(args.p)
    if args.table:
        return cmd_table(argparse.Namespace(
            kind="associator", p=args.p, golden=args.golden,
            format=args.format, output=args.output))
    if len(args.walls) != 3:
        raise CliError(EXIT_PARSE, "associator needs three wall labels")
    try:
        walls = [BimoduleLabel.parse(t, args.p) for t in args.walls]
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc))
    corners = _merge_corners(args)
    try:
        result = associator(*walls, corners=corners)
    except StructureError as exc:
        raise CliError(EXIT_WALLS, str(exc))
    if args.golden:
        _diff_golden([result], args.golden)
    _emit(result.to_json(), args.format)


def _diff_golden(results, golden_path):
    golden = (load_golden_associators() if golden_path == "builtin"
              else json.load(open(golden_path)))
    for result in results:
        try:
            check_associator_against_golden(result, golden)
        except AssertionError as exc:
            raise CliError(EXIT_GOLDEN, f"golden mismatch: {exc}")


def cmd_table(args):
    _check_prime(args.p)
    try:
        doc = generate_table(args.kind, args.p)
    except SizeLimitError as exc:
        raise CliError(EXIT_SIZE, str(exc))
    if args.kind == "associator" and args.golden:
        _diff_golden([FusionResult.from_json(e) for e in doc["entries"]],
                     args.golden)
        doc["golden_checked"] = True
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
        print(f"wrote {args.output}")
    else:
        _emit(doc, args.format)


def cmd_decompose(args):
    try:
        cd = load_compound(args.structure)
    except (StructureError, ValueError, KeyError) as exc:
        raise CliError(EXIT_STRUCTURE, f"bad structure document: {exc}")
    try:
        qr = QuotientRep(cd)
        result = decompose(qr)
    except SizeLimitError as exc:
        raise CliError(EXIT_SIZE, str(exc))
    except StructureError as exc:
        raise CliError(EXIT_STRUCTURE, str(exc))
    if result is qr:
        doc = {
            "p": cd.p,
            "external_strings": len(cd.structure.external),
            "decomposition": None,
            "quotient_grade_dims": {
                json.dumps(g, sort_keys=True): d
                for g, d in sorted(qr.grade_dims().items(), key=repr)
            },
            "note": "decomposition needs a 2-string external boundary",
        }
    else:
        doc = {
            "p": cd.p,
            "external_strings": 2,
            "decomposition": [[d.name(), mult] for d, mult in result],
            "quotient_dim": qr.total_dim(),
        }
    _emit(doc, args.format)


def cmd_lw(args):
    try:
        patch = load_patch(args.patch)
    except (StructureError, ValueError, KeyError) as exc:
        raise CliError(EXIT_STRUCTURE, f"bad patch document: {exc}")
    try:
        commute = patch.check_commutation()
        dim = patch.ground_space_dim()
    except SizeLimitError as exc:
        raise CliError(EXIT_SIZE, str(exc))
    doc = {
        "p": patch.p,
        "faces": len(patch.faces),
        "consistent_states": len(patch.consistent_basis()),
        "commuting": commute["ok"],
        "ground_space_dim": dim,
    }
    if args.state:
        with open(args.state) as fh:
            state_doc = json.load(fh)
        edge_values = {
            eid: (tuple(v) if isinstance(v, list) else v)
            for eid, v in state_doc["edges"].items()}
        state = tuple(tuple(v) for v in state_doc["vertices"])
        doc["violated_terms"] = patch.violated_terms(edge_values, state)
    _emit(doc, args.format)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="annulus",
        description="Exact defect fusion on Vec(Z/pZ) domain wall structures")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(sp, with_p=True):
        if with_p:
            sp.add_argument("-p", type=int, required=True, help="prime modulus")
        sp.add_argument("--format", choices=("json", "text"), default="json")

    sp = sub.add_parser("fuse-vertical", help="stack two defects")
    add_common(sp)
    sp.add_argument("defects", nargs=2)
    sp.set_defaults(func=cmd_fuse_vertical)

    sp = sub.add_parser("fuse-horizontal", help="fuse two defects side by side")
    add_common(sp)
    sp.add_argument("defects", nargs=2)
    sp.add_argument("--corner", action="append",
                    help="corner assignment name=value (repeatable)")
    sp.set_defaults(func=cmd_fuse_horizontal)

    sp = sub.add_parser("associator", help="compound defect of [M,N,P]")
    add_common(sp)
    sp.add_argument("walls", nargs="*")
    sp.add_argument("--corner", action="append")
    sp.add_argument("--table", action="store_true",
                    help="generate the full table instead")
    sp.add_argument("--golden", nargs="?", const="builtin",
                    help="diff against a golden table (default: built-in)")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_associator)

    sp = sub.add_parser("table", help="generate a fusion/associator table")
    add_common(sp)
    sp.add_argument("kind", choices=("vertical", "horizontal", "associator"))
    sp.add_argument("--golden", nargs="?", const="builtin")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("decompose", help="decompose a structure document")
    sp.add_argument("structure")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("lw", help="solve a Levin-Wen patch document")
    sp.add_argument("patch")
    sp.add_argument("--state", help="state document for a violated-term report")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_lw)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    return 0


if __name__ == "__main__":
    sys.exit(main())
