"""Command-line front end: ``grskit <verb> ...``.

Exit status is 0 on success, 1 on invalid input (including a failed GRS
check), and 2 when a claim of the crosscheck suite does not hold.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .catalog import NORMALIZATION, RootSystemId, build_root_system
from .classify import classify_rank2, equivalent, isomorphic
from .crosscheck import resolve, run_all
from .exact_core import format_rat, format_vec
from .grs_bases import enumerate_bases
from .grs_core import Grs, Violation, grs_from_json
from .quograph import build_graph, rows_to_csv, table_csv, table_rows, theta_iso_witness, theta_move
from .quotient import catalog_quotient, fiber


class InputError(Exception):
    pass


def _load(spec: str) -> Grs:
    """A JSON file in the interchange format, or a name understood by resolve()."""
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            return grs_from_json(fh.read())
    try:
        return resolve(spec)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise InputError(f"expected a comma-separated list of integers, got {text!r}") from exc


def _rid(text: str) -> RootSystemId:
    try:
        return RootSystemId.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _gram_lines(g: Grs, names: Sequence[str]) -> list[str]:
    gram = g.space.gram
    lines = []
    for i, a in enumerate(names):
        lines.append(f"|{a}|^2 = {format_rat(gram[i][i])}")
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            lines.append(f"<{names[i]},{names[j]}> = {format_rat(gram[i][j])}")
    return lines


def _document(g: Grs, rid: RootSystemId) -> str:
    doc = g.to_document()
    doc["normalization"] = f"{rid.family}{rid.rank}: {NORMALIZATION[rid.family]}"
    return json.dumps(doc, indent=1) + "\n"


def cmd_build(args) -> int:
    rid = _rid(args.id)
    g, _ = build_root_system(rid)
    _emit(_document(g, rid), args.out)
    if args.out:
        print(f"{g.label}: rank {g.rank}, {len(g.roots)} roots ({len(g.roots) - 1} nonzero) -> {args.out}")
    return 0


def cmd_check(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from exc
    try:
        g = grs_from_json(text)
    except Violation as v:
        print(f"not a GRS: {v.rule} violated" + ("" if v.pair is None else f" by {format_vec(v.pair[0])}, {format_vec(v.pair[1])}"))
        return 1
    except (ValueError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from exc
    print(f"valid GRS: rank {g.rank}, {len(g.roots)} roots ({len(g.roots) - 1} nonzero)")
    return 0


def cmd_quotient(args) -> int:
    rid = _rid(args.id)
    try:
        q = catalog_quotient(rid, _ints(args.keep))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    g = q.target
    print(f"{g.label}: {len(g.roots)} roots ({len(g.roots) - 1} nonzero)")
    names = [f"a{k + 1}" for k in q.kept]
    for line in _gram_lines(g, names):
        print(line)
    if args.fibers:
        for nu in sorted(q.fibers, reverse=True):
            f = fiber(q, nu)
            ext = "" if f.minimum is None else f" min {format_vec(f.minimum)} max {format_vec(f.maximum)}"
            print(f"fiber {format_vec(nu)}: {len(f.members)} roots{ext}")
    if args.out:
        _emit(_document(g, rid), args.out)
    return 0


def cmd_bases(args) -> int:
    g = _load(args.spec)
    bg = enumerate_bases(g)
    if args.dot:
        sys.stdout.write(bg.to_dot())
    elif args.json:
        print(json.dumps(bg.to_document(), indent=1))
    else:
        print(f"{len(bg)} bases, {sum(1 for i, j, _ in bg.edges if i < j)} reflection edges")
        for b in bg.bases:
            print(" ".join(format_vec(v) for v in b.key))
    return 0


def cmd_classify2(args) -> int:
    g = _load(args.spec)
    try:
        c = classify_rank2(g)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    print(f"family: {c.family}")
    if c.params:
        print("params: " + ", ".join(format_rat(p) for p in c.params))
    print(f"witness: {c.witness}")
    return 0


def _cmd_relation(args, fn) -> int:
    w = fn(_load(args.a), _load(args.b))
    if w is None:
        print("none")
    else:
        print(f"witness: {w}")
        if w.scales is not None:
            print("scales: " + ", ".join(format_rat(s) for s in w.scales))
    return 0


def cmd_theta(args) -> int:
    rid = _rid(args.id)
    try:
        mv = theta_move(rid, _ints(args.keep), args.pivot)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    print("image: {" + ",".join(map(str, mv.image)) + "}")
    print("involution: " + ", ".join(f"{name} on {{{','.join(map(str, nodes))}}}" for name, nodes in mv.involution.types))
    if mv.is_loop:
        print("loop (no edge)")
    w = theta_iso_witness(mv)
    print(f"witness: {w}")
    print("witness verified")
    return 0


def cmd_graph(args) -> int:
    rid = _rid(args.id)
    try:
        if args.csv:
            sys.stdout.write(rows_to_csv(table_rows(rid, args.k)))
            return 0
        gr = build_graph(rid, args.k)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.dot:
        sys.stdout.write(gr.to_dot())
    else:
        print(json.dumps(gr.to_document(), indent=1))
    return 0


def cmd_table(args) -> int:
    sys.stdout.write(table_csv(_rid(args.id)))
    return 0


def cmd_claims(args) -> int:
    results = run_all(args.filter)
    if args.json:
        print(json.dumps([r.to_document() for r in results], indent=1))
    else:
        for r in results:
            mark = "ok  " if r.passed else "FAIL"
            print(f"{mark} {r.status:<8} (expected {r.expected:<8}) {r.seconds:7.2f}s  {r.claim_id}")
        bad = sum(1 for r in results if not r.passed)
        print(f"{len(results)} claims, {bad} not as expected")
    return 0 if all(r.passed for r in results) else 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grskit", description="Exact computations with generalized root systems.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("build", help="construct a catalog root system")
    s.add_argument("id")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_build)

    s = sub.add_parser("check", help="validate a GRS document")
    s.add_argument("file")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("quotient", help="quotient of a catalog system")
    s.add_argument("id")
    s.add_argument("--keep", required=True, help="kept indices, e.g. 2,4")
    s.add_argument("--out")
    s.add_argument("--fibers", action="store_true")
    s.set_defaults(fn=cmd_quotient)

    s = sub.add_parser("bases", help="enumerate all bases")
    s.add_argument("spec")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_bases)

    s = sub.add_parser("classify2", help="rank 2 family of a GRS")
    s.add_argument("spec")
    s.set_defaults(fn=cmd_classify2)

    for verb, fn in (("equiv", equivalent), ("iso", isomorphic)):
        s = sub.add_parser(verb, help=f"{'equivalence' if verb == 'equiv' else 'isomorphism'} witness")
        s.add_argument("a")
        s.add_argument("b")
        s.set_defaults(fn=lambda args, fn=fn: _cmd_relation(args, fn))

    s = sub.add_parser("theta", help="theta-move and its isomorphism")
    s.add_argument("id")
    s.add_argument("--keep", required=True)
    s.add_argument("--pivot", required=True, type=int)
    s.set_defaults(fn=cmd_theta)

    s = sub.add_parser("graph", help="the quotient graph X_{l,k}")
    s.add_argument("id")
    s.add_argument("k", type=int)
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    s.set_defaults(fn=cmd_graph)

    s = sub.add_parser("table", help="all components for k >= 2 as CSV")
    s.add_argument("id")
    s.set_defaults(fn=cmd_table)

    s = sub.add_parser("claims", help="run the crosscheck suite")
    s.add_argument("--filter")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_claims)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
