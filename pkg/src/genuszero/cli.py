"""Command line interface.

    genuszero strata N [--profile | --dot | --json] [--max-n K]
    genuszero mgt Q [--order | --elements | --project P | --check-relations S] [--max-q K]
    genuszero verify [--suite trees|symmetric|mgt|all] [--seed K]
    genuszero act PERMUTATION TREE_JSON

Exit status: 0 on success, 1 on a domain error or failed verification,
2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import mgt, strata, verify
from .errors import GenusZeroError
from .symmetric import act_on_tree, parse_cycles
from .trees import StableTree, canonical_form


def _table(e) -> str:
    return "[" + ",".join(map(str, e.table)) + "]"


def cmd_strata(args, out):
    poset = strata.build_poset(args.n, max_n=args.max_n)
    if args.dot:
        out.write(strata.export_dot(poset))
    elif args.json:
        out.write(strata.export_json(poset) + "\n")
    else:
        profile = list(strata.codim_profile(poset))
        out.write(f"codim: {profile} total: {sum(profile)}\n")
    return 0


def cmd_mgt(args, out):
    q = args.q
    group = sorted(mgt.closure(q, max_q=args.max_q), key=lambda e: e.table)
    if args.elements:
        for e in group:
            out.write(_table(e) + "\n")
    elif args.project is not None:
        for e in group:
            out.write(f"{_table(e)} -> {_table(mgt.u_qp(e, args.project))}\n")
    elif args.check_relations is not None:
        report = verify.check_relations(args.check_relations, q)
        if not report:
            out.write(f"FAIL {report.message}: {report.witness}\n")
            return 1
        out.write("OK (all chains)\n")
    else:
        out.write(f"{len(group)}\n")
    return 0


def cmd_verify(args, out):
    results = verify.run(args.suite, args.seed)
    failed = 0
    for name, report in results:
        if report:
            out.write(f"PASS {name} ({report.message})\n")
        else:
            failed += 1
            out.write(f"FAIL {name}: {report.message}; witness {report.witness!r}\n")
    out.write(f"{len(results) - failed}/{len(results)} properties hold\n")
    return 1 if failed else 0


def cmd_act(args, out):
    perm = parse_cycles(args.permutation)
    text = sys.stdin.read() if args.tree == "-" else args.tree
    tree = StableTree.from_json(text)
    out.write(json.dumps(canonical_form(act_on_tree(perm, tree)).to_dict()) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="genuszero", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("strata", help="boundary strata of the n-pointed moduli space")
    p.add_argument("n", type=int)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--profile", action="store_true", help="stratum counts by codimension (default)")
    fmt.add_argument("--dot", action="store_true", help="Graphviz digraph of the cover relation")
    fmt.add_argument("--json", action="store_true", help="poset as JSON")
    p.add_argument("--max-n", type=int, default=strata.DEFAULT_MAX_N)
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("mgt", help="the groups mGT_q")
    p.add_argument("q", type=int)
    what = p.add_mutually_exclusive_group()
    what.add_argument("--order", action="store_true", help="group order (default)")
    what.add_argument("--elements", action="store_true", help="all element tables")
    what.add_argument("--project", type=int, metavar="P", help="image of every element in mGT_P")
    what.add_argument("--check-relations", type=int, metavar="S",
                      help="tower relations on chains through Q with top level <= S")
    p.add_argument("--max-q", type=int, default=mgt.DEFAULT_MAX_Q)
    p.set_defaults(func=cmd_mgt)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("act", help="relabel the tails of a tree by a permutation")
    p.add_argument("permutation", help='cycle notation, e.g. "(1 2)(3 7 5)"')
    p.add_argument("tree", help="tree JSON, or - to read it from stdin")
    p.set_defaults(func=cmd_act)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except GenusZeroError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
