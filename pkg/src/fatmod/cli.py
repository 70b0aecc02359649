"""Command-line interface: census building, identity verification, reports.

Exit codes: 0 success, 1 cache problems, 2 size-cap overrun, 3 at least one
identity mismatch (the CI signal).  All rationals are printed exactly as
``p/q``; reports with the same configuration are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from . import enumeration as _enum
from . import integrals as _int
from .cache import cache_path, load_records
from .errors import CacheError, FatmodError, ResourceLimit
from .workspace import Caps, Workspace

REPORT_FORMAT_VERSION = 1


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator)


def parse_rational(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den) if den else 1)


def _parse_range(text):
    if text is None:
        return None
    lo, sep, hi = text.partition("..")
    if not sep:
        value = int(text)
        return range(value, value + 1)
    return range(int(lo), int(hi) + 1)


def _build_workspace(args) -> Workspace:
    caps = Caps()
    if getattr(args, "cap_edges", None) is not None:
        caps.trivalent_edges = args.cap_edges
        caps.all_valence_edges = args.cap_edges
    cache_dir = getattr(args, "cache", None) or os.environ.get("FATMOD_CACHE")
    return Workspace(caps=caps, cache_dir=cache_dir,
                     no_build=getattr(args, "no_build", False))


def _report_row(report):
    return {
        "identity": report.name,
        "param_name": report.param_name,
        "param": report.param,
        "value_closed": rational_str(report.value_closed),
        "value_assembled": rational_str(report.value_assembled),
        "match": report.match,
        "mode": report.assembled_mode,
    }


def _emit(rows, fmt, command, stream):
    if fmt == "json":
        doc = {
            "fatmod_report": REPORT_FORMAT_VERSION,
            "command": command,
            "rows": rows,
        }
        stream.write(json.dumps(doc, indent=2) + "\n")
    elif fmt == "csv":
        fields = ["identity", "param_name", "param", "value_closed",
                  "value_assembled", "match", "mode"]
        writer = csv.DictWriter(stream, fieldnames=fields,
                                lineterminator="\n")
        writer.writeheader()
        for row in rows:
            out = {k: row[k] for k in fields}
            out["match"] = "true" if row["match"] else "false"
            writer.writerow(out)
    else:
        widths = {"identity": 14, "param": 6, "value_closed": 24,
                  "value_assembled": 24}
        stream.write("%-14s %-6s %-24s %-24s %-5s %s\n"
                     % ("identity", "param", "closed", "assembled", "match",
                        "mode"))
        for row in rows:
            stream.write("%-14s %s=%-4d %-24s %-24s %-5s %s\n" % (
                row["identity"], row["param_name"], row["param"],
                row["value_closed"], row["value_assembled"],
                "ok" if row["match"] else "FAIL", row["mode"]))


def _identity_rows(names, args, ws):
    rows = []
    for name in names:
        param_name, func = _int.IDENTITIES[name]
        if name == "genus0":
            params = _parse_range(args.n) or range(4, 10)
        else:
            params = _parse_range(args.g) or _default_g_range(name)
        for value in params:
            rows.append(_report_row(func(value, ws)))
    return rows


def _default_g_range(name):
    if name in ("w1h", "boundary", "corollary"):
        return range(2, 4)
    if name == "euler":
        return range(1, 3)
    return range(1, 4)


def _check_existing_cache(ws, descriptor):
    """Refuse to refresh on top of a corrupt or foreign cache file."""
    if ws.cache_dir is None:
        return
    path = cache_path(ws.cache_dir, descriptor)
    if path.exists():
        load_records(path, descriptor)


def cmd_enumerate(args) -> int:
    ws = _build_workspace(args)
    rows = []
    if args.trees:
        leaves = args.leaves
        if leaves is None:
            raise SystemExit("--trees requires --leaves")
        census = _enum.enumerate_trees(
            leaves, args.profile, "rooted" if args.rooted else "unrooted",
            cap_leaves=max(leaves, _enum.DEFAULT_CAP_LEAVES))
        if not args.rooted:
            _check_existing_cache(ws, census.descriptor)
            ws.save(census, "tree")
    else:
        if args.type is None:
            raise SystemExit("need --type G,N (or --trees)")
        g, n = (int(x) for x in args.type.split(","))
        if args.single_k is not None:
            valence_filter = ("single", args.single_k)
        elif args.all_valences:
            valence_filter = _enum.ALL
        else:
            valence_filter = _enum.TRIVALENT
        census = _enum.enumerate_fatgraphs(g, n, valence_filter,
                                           cap_edges=args.cap_edges)
        _check_existing_cache(ws, census.descriptor)
        ws.save(census, "graph")
    rows.append({
        "identity": "census",
        "param_name": "classes",
        "param": len(census),
        "value_closed": rational_str(census.orbifold_sum()),
        "value_assembled": rational_str(census.orbifold_sum()),
        "match": True,
        "mode": census.descriptor,
    })
    _emit(rows, args.format, "enumerate", sys.stdout)
    return 0


def cmd_verify(args) -> int:
    ws = _build_workspace(args)
    names = [args.identity] if args.identity else list(_int.IDENTITIES)
    rows = _identity_rows(names, args, ws)
    _emit(rows, args.format, "verify", sys.stdout)
    return 0 if all(row["match"] for row in rows) else 3


def cmd_report(args) -> int:
    ws = _build_workspace(args)
    names = args.identities.split(",") if args.identities \
        else list(_int.IDENTITIES)
    for name in names:
        if name not in _int.IDENTITIES:
            raise SystemExit("unknown identity %r" % name)
    rows = _identity_rows(names, args, ws)
    _emit(rows, args.format, "report", sys.stdout)
    return 0


def _add_common(parser):
    parser.add_argument("--cache", help="census cache directory "
                        "(default: $FATMOD_CACHE)")
    parser.add_argument("--format", choices=("human", "json", "csv"),
                        default="human")
    parser.add_argument("--cap-edges", type=int, default=None)
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for stochastic cross-checks")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fatmod",
        description="Exact fatgraph censuses and hyperelliptic "
                    "intersection numbers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="build and cache censuses")
    p_enum.add_argument("--type", help="G,N pair, e.g. 2,1")
    p_enum.add_argument("--trivalent", action="store_true", default=True)
    p_enum.add_argument("--all-valences", dest="all_valences",
                        action="store_true")
    p_enum.add_argument("--single-k", dest="single_k", type=int)
    p_enum.add_argument("--trees", action="store_true")
    p_enum.add_argument("--leaves", type=int)
    p_enum.add_argument("--profile", default="trivalent",
                        choices=("trivalent", "one5", "marked"))
    p_enum.add_argument("--rooted", action="store_true")
    _add_common(p_enum)
    p_enum.set_defaults(func=cmd_enumerate)

    p_verify = sub.add_parser("verify", help="evaluate identities exactly")
    p_verify.add_argument("--identity", choices=tuple(_int.IDENTITIES))
    p_verify.add_argument("--g", help="genus or range A..B")
    p_verify.add_argument("--n", help="marked-point count or range A..B "
                          "(genus0)")
    p_verify.add_argument("--no-build", dest="no_build", action="store_true")
    _add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_report = sub.add_parser("report", help="consolidated report")
    p_report.add_argument("--identities", help="comma-separated subset")
    p_report.add_argument("--g", help="genus or range A..B")
    p_report.add_argument("--n", help="marked-point range for genus0")
    p_report.add_argument("--no-build", dest="no_build", action="store_true")
    _add_common(p_report)
    p_report.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CacheError as exc:
        print("cache error: %s" % exc, file=sys.stderr)
        return 1
    except ResourceLimit as exc:
        print("size cap exceeded: %s" % exc, file=sys.stderr)
        return 2
    except FatmodError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
