"""Command-line front end: ``rainbow-bounds <subcommand> [options]``.

Every subcommand prints JSON (default) or CSV (``--format csv``).
Exit codes: 0 success / feasible, 1 infeasible or violation found,
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import feasibility as fz
from . import happy
from .errors import DomainError
from .experiment import ExperimentConfig, run_experiment
from .graph import (EdgeColoredGraph, Graph, TriangleBoundInputs, find_rainbow_triangle, goodman_lower_bound,
                    happy_triple_count, induced_h_count, read_graph, refined_lower_bound, triangle_count,
                    write_graph)

MARGIN_ENV = "RAINBOW_BOUNDS_MARGIN"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# CSV headers for commands whose row list can be empty
EMPTY_CSV_FIELDS = {
    "verify-lemma": ["k", "l", "entry", "bound"],
    "minimize-delta": ["t", "delta", "eps", "value"],
    "minimize-t": ["t", "delta", "eps", "value"],
    "experiment": ["trial", "found", "witness"],
}


def default_margin() -> float:
    raw = os.environ.get(MARGIN_ENV)
    if raw is None:
        return fz.DEFAULT_MARGIN
    try:
        return float(raw)
    except ValueError:
        raise DomainError(f"{MARGIN_ENV}={raw!r} is not a number") from None


def _frac(x: Fraction) -> dict:
    return {"exact": f"{x.numerator}/{x.denominator}", "value": float(x)}


def _graph_dict(g: Graph) -> dict:
    return {"n": g.n, "m": g.m, "edges": [list(e) for e in g.edges], "text": write_graph(g)}


def emit_table1(k_max: int, path) -> str:
    """Write the ``k,l,bound`` CSV for k = 3..k_max, l = ceil(k/2)."""
    if k_max < 3:
        raise DomainError("emit_table1 needs k_max >= 3")
    text = happy.table1_csv(happy.build_dp_table(k_max).table1_rows())
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write table to {path}: {exc.strerror}") from exc
    return text


# --- subcommand handlers: each returns (payload, csv_rows, exit_code) ---------

def cmd_dp_table(args):
    if args.k_max < 3:
        raise DomainError("dp-table needs --k-max >= 3")
    rows = happy.build_dp_table(args.k_max).table1_rows()
    if args.out:
        emit_table1(args.k_max, args.out)
    payload = {"k_max": args.k_max, "rows": [{"k": k, "l": l, "bound": b} for k, l, b in rows]}
    return payload, payload["rows"], EXIT_OK


def cmd_verify_lemma(args):
    table = happy.build_dp_table(args.k_max)
    bad = happy.verify_lemma(table)
    checked = sum(k - (k + 1) // 2 + 1 for k in range(3, args.k_max + 1))
    viol = [{"k": k, "l": l, "entry": e, "bound": b} for k, l, e, b in bad]
    payload = {"k_max": args.k_max, "pairs_checked": checked, "violations": viol}
    return payload, viol, EXIT_FAIL if viol else EXIT_OK


def cmd_brute_force(args):
    res = happy.brute_force_max_happy(args.k, args.l, args.ncap)
    payload = {
        "k": res.k, "l": res.l, "n_cap": res.n_cap, "maximum": res.maximum,
        "graphs_examined": res.graphs_examined, "distinct_shapes": res.distinct_shapes,
        "f_bound": happy.f_bound(res.k, res.l) if 2 * res.l >= res.k and res.l <= res.k else None,
        "witness": _graph_dict(res.witness),
    }
    row = {k: v for k, v in payload.items() if k != "witness"}
    row["witness_edges"] = " ".join(f"{u}-{v}" for u, v in res.witness.edges)
    return payload, [row], EXIT_OK


def cmd_construct(args):
    g = happy.extremal_construction(args.k, args.l)
    payload = {"k": args.k, "l": args.l, "max_degree": g.max_degree(),
               "happy_triples": happy_triple_count(g), "f_bound": happy.f_bound(args.k, args.l),
               "graph": _graph_dict(g)}
    row = {k: v for k, v in payload.items() if k != "graph"}
    row["edges"] = " ".join(f"{u}-{v}" for u, v in g.edges)
    return payload, [row], EXIT_OK


def cmd_bound(args):
    payload = {"n": args.n, "m": args.m, "h": args.h, "goodman": _frac(goodman_lower_bound(args.n, args.m))}
    row = {"n": args.n, "m": args.m, "h": args.h, "goodman": payload["goodman"]["exact"]}
    if args.h is not None:
        refined = refined_lower_bound(TriangleBoundInputs(args.n, args.m, args.h))
        payload["refined"] = _frac(refined)
        row["refined"] = payload["refined"]["exact"]
    return payload, [row], EXIT_OK


def cmd_count(args):
    g = read_graph(Path(args.graph).read_text())
    ecg = g if isinstance(g, EdgeColoredGraph) else None
    base = ecg.graph if ecg else g
    inp = TriangleBoundInputs.of(base) if base.n else None
    payload = {
        "n": base.n, "m": base.m,
        "triangles": triangle_count(base),
        "induced_h": induced_h_count(base),
        "happy_triples": happy_triple_count(base),
        "goodman": _frac(goodman_lower_bound(base.n, base.m)) if base.n else None,
        "refined": _frac(refined_lower_bound(inp)) if inp else None,
    }
    if ecg:
        tri = find_rainbow_triangle(ecg)
        payload["rainbow_triangle"] = list(tri) if tri else None
    row = {k: (v["exact"] if isinstance(v, dict) else v) for k, v in payload.items()}
    return payload, [row], EXIT_OK


def _report_rows(rep: fz.FeasibilityReport):
    return [dict(c.as_dict(), strict=c.strict) for c in rep.conditions]


def cmd_check(args):
    if args.theorem == "31":
        rep = fz.check_thm31(args.t, args.delta, args.eps, args.margin)
    else:
        rep = fz.check_thm41(args.t, args.delta, args.eps, args.ch, args.margin)
    return rep.as_dict(), _report_rows(rep), EXIT_OK if rep.feasible else EXIT_FAIL


def _search_out(res: fz.SearchResult):
    rows = [] if res.report is None else [dict(res.report.point.as_dict(), value=res.value)]
    return res.as_dict(), rows, EXIT_OK if res.found else EXIT_FAIL


def cmd_minimize_delta(args):
    return _search_out(fz.minimize_delta(args.t, args.grid, args.tol, args.margin))


def cmd_minimize_t(args):
    return _search_out(fz.minimize_t_thm41(args.ch, args.grid_eps, args.grid_delta, args.tol,
                                           args.rounds, args.margin))


def cmd_appendix_a(args):
    roots = {str(r): fz.appendix_a_bound(r) for r in (3, 4)}
    vals, k_bound = fz.r_ge5_k_bound()
    payload = {
        "roots": roots,
        "closed_form": {"3": "9 + sqrt(84)", "4": "14 + sqrt(258)"},
        "r_ge5": {"values": {str(r): _frac(v) for r, v in vals.items()}, "k_max": k_bound},
    }
    rows = [{"r": r, "kind": "quadratic_root", "value": roots[str(r)]} for r in (3, 4)]
    rows += [{"r": r, "kind": "rational_bound", "value": float(v)} for r, v in vals.items()]
    return payload, rows, EXIT_OK


def cmd_experiment(args):
    cfg = ExperimentConfig(args.n, args.colors, args.class_size, args.seed, args.trials)
    rep = run_experiment(cfg)
    payload = rep.as_dict(timing=args.timing)
    rows = [{"trial": t["trial"], "found": t["found"],
             "witness": " ".join(map(str, t["witness"])) if t["witness"] else ""}
            for t in payload["per_trial"]]
    return payload, rows, EXIT_OK


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "csv"), default="json")

    margin = argparse.ArgumentParser(add_help=False)
    margin.add_argument("--margin", type=float, default=None,
                        help=f"strictness margin (default 1e-9, or ${MARGIN_ENV})")

    p = argparse.ArgumentParser(prog="rainbow-bounds", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("dp-table", parents=[fmt], help="happy-triple DP values at l = ceil(k/2)")
    s.add_argument("--k-max", type=int, default=happy.DEFAULT_K_MAX)
    s.add_argument("--out", help="also write the k,l,bound CSV here")
    s.set_defaults(func=cmd_dp_table)

    s = sub.add_parser("verify-lemma", parents=[fmt], help="compare DP table with C(l,2)+C(k-l+1,2)")
    s.add_argument("--k-max", type=int, default=happy.DEFAULT_K_MAX)
    s.set_defaults(func=cmd_verify_lemma)

    s = sub.add_parser("brute-force", parents=[fmt], help="exhaustive happy-triple maximum (k <= 7)")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--ncap", type=int, default=None, help="vertex cap (default min(2k, 10))")
    s.set_defaults(func=cmd_brute_force)

    s = sub.add_parser("construct", parents=[fmt], help="graph attaining the happy-triple bound")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--l", type=int, required=True)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("bound", parents=[fmt], help="Goodman and refined triangle lower bounds")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--h", type=int, default=None, help="induced one-edge triple count")
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("count", parents=[fmt], help="exact counts for a graph file")
    s.add_argument("graph", help="graph in 'n m' + edge-lines text format")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("check", parents=[fmt, margin], help="evaluate a condition system at a point",
                       epilog="Pass t = 1/3 as 0.333334 so rounding errs on the safe side.")
    s.add_argument("--theorem", choices=("31", "41"), required=True,
                   help="31: (1+delta)n colors; 41: n colors with a CH constant")
    s.add_argument("--t", type=float, required=True)
    s.add_argument("--delta", type=float, required=True)
    s.add_argument("--eps", type=float, required=True)
    s.add_argument("--ch", type=float, default=fz.CH_CONSTANT, help="Caccetta-Haggkvist constant (41 only)")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("minimize-delta", parents=[fmt, margin], help="smallest certified delta for t")
    s.add_argument("--t", type=float, required=True)
    s.add_argument("--grid", type=int, default=fz.DEFAULT_EPS_GRID)
    s.add_argument("--tol", type=float, default=1e-6)
    s.set_defaults(func=cmd_minimize_delta)

    s = sub.add_parser("minimize-t", parents=[fmt, margin], help="smallest certified t for n colors")
    s.add_argument("--ch", type=float, default=fz.CH_CONSTANT)
    s.add_argument("--grid-eps", type=int, default=200)
    s.add_argument("--grid-delta", type=int, default=200)
    s.add_argument("--rounds", type=int, default=6)
    s.add_argument("--tol", type=float, default=1e-8)
    s.set_defaults(func=cmd_minimize_t)

    s = sub.add_parser("appendix-a", parents=[fmt], help="vertex-cover quadratic roots and the r >= 5 bound")
    s.set_defaults(func=cmd_appendix_a)

    s = sub.add_parser("experiment", parents=[fmt], help="random-instance rainbow triangle search")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--colors", type=int, required=True)
    s.add_argument("--class-size", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    s.set_defaults(func=cmd_experiment)
    return p


def _render(payload, rows, fmt: str, command: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    fields: list[str] = [] if rows else list(EMPTY_CSV_FIELDS.get(command, []))
    for r in rows:
        fields += [k for k in r if k not in fields]
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        if getattr(args, "margin", "absent") is None:
            args.margin = default_margin()
        payload, rows, code = args.func(args)
    except DomainError as exc:
        print(f"rainbow-bounds {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"rainbow-bounds {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    sys.stdout.write(_render(payload, rows, args.format, args.command))
    return code


if __name__ == "__main__":
    sys.exit(main())
