"""Command-line entry point.

Exit codes: 0 when every check passes (or the expected extremal graph
matches), 1 on any failing verdict or mismatch, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .enumeration import (ClassSpec, InfeasibleSpecError, argmax_rho, canonical_form,
                          enumerate_class)
from .families import parse_family
from .hypergraph import HypergraphError, distance_matrix, read_hypergraph, to_text, is_connected
from .lemmas import (FAIL, FAMILY_CHECKS, summarize, sweep_edge_moves, sweep_entry,
                     sweep_family, sweep_rebalance, sweep_two_edge, sweep_vertex_moves)
from .spectral import default_tol, spectral_radius, statuses

SUITES = ("two-edge", "sigma-split", "ordering", "monotonicity", "status-bound",
          "entry", "grafts", "rebalance")
SIZE_CAPS = {"hypertree-rank3": 10, "cactus-all": 8, "cactus-triangles-only": 10}
SUITE_NMAX = {"two-edge": 8, "grafts": 8, "entry": 8, "rebalance": 30}


class UsageError(Exception):
    pass


def _num(x):
    """Round to 12 significant digits for stable output."""
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isinf(x) or math.isnan(x):
            return str(x)
        return float(f"{x:.12g}")
    if isinstance(x, dict):
        return {str(k): _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_num(v) for v in x.tolist()]
    return x


def _report(argv, tol, records, summary, **extra) -> dict:
    return {
        "command": list(argv),
        "version": __version__,
        "tolerance": {"spectral": _num(tol), "guard_factor": 10, "identity_factor": 100},
        **{k: _num(v) for k, v in extra.items()},
        "records": _num(records),
        "summary": _num(summary),
    }


def _emit(report: dict, as_csv: bool, out) -> None:
    if not as_csv:
        out.write(json.dumps(report, indent=2) + "\n")
        return
    records = report["records"]
    columns = []
    for r in records:
        for k in r:
            if k not in columns:
                columns.append(k)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in records:
        writer.writerow([json.dumps(r[c], separators=(",", ":")) if isinstance(r.get(c), (dict, list))
                         else r.get(c, "") for c in columns])
    out.write(buf.getvalue())


def cmd_spectrum(args, argv, out) -> int:
    if (args.family is None) == (args.path is None):
        raise UsageError("give exactly one of a hypergraph file or --family")
    G = parse_family(args.family) if args.family else read_hypergraph(args.path)
    if not is_connected(G):
        raise HypergraphError("hypergraph is disconnected")
    D = distance_matrix(G)
    res = spectral_radius(D, args.tol)
    st = statuses(D)
    records = [{"vertex": v, "perron": res.perron[v], "status": st[v]} for v in range(G.n)]
    summary = {"n": G.n, "m": G.m, "rho": res.rho, "residual": res.residual,
               "iterations": res.iterations, "min_status": min(st)}
    _emit(_report(argv, args.tol, records, summary, edges=[list(e) for e in G.edges]), args.csv, out)
    return 0


def cmd_lemmas(args, argv, out) -> int:
    suite = args.suite
    nmax = args.nmax if args.nmax is not None else SUITE_NMAX.get(suite, 20)
    if suite in FAMILY_CHECKS:
        outcomes = sweep_family(suite, nmax, args.tol)
    elif suite == "two-edge":
        outcomes = sweep_two_edge(nmax, args.tol)
    elif suite == "grafts":
        outcomes = sweep_edge_moves(nmax, args.tol) + sweep_vertex_moves(nmax, args.tol)
    elif suite == "entry":
        outcomes = sweep_entry(nmax, args.trials, args.seed, args.rand_nmax, args.tol)
    else:
        outcomes = sweep_rebalance(nmax, args.tol)
    records = [{"lemma": o.lemma, "instance": o.instance, "verdict": o.verdict,
                "margin": o.margin} for o in outcomes]
    summary = summarize(outcomes)
    params = {"suite": suite, "nmax": nmax}
    if suite == "entry":
        params.update(trials=args.trials, seed=args.seed, rand_nmax=args.rand_nmax)
    _emit(_report(argv, args.tol, records, summary, parameters=params), args.csv, out)
    return 1 if summary[FAIL] else 0


def _class_from_args(args) -> ClassSpec:
    chosen = [(u, getattr(args, a)) for u, a in (("hypertree-rank3", "hypertrees"),
                                                 ("cactus-all", "cacti_all"),
                                                 ("cactus-triangles-only", "cacti_triangles"))
              if getattr(args, a) is not None]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --hypertrees, --cacti-all, --cacti-triangles")
    universe, (n, k) = chosen[0]
    cap = args.unsafe_nmax if args.unsafe_nmax is not None else SIZE_CAPS[universe]
    if n > cap:
        raise UsageError(f"n={n} exceeds the size cap {cap} for {universe}; use --unsafe-nmax")
    return ClassSpec(n, k, universe)


def cmd_extremal(args, argv, out) -> int:
    spec = _class_from_args(args)
    result = argmax_rho(spec, args.tol)
    record = {"key": result.key.hex(), "edges": [list(e) for e in result.graph.edges],
              "rho": result.spectrum.rho, "gap": result.gap, "unique": result.unique,
              "members": result.count, "ties": len(result.ties)}
    code = 0
    if args.expect:
        expected = parse_family(args.expect)
        match = expected.n == result.graph.n and canonical_form(expected) == result.key
        record["expect"] = args.expect
        record["match"] = match
        code = 0 if match else 1
    summary = {"n": spec.n, "k": spec.k, "universe": spec.universe, "unique": result.unique}
    if args.expect:
        summary["match"] = record["match"]
    _emit(_report(argv, args.tol, [record], summary), args.csv, out)
    return code


def cmd_enumerate(args, argv, out) -> int:
    spec = _class_from_args(args)
    members = list(enumerate_class(spec))
    if args.out:
        folder = Path(args.out)
        folder.mkdir(parents=True, exist_ok=True)
        width = len(str(len(members)))
        for i, G in enumerate(members):
            (folder / f"member_{i:0{width}d}.txt").write_text(to_text(G))
    records = []
    for G in members:
        res = spectral_radius(distance_matrix(G), args.tol)
        records.append({"key": canonical_form(G).hex(), "edges": [list(e) for e in G.edges],
                        "rho": res.rho})
    summary = {"n": spec.n, "k": spec.k, "universe": spec.universe, "members": len(members)}
    _emit(_report(argv, args.tol, records, summary), args.csv, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="distspec",
                                     description="Distance spectra of hypertrees and cacti.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="power-iteration tolerance (default: $DIST_SPECTRA_TOL or 1e-10)")
    common.add_argument("--csv", action="store_true", help="write the per-instance table as CSV")

    p = sub.add_parser("spectrum", parents=[common], help="rho, Perron vector and statuses")
    p.add_argument("path", nargs="?", help="hypergraph text file")
    p.add_argument("--family", help="P:n, T:n,a,b or S:p,q,l")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("lemmas", parents=[common], help="run a lemma suite over its grid")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--nmax", type=int)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--rand-nmax", type=int, default=12)
    p.set_defaults(func=cmd_lemmas)

    for name, func, text in (("extremal", cmd_extremal, "maximise rho over a class"),
                             ("enumerate", cmd_enumerate, "list a class up to isomorphism")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--hypertrees", nargs=2, type=int, metavar=("N", "K"))
        p.add_argument("--cacti-all", nargs=2, type=int, metavar=("N", "K"))
        p.add_argument("--cacti-triangles", nargs=2, type=int, metavar=("N", "K"))
        p.add_argument("--unsafe-nmax", type=int, help="raise the enumeration size cap")
        if name == "extremal":
            p.add_argument("--expect", help="family spec the maximiser should match")
        else:
            p.add_argument("--out", help="directory for one hypergraph file per member")
        p.set_defaults(func=func)
    return parser


def main(argv=None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.tol is None:
            args.tol = default_tol()
        return args.func(args, argv, out)
    except (UsageError, InfeasibleSpecError, HypergraphError, ValueError, OSError) as exc:
        print(f"distspec: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
