"""``distspec`` command line.

Exit status: 0 success, 1 bound violation (EQ14 only with ``--strict``),
2 usage or input error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bounds import DEFAULT_TOL, evaluate_graph
from .exceptions import ConvergenceError, DisconnectedGraphError, GraphFormatError
from .formats import parse_edgelist, parse_graph6, to_graph6
from .graph_core import FAMILIES
from .harness import (
    FamilySpec,
    ScanConfig,
    _header,
    _json_safe,
    exhaustive_small,
    run_scan,
    summarize,
    tightness_rows,
    write_csv,
)
from .spectral import distance_estrada_series

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
_EXT_FORMATS = {".g6": "graph6", ".txt": "edgelist", ".el": "edgelist"}


class UsageError(Exception):
    pass


def parse_int_range(text: str) -> list[int]:
    """``"5"``, ``"2..10"`` or ``"4,6,8"``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise argparse.ArgumentTypeError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(part))
    return out


def parse_float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _read_graph(path: str, fmt: str | None):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        if fmt is None:
            fmt = _EXT_FORMATS.get(Path(path).suffix.lower())
    if fmt is None:
        first = next((ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")), [])
        fmt = "edgelist" if len(first) == 2 and all(tok.lstrip("-").isdigit() for tok in first) else "graph6"
    return parse_edgelist(text) if fmt == "edgelist" else parse_graph6(text)


def _f6(x: float) -> str:
    return f"{x:.6f}"


def cmd_compute(args) -> int:
    g = _read_graph(args.input, args.format)
    ev = evaluate_graph(g, alpha=args.alpha, t=args.t, tol=args.tol)
    dp, spec = ev.profile, ev.spectrum
    series = distance_estrada_series(dp)
    data = {
        "graph6": to_graph6(g),
        "n": g.n,
        "m": g.m,
        "diameter": dp.diameter,
        "wiener": dp.wiener,
        "spectrum": [float(x) for x in spec.eigenvalues],
        "DEE": ev.dee,
        "DEE_series": series,
        "energy": ev.energy,
        "n_plus": spec.n_plus,
    }
    if args.json:
        print(json.dumps(_json_safe(data), sort_keys=True))
        return EXIT_OK
    for key in ("graph6", "n", "m", "diameter", "wiener"):
        print(f"{key} {data[key]}")
    print("spectrum " + " ".join(_f6(x) for x in data["spectrum"]))
    print(f"DEE {_f6(ev.dee)}")
    print(f"DEE_series {_f6(series)}")
    print(f"energy {_f6(ev.energy)}")
    print(f"n_plus {spec.n_plus}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    g = _read_graph(args.input, args.format)
    ev = evaluate_graph(g, alpha=args.alpha, t=args.t, tol=args.tol)
    if args.json:
        print(json.dumps(_json_safe([r.to_dict() for r in ev.reports]), sort_keys=True, indent=2))
    else:
        print("bound_id bound actual slack kind satisfied equality")
        for r in ev.reports:
            print(f"{r.bound_id} {r.bound_value:.3f} {r.actual_value:.3f} {r.slack:.3f} "
                  f"{r.kind} {str(r.satisfied).lower()} {str(r.equality).lower()}")
    failed = [r for r in ev.reports if not r.satisfied and (args.strict or not r.known_open)]
    for r in ev.reports:
        if not r.satisfied:
            tag = "known-open" if r.known_open else "unexpected"
            print(f"violation [{tag}] {r.bound_id} slack {r.slack:.6f}", file=sys.stderr)
    for check in ev.chain_failures:
        print(f"invariant failure {check}", file=sys.stderr)
    return EXIT_VIOLATION if failed or ev.chain_failures else EXIT_OK


def _config_from_args(args) -> ScanConfig:
    if not args.family:
        raise UsageError("at least one --family is required")
    if args.n is None:
        raise UsageError("--n is required (e.g. --n 2..10)")
    families = []
    for name in args.family:
        p = args.p if name == "gnp" else ()
        if name == "gnp" and not p:
            raise UsageError("--family gnp needs --p")
        families.append(FamilySpec(name, tuple(args.n), tuple(p)))
    return ScanConfig(families=tuple(families), count=args.count, seed=args.seed,
                      alpha=args.alpha, t=args.t, tol=args.tol, workers=args.workers)


def _finish(summary, args) -> int:
    text = summary.to_json()
    if args.json:
        sys.stdout.write(text)
    elif args.command != "scan":
        _print_summary(summary)
    if args.command != "scan" and args.output and args.output != "-":
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc.strerror}") from None
    for v in summary.violations:
        print(f"violation [{v['severity']}] {v['bound_id']} {v['graph6']} slack {v['slack']:.6f}", file=sys.stderr)
    for f in summary.invariant_failures:
        print(f"invariant failure {f['check']} {f['graph6']}", file=sys.stderr)
    for f in summary.infrastructure_failures:
        print(f"numerical failure {f['graph6']}: {f['error']}", file=sys.stderr)
    for c in summary.skipped_cells:
        print(f"skipped cell {c['family']} n={c['n']} p={c['p']}: {c['reason']}", file=sys.stderr)
    if not summary.ok(args.strict):
        return EXIT_VIOLATION
    if summary.infrastructure_failures:
        return EXIT_NUMERIC
    return EXIT_OK


def _print_summary(summary) -> None:
    print(f"graphs_tested {summary.graphs_tested}")
    print(f"violations {len(summary.unexpected_violations())}")
    print(f"known_open_violations {len(summary.known_open_violations())}")
    print(f"invariant_failures {len(summary.invariant_failures)}")
    print(f"numerical_failures {len(summary.infrastructure_failures)}")
    hits = {}
    for h in summary.equality_hits:
        hits[h["bound_id"]] = hits.get(h["bound_id"], 0) + 1
    for bid, count in hits.items():
        print(f"equality_hits {bid} {count}")
    for bid, st in summary.tightness_stats.items():
        s = st["slack"]
        print(f"slack {bid} min {s['min']:.3f} mean {s['mean']:.3f} max {s['max']:.3f}")


def cmd_verify(args) -> int:
    config = _config_from_args(args)
    records, skipped = run_scan(config)
    return _finish(summarize(records, _header("verify", config.to_dict()), skipped), args)


def cmd_scan(args) -> int:
    config = _config_from_args(args)
    records, skipped = run_scan(config)
    rows = tightness_rows(records)
    if args.output and args.output != "-":
        try:
            write_csv(rows, args.output)
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc.strerror}") from None
    elif not args.json:
        write_csv(rows, sys.stdout)
    return _finish(summarize(records, _header("scan", config.to_dict()), skipped), args)


def cmd_exhaustive(args) -> int:
    if args.n is None:
        raise UsageError("--n is required (e.g. --n 1..6)")
    summary = exhaustive_small(max(args.n), min(args.n), alpha=args.alpha, t=args.t,
                               tol=args.tol, workers=args.workers)
    return _finish(summary, args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="distspec", description="Distance spectra, distance Estrada index and its bounds.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def numeric(p):
        p.add_argument("--alpha", type=float, default=1.0, help="exponent of the power sequence start (default 1)")
        p.add_argument("--t", type=int, default=2, help="power sequence index (default 2)")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="equality/violation tolerance (default 1e-6)")
        p.add_argument("--json", action="store_true", help="write the JSON report to stdout")

    def graph_input(p):
        p.add_argument("input", nargs="?", default="-", help="graph file or '-' for stdin (default)")
        p.add_argument("--format", choices=("graph6", "edgelist"), help="input format (default: from extension, else sniffed)")

    def batch(p, families=True):
        if families:
            p.add_argument("--family", action="append", choices=FAMILIES + ("gnp",), help="graph family; repeatable")
            p.add_argument("--p", type=parse_float_list, default=(), help="edge probabilities for gnp, comma separated")
            p.add_argument("--count", type=int, default=1, help="samples per gnp cell")
            p.add_argument("--seed", type=int, default=0)
        p.add_argument("--n", type=parse_int_range, help="vertex counts: 5, 2..10 or 4,6,8")
        p.add_argument("--workers", type=int, default=1, help="worker processes")
        p.add_argument("--strict", action="store_true", help="treat known-open EQ14 violations as failures")
        p.add_argument("--output", help="output path: CSV for scan, JSON summary otherwise")

    p = sub.add_parser("compute", help="invariants, D-spectrum, DEE (both routes), energy")
    graph_input(p)
    numeric(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("bounds", help="evaluate every bound on one graph")
    graph_input(p)
    numeric(p)
    p.add_argument("--strict", action="store_true", help="treat known-open EQ14 violations as failures")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="check every bound over graph families")
    numeric(p)
    batch(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="per (graph, bound) tightness CSV")
    numeric(p)
    batch(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("exhaustive", help="all labelled connected graphs on the given vertex counts (n <= 8)")
    numeric(p)
    batch(p, families=False)
    p.set_defaults(func=cmd_exhaustive)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DisconnectedGraphError as exc:
        print(f"distspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphFormatError, UsageError, ValueError) as exc:
        print(f"distspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, OverflowError) as exc:
        print(f"distspec: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
