"""Batch verification of the bounds over graph families, random graphs and exhaustive sweeps.

Graphs are generated in the parent process from a seeded PCG64 stream and
shipped to workers as graph6 strings, so a run's output depends only on its
configuration and never on the worker count.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

from .bounds import BOUND_IDS, BOUND_ORDER, DEFAULT_TOL, KNOWN_OPEN, evaluate_graph
from .exceptions import ConvergenceError, GenerationError
from .formats import parse_graph6, to_graph6
from .graph_core import DEFAULT_RETRY_CAP, FAMILIES, Graph, generate_family, random_connected_gnp

REPORT_VERSION = "distspec-report/1"
GENERATOR = "numpy.random.PCG64"
CSV_COLUMNS = ("graph6", "n", "m", "diameter", "wiener", "bound_id", "bound_value",
               "actual_value", "slack", "equality")
MAX_SCAN_N = 256
MAX_EXHAUSTIVE_N = 8


@dataclass(frozen=True)
class FamilySpec:
    """One family in a scan.

    ``name`` is a graph family from :data:`FAMILIES` or ``"gnp"``.  For
    ``complete_bipartite`` each ``n`` is split as ``(n // 2, n - n // 2)``.
    ``p`` is only used by ``gnp``.
    """

    name: str
    n: tuple
    p: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(v) for v in self.n))
        object.__setattr__(self, "p", tuple(float(v) for v in self.p))
        if self.name not in FAMILIES + ("gnp",):
            raise ValueError(f"unknown family {self.name!r}")
        if not self.n:
            raise ValueError(f"family {self.name!r} has no vertex counts")
        for v in self.n:
            if not 1 <= v <= MAX_SCAN_N:
                raise ValueError(f"n={v} outside [1, {MAX_SCAN_N}]")
        if self.name == "gnp":
            if not self.p:
                raise ValueError("gnp needs at least one p value")
            for q in self.p:
                if not 0.0 < q <= 1.0:
                    raise ValueError(f"p={q} outside (0, 1]")


@dataclass(frozen=True)
class ScanConfig:
    families: tuple
    count: int = 1
    seed: int = 0
    alpha: float = 1.0
    t: int = 2
    tol: float = DEFAULT_TOL
    workers: int = 1
    max_attempts: int = DEFAULT_RETRY_CAP

    def __post_init__(self):
        object.__setattr__(self, "families", tuple(self.families))
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.t < 1:
            raise ValueError("t must be >= 1")
        if self.tol < 0:
            raise ValueError("tol must be >= 0")

    def to_dict(self) -> dict:
        return {
            "families": [{"name": f.name, "n": list(f.n), "p": list(f.p)} for f in self.families],
            "count": self.count,
            "seed": self.seed,
            "alpha": self.alpha,
            "t": self.t,
            "tol": self.tol,
        }


@dataclass(frozen=True)
class GraphRecord:
    """Picklable result of evaluating one graph."""

    graph6: str
    n: int
    m: int
    diameter: int = 0
    wiener: int = 0
    reports: tuple = ()
    chain_failures: tuple = ()
    error: Optional[str] = None

    @property
    def key(self):
        return (self.n, self.graph6)


@dataclass
class VerificationSummary:
    graphs_tested: int = 0
    violations: list = field(default_factory=list)
    equality_hits: list = field(default_factory=list)
    tightness_stats: dict = field(default_factory=dict)
    invariant_failures: list = field(default_factory=list)
    infrastructure_failures: list = field(default_factory=list)
    skipped_cells: list = field(default_factory=list)
    header: dict = field(default_factory=dict)

    def unexpected_violations(self, strict: bool = False) -> list:
        return [v for v in self.violations if strict or v["severity"] != "known-open"]

    def known_open_violations(self) -> list:
        return [v for v in self.violations if v["severity"] == "known-open"]

    def ok(self, strict: bool = False) -> bool:
        return not self.unexpected_violations(strict) and not self.invariant_failures

    def to_dict(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "header": self.header,
            "graphs_tested": self.graphs_tested,
            "violations": self.violations,
            "equality_hits": self.equality_hits,
            "tightness_stats": self.tightness_stats,
            "invariant_failures": self.invariant_failures,
            "infrastructure_failures": self.infrastructure_failures,
            "skipped_cells": self.skipped_cells,
        }

    def to_json(self) -> str:
        return json.dumps(_json_safe(self.to_dict()), sort_keys=True, indent=2) + "\n"


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return "nan" if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def evaluate_graph6(graph6: str, alpha: float = 1.0, t: int = 2, tol: float = DEFAULT_TOL) -> GraphRecord:
    """Evaluate every bound on one graph; numerical breakdowns become an ``error`` record."""
    g = parse_graph6(graph6)
    try:
        ev = evaluate_graph(g, alpha=alpha, t=t, tol=tol)
    except (ConvergenceError, OverflowError) as exc:
        return GraphRecord(graph6=graph6, n=g.n, m=g.m, error=f"{type(exc).__name__}: {exc}")
    dp = ev.profile
    return GraphRecord(
        graph6=graph6, n=g.n, m=g.m, diameter=dp.diameter, wiener=dp.wiener,
        reports=tuple(r.to_dict() for r in ev.reports),
        chain_failures=ev.chain_failures,
    )


def _evaluate_job(job):
    return evaluate_graph6(*job)


def evaluate_many(graph6s: Iterable[str], alpha=1.0, t=2, tol=DEFAULT_TOL, workers: int = 1) -> list[GraphRecord]:
    jobs = [(g6, alpha, t, tol) for g6 in graph6s]
    if workers <= 1 or len(jobs) < 2:
        return [_evaluate_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_evaluate_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def _cell_seed(seed: int, family_index: int, n: int, p_index: int, sample: int) -> int:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(family_index, n, p_index, sample))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def sample_graphs(config: ScanConfig) -> tuple[list[str], list[dict]]:
    """Graph6 strings for every cell of the scan, plus the cells that had to be skipped.

    Deterministic families are generated once per ``n``; ``gnp`` cells draw
    ``count`` samples each from independent seeded streams.
    """
    graphs, skipped = [], []
    for fi, fam in enumerate(config.families):
        for n in fam.n:
            if fam.name != "gnp":
                try:
                    if fam.name == "complete_bipartite":
                        g = generate_family(fam.name, n // 2, n - n // 2)
                    else:
                        g = generate_family(fam.name, n)
                except ValueError as exc:
                    skipped.append({"family": fam.name, "n": n, "p": None, "reason": str(exc)})
                    continue
                graphs.append(to_graph6(g))
                continue
            for pi, p in enumerate(fam.p):
                try:
                    for i in range(config.count):
                        g = random_connected_gnp(n, p, _cell_seed(config.seed, fi, n, pi, i), config.max_attempts)
                        graphs.append(to_graph6(g))
                except GenerationError as exc:
                    skipped.append({"family": "gnp", "n": n, "p": p, "reason": str(exc)})
    return graphs, skipped


def _stats(values):
    values = sorted(values)
    return {"min": values[0], "mean": math.fsum(values) / len(values), "max": values[-1]}


def summarize(records: list[GraphRecord], header: Optional[dict] = None, skipped=()) -> VerificationSummary:
    """Aggregate per-graph records; the result does not depend on record order."""
    summary = VerificationSummary(header=dict(header or {}), skipped_cells=list(skipped))
    slacks = {b: [] for b in BOUND_IDS}
    rel = {b: [] for b in BOUND_IDS}
    for rec in sorted(records, key=lambda r: r.key):
        if rec.error is not None:
            summary.infrastructure_failures.append({"graph6": rec.graph6, "error": rec.error})
            continue
        summary.graphs_tested += 1
        for check in rec.chain_failures:
            summary.invariant_failures.append({"graph6": rec.graph6, "check": check})
        for r in sorted(rec.reports, key=lambda r: BOUND_ORDER[r["bound_id"]]):
            bid = r["bound_id"]
            slacks[bid].append(r["slack"])
            denom = abs(r["actual_value"])
            rel[bid].append(r["slack"] / denom if denom else r["slack"])
            if not r["satisfied"]:
                summary.violations.append({
                    "graph6": rec.graph6, "bound_id": bid, "slack": r["slack"],
                    "severity": "known-open" if bid in KNOWN_OPEN else "unexpected",
                })
            if r["equality"]:
                summary.equality_hits.append({"graph6": rec.graph6, "bound_id": bid})
    for bid in BOUND_IDS:
        if slacks[bid]:
            summary.tightness_stats[bid] = {
                "count": len(slacks[bid]),
                "slack": _stats(slacks[bid]),
                "relative_slack": _stats(rel[bid]),
            }
    return summary


def _header(kind: str, config: Optional[dict]) -> dict:
    return {"run": kind, "generator": GENERATOR, "numpy": np.__version__, "config": config}


def run_scan(config: ScanConfig) -> tuple[list[GraphRecord], list[dict]]:
    """Sample and evaluate every graph of a scan; returns records and skipped cells."""
    graphs, skipped = sample_graphs(config)
    return evaluate_many(graphs, config.alpha, config.t, config.tol, config.workers), skipped


def verify(config: ScanConfig) -> VerificationSummary:
    records, skipped = run_scan(config)
    return summarize(records, _header("verify", config.to_dict()), skipped)


def _fmt(x) -> str:
    return f"{x:.6f}"


def tightness_rows(records: list[GraphRecord]) -> list[dict]:
    rows = []
    for rec in records:
        for r in rec.reports:
            rows.append({
                "graph6": rec.graph6, "n": rec.n, "m": rec.m, "diameter": rec.diameter,
                "wiener": rec.wiener, "bound_id": r["bound_id"],
                "bound_value": _fmt(r["bound_value"]), "actual_value": _fmt(r["actual_value"]),
                "slack": _fmt(r["slack"]), "equality": "true" if r["equality"] else "false",
            })
    rows.sort(key=lambda row: (row["n"], row["graph6"], BOUND_ORDER[row["bound_id"]]))
    return rows


def scan_tightness(config: ScanConfig) -> list[dict]:
    """One CSV row per (graph, bound), sorted by (n, graph6, bound order)."""
    records, _ = run_scan(config)
    return tightness_rows(records)


def write_csv(rows: list[dict], out=None) -> str:
    """Render rows as RFC 4180 CSV with LF line endings; write to ``out`` if given."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    text = buf.getvalue()
    if out is not None:
        if hasattr(out, "write"):
            out.write(text)
        else:
            with open(out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    return text


def _connected_mask(n: int, pairs, mask: int) -> bool:
    adj = [0] * n
    for k, (i, j) in enumerate(pairs):
        if mask >> k & 1:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    full = (1 << n) - 1
    reach = frontier = 1
    while frontier:
        nxt = 0
        for v in range(n):
            if frontier >> v & 1:
                nxt |= adj[v]
        frontier = nxt & ~reach
        reach |= nxt
    return reach == full


def labeled_connected_graphs(n: int) -> Iterable[Graph]:
    """Every connected graph on the labelled vertex set ``0..n-1``."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        if _connected_mask(n, pairs, mask):
            yield Graph(n, (pairs[k] for k in range(len(pairs)) if mask >> k & 1))


def exhaustive_small(n_max: int, n_min: Optional[int] = None, alpha: float = 1.0, t: int = 2,
                     tol: float = DEFAULT_TOL, workers: int = 1) -> VerificationSummary:
    """Verify every labelled connected graph with ``n_min <= n <= n_max`` vertices.

    ``n_min`` defaults to ``n_max``, i.e. a single vertex count.  The sweep is
    not reduced by isomorphism; ``n_max`` above 8 is refused.
    """
    if n_min is None:
        n_min = n_max
    if n_max > MAX_EXHAUSTIVE_N:
        raise ValueError(f"exhaustive enumeration is limited to n <= {MAX_EXHAUSTIVE_N}, got {n_max}")
    if not 1 <= n_min <= n_max:
        raise ValueError(f"need 1 <= n_min <= n_max, got {n_min}..{n_max}")
    graphs = [to_graph6(g) for n in range(n_min, n_max + 1) for g in labeled_connected_graphs(n)]
    records = evaluate_many(graphs, alpha, t, tol, workers)
    config = {"n_min": n_min, "n_max": n_max, "alpha": alpha, "t": t, "tol": tol}
    return summarize(records, _header("exhaustive", config))
