"""Bounds on the distance Estrada index and on the spectral radius mu_1.

Each bound is a plain function of scalar graph data; :func:`evaluate_all`
runs every one of them on a graph and wraps the comparison with the true
value in a :class:`BoundReport`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph_core import DistanceProfile, Graph, distance_profile, power_sequence, PowerSequence
from .spectral import (
    DistanceSpectrum,
    d_eigenvalues,
    distance_energy,
    distance_estrada,
)

DEFAULT_TOL = 1e-6

BOUND_IDS = (
    "EQ4_LOWER",
    "EQ4_UPPER",
    "EQ5",
    "EQ6",
    "EQ7",
    "EQ11",
    "EQ14",
    "EQ19_LOWER",
    "EQ19_UPPER",
    "MU1_LEMMA21",
    "MU1_EQ12_CHAIN",
    "MU1_EQ13_CHAIN",
    "MU1_LEMMA23",
)
BOUND_ORDER = {b: i for i, b in enumerate(BOUND_IDS)}
UPPER_BOUNDS = frozenset({"EQ4_UPPER", "EQ5", "EQ6", "EQ19_UPPER"})
# bounds that are only stated for n >= 2
NEEDS_TWO_VERTICES = frozenset({"EQ7", "EQ11", "EQ14", "MU1_LEMMA21", "MU1_EQ12_CHAIN", "MU1_EQ13_CHAIN", "MU1_LEMMA23"})
# EQ14 fails on K_n (n >= 3) and other graphs; tracked, not treated as a regression
KNOWN_OPEN = frozenset({"EQ14"})

REPORT_FIELDS = ("bound_id", "kind", "bound_value", "actual_value", "satisfied", "slack", "equality", "alpha", "t")


def _exp(x: float) -> float:
    # huge upper bounds saturate to inf rather than raising
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def effective_tol(tol: float, actual: float) -> float:
    """Absolute ``tol`` for O(1) values, relative ``tol`` once ``|actual| > 1``."""
    return tol * max(1.0, abs(actual))


@dataclass(frozen=True)
class BoundReport:
    bound_id: str
    kind: str
    bound_value: float
    actual_value: float
    satisfied: bool
    slack: float
    equality: bool
    alpha: Optional[float] = None
    t: Optional[int] = None

    @classmethod
    def compare(cls, bound_id, bound_value, actual_value, tol=DEFAULT_TOL, alpha=None, t=None):
        kind = "upper" if bound_id in UPPER_BOUNDS else "lower"
        bound_value, actual_value = float(bound_value), float(actual_value)
        slack = bound_value - actual_value if kind == "upper" else actual_value - bound_value
        eff = effective_tol(tol, actual_value)
        return cls(
            bound_id=bound_id,
            kind=kind,
            bound_value=bound_value,
            actual_value=actual_value,
            satisfied=slack >= -eff,
            slack=slack,
            equality=abs(slack) <= eff,
            alpha=alpha,
            t=t,
        )

    @property
    def known_open(self) -> bool:
        return self.bound_id in KNOWN_OPEN

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in REPORT_FIELDS}


def bound_eq4(n: int, m: int, diameter: int) -> tuple[float, float]:
    """``sqrt(n^2 + 4m) <= DEE <= n - 1 + exp(diam * sqrt(n(n-1)))``."""
    lower = math.sqrt(n * n + 4 * m)
    upper = n - 1 + _exp(diameter * math.sqrt(n * (n - 1)))
    return lower, upper


def bound_eq5_eq6(n: int, diameter: int, e_d: float) -> tuple[float, float]:
    """Upper bounds on ``DEE - E_D`` and on ``DEE``."""
    if e_d < 0:
        raise ValueError("distance energy must be nonnegative")
    r = diameter * math.sqrt(n * (n - 1))
    return n - 1 - r + _exp(r), n - 1 + _exp(e_d)


def mu1_lower_power(ps: PowerSequence, t: int) -> float:
    """``sqrt(S_(t+1) / S_t)``, a lower bound on mu_1 for every alpha and t."""
    if not 1 <= t < ps.depth:
        raise IndexError(f"t={t} needs 1 <= t < depth={ps.depth}")
    return math.sqrt(ps.S(t + 1) / ps.S(t))


def mu1_lower_chain(dp: DistanceProfile) -> tuple[float, float, float]:
    """Degree-based lower bounds on mu_1, in decreasing order.

    ``sqrt(sum T^2 / sum D^2) >= sqrt(sum D^2 / n) >= 2W / n``.  The sums are
    taken in exact integer arithmetic.
    """
    if dp.n < 2:
        raise ValueError("needs n >= 2")
    sum_d2 = sum(int(x) ** 2 for x in dp.dist_degrees)
    sum_t2 = sum(int(x) ** 2 for x in dp.second_degrees)
    return math.sqrt(sum_t2 / sum_d2), math.sqrt(sum_d2 / dp.n), 2 * dp.wiener / dp.n


def mu1_lower_size(n: int, m: int) -> float:
    if n < 2:
        raise ValueError("needs n >= 2")
    return 2 * (n - 1) - 2 * m / n


def _estrada_lower(n: int, x: float) -> float:
    # exp(x) + (n-1) exp(-x/(n-1)); increasing in x > 0
    return math.exp(x) + (n - 1) * math.exp(-x / (n - 1))


def bound_eq7(n: int, mu1_lower: float) -> float:
    """Lower bound on DEE from any lower bound ``mu1_lower`` on mu_1."""
    if n < 2:
        raise ValueError("needs n >= 2")
    if mu1_lower <= 0:
        raise ValueError(f"mu1_lower must be positive, got {mu1_lower}")
    return _estrada_lower(n, mu1_lower)


def bound_eq11(n: int, wiener: int) -> float:
    if n < 2:
        raise ValueError("needs n >= 2")
    return _estrada_lower(n, 2 * wiener / n)


def bound_eq14(n: int, m: int) -> float:
    """``e^x + e^-x + n - 2`` with ``x = 2(n-1) - 2m/n``.

    Not a valid lower bound in general: it already exceeds DEE(K_3).
    """
    if n < 2:
        raise ValueError("needs n >= 2")
    x = mu1_lower_size(n, m)
    return math.exp(x) + math.exp(-x) + n - 2


def bound_eq19(n: int, n_plus: int, e_d: float) -> tuple[float, float]:
    if e_d < 0:
        raise ValueError("distance energy must be nonnegative")
    if not 0 <= n_plus <= n:
        raise ValueError(f"n_plus={n_plus} outside 0..{n}")
    lower = 0.5 * e_d * (math.e - 1) + n - n_plus
    upper = n - 1 + _exp(e_d / 2)
    return lower, upper


def distinct_values(values, tol: float = 1e-6) -> list[float]:
    """Cluster sorted values whose neighbours differ by at most ``tol * scale``."""
    values = np.sort(np.asarray(values, dtype=float))[::-1]
    if values.size == 0:
        return []
    cut = tol * max(1.0, float(np.abs(values).max()))
    clusters = [float(values[0])]
    for v in values[1:]:
        if clusters[-1] - v > cut:
            clusters.append(float(v))
    return clusters


def detect_equality_cases(g: Graph, dp: DistanceProfile, spec: Optional[DistanceSpectrum] = None) -> dict:
    """Structural flags behind the equality clauses.

    ``two_distinct_d_eigenvalues`` is decided from the spectrum; every other
    flag is purely combinatorial.
    """
    if spec is None:
        spec = d_eigenvalues(dp)
    n = dp.n
    off_diag = dp.d[~np.eye(n, dtype=bool)]
    degrees = g.degrees()
    return {
        "is_K1": n == 1,
        "is_K2": n == 2,
        "is_complete": bool(np.all(off_diag == 1)),
        "is_regular_diameter_two": len(set(degrees)) == 1 and dp.diameter == 2,
        "two_distinct_d_eigenvalues": len(distinct_values(spec.eigenvalues)) == 2,
    }


@dataclass(frozen=True)
class GraphEvaluation:
    """Everything computed for one graph on the way to its bound reports."""

    graph: Graph
    profile: DistanceProfile
    spectrum: DistanceSpectrum
    dee: float
    energy: float
    reports: tuple
    flags: dict
    chain_failures: tuple


def evaluate_all(g: Graph, alpha: float = 1.0, t: int = 2, tol: float = DEFAULT_TOL) -> list[BoundReport]:
    """Every bound on ``g`` in ``BOUND_IDS`` order.

    The single vertex graph only gets the bounds that are stated for it
    (EQ4, EQ5, EQ6, EQ19).
    """
    return list(evaluate_graph(g, alpha=alpha, t=t, tol=tol).reports)


def _reports(dp, spec, dee, e_d, alpha, t, tol):
    n, m, diam = dp.n, dp.m, dp.diameter
    mu1 = spec.mu1
    n_plus = spec.n_plus
    out = []
    add = lambda bid, bound, actual, **kw: out.append(BoundReport.compare(bid, bound, actual, tol, **kw))

    eq4_lo, eq4_hi = bound_eq4(n, m, diam)
    eq5, eq6 = bound_eq5_eq6(n, diam, e_d)
    eq19_lo, eq19_hi = bound_eq19(n, n_plus, e_d)
    add("EQ4_LOWER", eq4_lo, dee)
    add("EQ4_UPPER", eq4_hi, dee)
    add("EQ5", eq5, dee - e_d)
    add("EQ6", eq6, dee)
    if n >= 2:
        ps = power_sequence(dp, alpha, t + 1)
        lemma21 = mu1_lower_power(ps, t)
        r1, _, r3 = mu1_lower_chain(dp)
        add("EQ7", bound_eq7(n, lemma21), dee, alpha=alpha, t=t)
        add("EQ11", bound_eq11(n, dp.wiener), dee)
        add("EQ14", bound_eq14(n, m), dee)
    add("EQ19_LOWER", eq19_lo, dee)
    add("EQ19_UPPER", eq19_hi, dee)
    if n >= 2:
        add("MU1_LEMMA21", lemma21, mu1, alpha=alpha, t=t)
        add("MU1_EQ12_CHAIN", r1, mu1)
        add("MU1_EQ13_CHAIN", r3, mu1)
        add("MU1_LEMMA23", mu1_lower_size(n, m), mu1)
    return out


def check_chains(dp: DistanceProfile, spec: DistanceSpectrum, flags: dict, tol: float = DEFAULT_TOL, t_max: int = 4) -> list[str]:
    """Names of the structural invariants that fail on this graph.

    Checked: the mu_1 lower-bound chain with alpha = 1 for t = 2..t_max-1,
    monotonicity of the EQ7 value along that chain, the biconditional "two
    distinct D-eigenvalues iff complete" and the equality clause of the size
    bound (equality iff complete or regular of diameter 2).
    """
    failures = []
    n = dp.n
    if n < 2:
        return failures
    if flags["two_distinct_d_eigenvalues"] != flags["is_complete"]:
        failures.append("TWO_EIGENVALUES_IFF_COMPLETE")
    mu1 = spec.mu1
    eff = effective_tol(tol, mu1)
    ps = power_sequence(dp, 1.0, t_max)
    r1, r2, r3 = mu1_lower_chain(dp)
    power = [mu1_lower_power(ps, t) for t in range(2, t_max)]
    chain = [mu1] + power[::-1] + [r1, r2, r3]
    names = ["MU1"] + [f"POWER_T{t}" for t in range(t_max - 1, 1, -1)] + ["EQ12_TAIL", "EQ13_MIDDLE", "EQ13_TAIL"]
    for (hi_name, hi), (lo_name, lo) in zip(zip(names, chain), zip(names[1:], chain[1:])):
        if lo > hi + eff:
            failures.append(f"CHAIN_{hi_name}_GE_{lo_name}")
    eq7_values = [bound_eq7(n, x) for x in chain[1:]]
    if any(b > a + effective_tol(tol, a) for a, b in zip(eq7_values, eq7_values[1:])):
        failures.append("EQ7_MONOTONE_TRANSFER")
    size_tight = abs(mu1 - mu1_lower_size(n, dp.m)) <= eff
    if size_tight != (flags["is_complete"] or flags["is_regular_diameter_two"]):
        failures.append("SIZE_BOUND_EQUALITY_CLAUSE")
    return failures


def evaluate_graph(g: Graph, alpha: float = 1.0, t: int = 2, tol: float = DEFAULT_TOL,
                   dp: Optional[DistanceProfile] = None) -> GraphEvaluation:
    """Full pipeline for one graph: profile, spectrum, DEE, E_D, reports and invariant checks."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if dp is None:
        dp = distance_profile(g)
    spec = d_eigenvalues(dp)
    dee = distance_estrada(spec)
    e_d = distance_energy(spec)
    reports = _reports(dp, spec, dee, e_d, alpha, t, tol)
    flags = detect_equality_cases(g, dp, spec)
    failures = check_chains(dp, spec, flags, tol)
    return GraphEvaluation(
        graph=g, profile=dp, spectrum=spec, dee=dee, energy=e_d,
        reports=tuple(reports), flags=flags, chain_failures=tuple(failures),
    )
