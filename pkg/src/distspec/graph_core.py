"""Graphs, distance matrices and the combinatorial distance invariants.

Everything here is exact: distances, distance degrees, second distance
degrees and the Wiener index are integers.  The only floating point object is
the :class:`PowerSequence`, whose first vector ``D_i ** alpha`` is real for
arbitrary ``alpha``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .exceptions import DisconnectedGraphError, GenerationError

FAMILIES = ("path", "cycle", "star", "complete", "complete_bipartite")
MAX_POWER_DEPTH = 50
DEFAULT_RETRY_CAP = 10_000


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0 .. n-1``.

    Edges are stored as ``(u, v)`` pairs with ``u < v``.  The constructor
    normalises orientation and rejects loops, duplicates and out-of-range
    endpoints.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        n = int(n)
        if n < 1:
            raise ValueError(f"a graph needs at least one vertex, got n={n}")
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(seen))

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbors(self) -> list[list[int]]:
        adj = [[] for _ in range(self.n)]
        for u, v in self.sorted_edges():
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        return a

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DistanceProfile:
    """All-pairs distances of a connected graph and the integer invariants built on them.

    Attributes
    ----------
    d : (n, n) int64 array
        Shortest-path distances.
    diameter : int
        Largest entry of ``d`` (0 for the single vertex graph).
    dist_degrees : (n,) int64 array
        Row sums ``D_i`` of ``d``.
    second_degrees : (n,) int64 array
        ``T_i = sum_j d_ij D_j``.
    wiener : int
        Sum of the distances over unordered pairs, ``sum(D) / 2``.
    """

    n: int
    m: int
    d: np.ndarray
    diameter: int
    dist_degrees: np.ndarray
    second_degrees: np.ndarray
    wiener: int


@dataclass(frozen=True)
class PowerSequence:
    """Iterates ``M(1) = D ** alpha``, ``M(t) = d @ M(t-1)`` and their squared norms.

    ``m_vectors[k]`` and ``s_values[k]`` hold ``M(k+1)`` and ``S_(k+1)``; use
    :meth:`M` and :meth:`S` for the 1-based view.
    """

    alpha: float
    depth: int
    m_vectors: tuple
    s_values: tuple

    def M(self, t: int) -> np.ndarray:
        if not 1 <= t <= self.depth:
            raise IndexError(f"t={t} outside 1..{self.depth}")
        return self.m_vectors[t - 1]

    def S(self, t: int) -> float:
        if not 1 <= t <= self.depth:
            raise IndexError(f"t={t} outside 1..{self.depth}")
        return self.s_values[t - 1]


def generate_family(family: str, *params: int) -> Graph:
    """Build a named graph with a fixed vertex labelling.

    ``path(n)``, ``cycle(n)`` (n >= 3), ``star(n)`` (n vertices, centre 0),
    ``complete(n)`` and ``complete_bipartite(a, b)`` (parts ``0..a-1`` and
    ``a..a+b-1``).
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    want = 2 if family == "complete_bipartite" else 1
    if len(params) != want:
        raise ValueError(f"{family} takes {want} integer parameter(s), got {params}")
    params = tuple(int(p) for p in params)
    if any(p < 1 for p in params):
        raise ValueError(f"{family} parameters must be >= 1, got {params}")

    if family == "path":
        (n,) = params
        return Graph(n, ((i, i + 1) for i in range(n - 1)))
    if family == "cycle":
        (n,) = params
        if n < 3:
            raise ValueError(f"cycle needs n >= 3, got {n}")
        return Graph(n, ((i, (i + 1) % n) for i in range(n)))
    if family == "star":
        (n,) = params
        return Graph(n, ((0, i) for i in range(1, n)))
    if family == "complete":
        (n,) = params
        return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))
    a, b = params
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def random_connected_gnp(n: int, p: float, seed: int, max_attempts: int = DEFAULT_RETRY_CAP) -> Graph:
    """Sample G(n, p) with a seeded PCG64 stream, rejecting until connected."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0.0 < p <= 1.0:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    for _ in range(max_attempts):
        keep = rng.random(iu.size) < p
        g = Graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))
        if is_connected(g):
            return g
    raise GenerationError(
        f"no connected G({n}, {p}) sample in {max_attempts} attempts (seed={seed}); "
        "raise p or the retry cap"
    )


def _bfs(adj: list[list[int]], source: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def component_count(g: Graph) -> int:
    adj = g.neighbors()
    seen = [False] * g.n
    count = 0
    for s in range(g.n):
        if seen[s]:
            continue
        count += 1
        for v, dv in enumerate(_bfs(adj, s)):
            if dv >= 0:
                seen[v] = True
    return count


def is_connected(g: Graph) -> bool:
    return min(_bfs(g.neighbors(), 0)) >= 0


def distance_profile(g: Graph) -> DistanceProfile:
    """Distances by one BFS per vertex, then D, T, diameter and Wiener index."""
    adj = g.neighbors()
    rows = [_bfs(adj, s) for s in range(g.n)]
    d = np.array(rows, dtype=np.int64)
    if (d < 0).any():
        raise DisconnectedGraphError(component_count(g))
    D = d.sum(axis=1)
    T = d @ D
    total = int(D.sum())
    return DistanceProfile(
        n=g.n,
        m=g.m,
        d=_frozen(d),
        diameter=int(d.max()),
        dist_degrees=_frozen(D),
        second_degrees=_frozen(T),
        wiener=total // 2,
    )


def power_sequence(dp: DistanceProfile, alpha: float = 1.0, t_max: int = 3) -> PowerSequence:
    if dp.n < 2:
        raise ValueError("power sequence needs n >= 2 (D_i = 0 on the single vertex graph)")
    if not 2 <= t_max <= MAX_POWER_DEPTH:
        raise ValueError(f"t_max must lie in 2..{MAX_POWER_DEPTH}, got {t_max}")
    d = dp.d.astype(float)
    m = dp.dist_degrees.astype(float) ** float(alpha)
    vectors, sums = [], []
    for t in range(1, t_max + 1):
        with np.errstate(over="ignore", invalid="ignore"):
            if t > 1:
                m = d @ m
            s = float(m @ m)
        if not np.isfinite(s):
            raise OverflowError(f"S_{t} overflows float64 (alpha={alpha}); lower t_max")
        vectors.append(_frozen(m))
        sums.append(s)
    return PowerSequence(alpha=float(alpha), depth=t_max, m_vectors=tuple(vectors), s_values=tuple(sums))
