"""Happy-triple maxima for bounded-degree graphs.

A happy triple is a vertex triple spanning at least two edges. This module
holds the closed-form bound C(l,2) + C(k-l+1,2) for graphs with k edges and
maximum degree l >= k/2, the dynamic-programming table that upper-bounds the
maximum for every (k, l), an exhaustive oracle for small k, and the graphs
that attain the bound.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from math import ceil, comb
from typing import Iterator, Optional

from .errors import DomainError
from .graph import Graph, happy_triple_count

DEFAULT_K_MAX = 103
ORACLE_K_LIMIT = 7


def f_real(k: float, x: float) -> float:
    """x(x-1)/2 + (k-x+1)(k-x)/2, convex in x with minimum at (k+1)/2."""
    return x * (x - 1) / 2 + (k - x + 1) * (k - x) / 2


def convex_argmin(k: float) -> float:
    return (k + 1) / 2


def f_bound(k: int, l: int) -> int:
    """Maximum happy triples for k edges and max degree l, when l >= k/2."""
    if l < 1 or l > k:
        raise DomainError(f"f_bound needs 1 <= l <= k, got k={k}, l={l}")
    return comb(l, 2) + comb(k - l + 1, 2)


# --- dynamic program ---------------------------------------------------------

@dataclass(frozen=True)
class DpTable:
    """``entries[k][l]`` upper-bounds happy triples over graphs with k edges and
    max degree <= l. ``witness_j[k][l]`` is the max-degree choice attaining the
    entry (0 for base cases that are not computed by the recurrence)."""

    k_max: int
    entries: tuple[tuple[int, ...], ...]
    witness_j: tuple[tuple[int, ...], ...]

    def __getitem__(self, kl: tuple[int, int]) -> int:
        k, l = kl
        return self.entries[k][l]

    def table1_rows(self, k_max: Optional[int] = None) -> list[tuple[int, int, int]]:
        k_max = self.k_max if k_max is None else k_max
        if k_max > self.k_max:
            raise DomainError(f"table only covers k <= {self.k_max}")
        return [(k, ceil(k / 2), self.entries[k][ceil(k / 2)]) for k in range(3, k_max + 1)]


def build_dp_table(k_max: int = DEFAULT_K_MAX) -> DpTable:
    if k_max < 2:
        raise DomainError("build_dp_table needs k_max >= 2")
    size = k_max + 1
    ar = [[0] * size for _ in range(size)]
    wj = [[0] * size for _ in range(size)]
    for k in range(4, size):
        ar[k][2] = k

    # (k-j, j) with j <= l is ready: either j < l (earlier l pass) or
    # j == l and k-j < k (earlier in this pass).
    for l in range(2, size):
        for k in range(2, size):
            if l == 2 and k >= 4:
                continue
            if k <= l:
                ar[k][l] = comb(k, 2)
                wj[k][l] = k
                continue
            best, best_j = 0, -1
            for j in range(1, l + 1):
                cand = comb(j, 2) + (k - j) + ar[k - j][j]
                if cand >= best:
                    best, best_j = cand, j
            ar[k][l] = best
            wj[k][l] = best_j
    return DpTable(k_max, tuple(map(tuple, ar)), tuple(map(tuple, wj)))


def verify_lemma(table: DpTable, k_max: Optional[int] = None) -> list[tuple[int, int, int, int]]:
    """Return ``(k, l, entry, bound)`` for every ceil(k/2) <= l <= k <= k_max
    (k >= 3) where the table exceeds the closed-form bound."""
    k_max = table.k_max if k_max is None else k_max
    if k_max > table.k_max:
        raise DomainError(f"table only covers k <= {table.k_max}")
    bad = []
    for k in range(3, k_max + 1):
        for l in range(ceil(k / 2), k + 1):
            b = f_bound(k, l)
            if table.entries[k][l] > b:
                bad.append((k, l, table.entries[k][l], b))
    return bad


def table1_csv(rows: list[tuple[int, int, int]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "l", "bound"])
    w.writerows(rows)
    return buf.getvalue()


def golden_table1_text() -> str:
    return resources.files("rainbow_bounds.data").joinpath("table1.csv").read_text()


def read_table1(text: str) -> list[tuple[int, int, int]]:
    reader = csv.DictReader(io.StringIO(text))
    return [(int(r["k"]), int(r["l"]), int(r["bound"])) for r in reader]


# --- brute-force oracle ------------------------------------------------------

@dataclass(frozen=True)
class OracleResult:
    k: int
    l: int
    maximum: int
    witness: Graph
    graphs_examined: int
    distinct_shapes: int
    n_cap: int


def default_n_cap(k: int) -> int:
    return max(3, min(2 * k, 10))


def shape_key(g: Graph) -> tuple:
    """Isomorphism invariant: sorted (degree, sorted neighbour degrees) pairs.

    Not a complete invariant (C6 and 2*K3 collide), so it is only used to
    report how many distinct shapes were seen, never to skip a graph.
    """
    deg = g.degrees()
    return tuple(sorted(
        (deg[v], tuple(sorted(deg[u] for u in g.adjacency[v])))
        for v in range(g.n) if deg[v]
    ))


def _labelled_edge_sets(k: int, l: int, n_cap: int) -> Iterator[list[tuple[int, int]]]:
    """Yield k-edge sets (as sorted edge lists) with max degree <= l on at most
    n_cap vertices, one or more per isomorphism class.

    Edges are added in increasing lexicographic order and a vertex may only
    appear once every smaller label has appeared. Any graph relabelled in BFS
    order satisfies this, so every isomorphism class is reached.
    """
    deg = [0] * n_cap
    chosen: list[tuple[int, int]] = []

    def rec(last: tuple[int, int], top: int) -> Iterator[list[tuple[int, int]]]:
        if len(chosen) == k:
            yield chosen
            return
        u0 = last[0]
        for u in range(u0, min(top + 2, n_cap)):
            if deg[u] >= l:
                continue
            v_lo = last[1] + 1 if u == u0 else u + 1
            v_hi = min(max(top, u) + 1, n_cap - 1)
            for v in range(v_lo, v_hi + 1):
                if deg[v] >= l:
                    continue
                deg[u] += 1
                deg[v] += 1
                chosen.append((u, v))
                yield from rec((u, v), max(top, v))
                chosen.pop()
                deg[u] -= 1
                deg[v] -= 1

    yield from rec((0, 0), -1)


def _all_edge_sets(k: int, l: int, n_cap: int) -> Iterator[list[tuple[int, int]]]:
    from itertools import combinations

    pairs = list(combinations(range(n_cap), 2))
    for sub in combinations(pairs, k):
        deg = [0] * n_cap
        for u, v in sub:
            deg[u] += 1
            deg[v] += 1
        if max(deg) <= l:
            yield list(sub)


def brute_force_max_happy(k: int, l: int, n_cap: Optional[int] = None,
                          symmetry_break: bool = True) -> OracleResult:
    """Exhaustive maximum of happy triples over k-edge graphs with max degree <= l.

    ``symmetry_break=False`` enumerates every k-subset of the complete graph on
    n_cap vertices, which is only practical for k <= 4 or so.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    if k > ORACLE_K_LIMIT:
        raise DomainError(f"brute force refuses k > {ORACLE_K_LIMIT}")
    if l < 1:
        raise DomainError("l must be >= 1")
    n_cap = default_n_cap(k) if n_cap is None else n_cap
    if n_cap < 3:
        raise DomainError("n_cap must be >= 3")
    if comb(n_cap, 2) < k:
        raise DomainError(f"n_cap={n_cap} cannot hold {k} edges")

    gen = _labelled_edge_sets if symmetry_break else _all_edge_sets
    best, best_edges, examined = -1, None, 0
    shapes = set()
    for edges in gen(k, l, n_cap):
        examined += 1
        g = Graph.from_edges(n_cap, edges)
        shapes.add(shape_key(g))
        h = happy_triple_count(g)
        if h > best:
            best, best_edges = h, list(edges)
    if best_edges is None:
        raise DomainError(f"no {k}-edge graph with max degree <= {l} on {n_cap} vertices")
    witness = Graph.from_edges(n_cap, best_edges)
    return OracleResult(k, l, best, witness, examined, len(shapes), n_cap)


# --- extremal graphs ---------------------------------------------------------

def extremal_construction(k: int, l: int) -> Graph:
    """Graph with k edges and max degree l attaining f_bound(k, l).

    For l > k/2: stars K_{1,l-1} and K_{1,k-l} with their centres joined
    (l == k gives the star K_{1,k}). For l == k/2: K_{2,l}.

    (k, l) = (2, 1) is refused: K_{2,1} has degree 2 and a 2-edge matching has
    no happy triple, so the bound 1 is not attained there.
    """
    if k < 1 or not (k <= 2 * l <= 2 * k):
        raise DomainError(f"extremal_construction needs k/2 <= l <= k, got k={k}, l={l}")
    if (k, l) == (2, 1):
        raise DomainError("no 2-edge graph with max degree 1 attains f_bound(2, 1) = 1")
    if 2 * l == k:
        # parts {0, 1} and {2, ..., l+1}
        return Graph.from_edges(l + 2, [(a, b) for a in (0, 1) for b in range(2, l + 2)])
    a, b = 0, 1
    edges = [(a, b)]
    nxt = 2
    for _ in range(l - 1):
        edges.append((a, nxt))
        nxt += 1
    for _ in range(k - l):
        edges.append((b, nxt))
        nxt += 1
    return Graph.from_edges(nxt, edges)
