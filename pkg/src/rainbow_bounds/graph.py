"""Exact graph primitives: triangle / induced-H / happy-triple counts,
rainbow triangle detection and triangle-count lower bounds.

Graphs live on dense vertex ids ``0..n-1``; isolated vertices are allowed.
All counters return ints and all bounds return :class:`fractions.Fraction`.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Optional, TextIO

from .errors import DomainError

Edge = tuple[int, int]


def _norm_edge(u: int, v: int, n: int) -> Edge:
    u, v = int(u), int(v)
    if u == v:
        raise DomainError(f"loop at vertex {u}")
    if not (0 <= u < n and 0 <= v < n):
        raise DomainError(f"edge ({u}, {v}) out of range for n={n}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph. Build with :meth:`from_edges`."""

    n: int
    edges: tuple[Edge, ...]
    adjacency: tuple[frozenset[int], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge] = ()) -> "Graph":
        if n < 0:
            raise DomainError("vertex count must be non-negative")
        normed = {_norm_edge(u, v, n) for u, v in edges}
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in normed:
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(sorted(normed)), tuple(frozenset(a) for a in adj))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]


@dataclass(frozen=True)
class EdgeColoredGraph:
    graph: Graph
    colors: tuple[int, ...]  # aligned with graph.edges

    @classmethod
    def from_colored_edges(cls, n: int, colored: Iterable[tuple[int, int, int]]) -> "EdgeColoredGraph":
        color_of: dict[Edge, int] = {}
        for u, v, c in colored:
            e = _norm_edge(u, v, n)
            if e in color_of:
                raise DomainError(f"parallel edge {e}")
            if int(c) < 0:
                raise DomainError(f"negative color id on edge {e}")
            color_of[e] = int(c)
        g = Graph.from_edges(n, color_of)
        return cls(g, tuple(color_of[e] for e in g.edges))

    def color(self, u: int, v: int) -> int:
        return self.color_map()[(u, v) if u < v else (v, u)]

    def color_map(self) -> Mapping[Edge, int]:
        # cached on first use; the dataclass is frozen so go through object.__setattr__
        cached = self.__dict__.get("_color_map")
        if cached is None:
            cached = dict(zip(self.graph.edges, self.colors))
            object.__setattr__(self, "_color_map", cached)
        return cached

    def color_classes(self) -> dict[int, list[Edge]]:
        classes: dict[int, list[Edge]] = {}
        for e, c in zip(self.graph.edges, self.colors):
            classes.setdefault(c, []).append(e)
        return classes


# --- counters ---------------------------------------------------------------

def triangle_count(g: Graph) -> int:
    """Number of triangles, by edge iteration with neighbour intersection."""
    adj = g.adjacency
    total = 0
    for u, v in g.edges:
        small, big = (adj[u], adj[v]) if len(adj[u]) <= len(adj[v]) else (adj[v], adj[u])
        total += sum(1 for w in small if w > v and w in big)
    return total


def induced_h_count(g: Graph) -> int:
    """Number of vertex triples spanning exactly one edge."""
    adj = g.adjacency
    total = 0
    for u, v in g.edges:
        touched = len(adj[u] | adj[v]) - 2  # u and v are in each other's neighbourhoods
        total += g.n - 2 - touched
    return total


def cherry_count(g: Graph) -> int:
    """Number of paths of length two (pairs of edges sharing a vertex)."""
    return sum(comb(d, 2) for d in g.degrees())


def happy_triple_count(g: Graph) -> int:
    """Number of vertex triples spanning at least two edges.

    Each 2-edge triple holds one cherry and each triangle holds three, so
    happy = cherries - 2 * triangles.
    """
    return cherry_count(g) - 2 * triangle_count(g)


# --- triangle-count lower bounds -------------------------------------------

def goodman_lower_bound(n: int, m: int) -> Fraction:
    """Goodman's bound (4m / 3n)(m - n^2/4); may be negative."""
    if n <= 0:
        raise DomainError("goodman_lower_bound needs n >= 1")
    return Fraction(4 * m, 3 * n) * (m - Fraction(n * n, 4))


@dataclass(frozen=True)
class TriangleBoundInputs:
    n: int
    m: int
    h: int

    def __post_init__(self):
        if self.n <= 0:
            raise DomainError("n must be >= 1")
        if not 0 <= self.m <= comb(self.n, 2):
            raise DomainError(f"m={self.m} out of range for n={self.n}")
        if not 0 <= self.h <= self.m * (self.n - 2):
            raise DomainError(f"h={self.h} out of range for n={self.n}, m={self.m}")

    @classmethod
    def of(cls, g: Graph) -> "TriangleBoundInputs":
        return cls(g.n, g.m, induced_h_count(g))


def refined_lower_bound(inp: TriangleBoundInputs) -> Fraction:
    """Goodman's bound strengthened by a third of the induced one-edge triples."""
    return Fraction(inp.h, 3) + goodman_lower_bound(inp.n, inp.m)


# --- rainbow triangles -----------------------------------------------------

def find_rainbow_triangle(ecg: EdgeColoredGraph) -> Optional[tuple[int, int, int]]:
    """Return the first triangle (u < v < w, in sorted edge order) whose three
    edges carry distinct colors, or None."""
    g = ecg.graph
    col = ecg.color_map()
    adj = g.adjacency
    for (u, v), c_uv in zip(g.edges, ecg.colors):
        for w in sorted(adj[u] & adj[v]):
            if w <= v:
                continue
            c_uw, c_vw = col[(u, w)], col[(v, w)]
            if c_uv != c_uw and c_uv != c_vw and c_uw != c_vw:
                return (u, v, w)
    return None


# --- text format -------------------------------------------------------------

def write_graph(g: Graph | EdgeColoredGraph, fh: Optional[TextIO] = None) -> str:
    """Write ``n m`` then one ``u v`` (or ``u v c``) line per edge."""
    out = fh if fh is not None else io.StringIO()
    if isinstance(g, EdgeColoredGraph):
        out.write(f"{g.graph.n} {g.graph.m}\n")
        for (u, v), c in zip(g.graph.edges, g.colors):
            out.write(f"{u} {v} {c}\n")
    else:
        out.write(f"{g.n} {g.m}\n")
        for u, v in g.edges:
            out.write(f"{u} {v}\n")
    return out.getvalue() if fh is None else ""


def read_graph(src: str | TextIO) -> Graph | EdgeColoredGraph:
    """Parse the text format; three-column edge lines give a colored graph."""
    text = src if isinstance(src, str) else src.read()
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise DomainError("graph text must start with 'n m'")
    n, m = (int(x) for x in lines[0])
    body = lines[1:]
    if len(body) != m:
        raise DomainError(f"header says {m} edges, found {len(body)}")
    widths = {len(r) for r in body}
    if widths <= {2}:
        g = Graph.from_edges(n, ((int(a), int(b)) for a, b in body))
        if g.m != m:
            raise DomainError("parallel edges in graph text")
        return g
    if widths == {3}:
        return EdgeColoredGraph.from_colored_edges(n, ((int(a), int(b), int(c)) for a, b, c in body))
    raise DomainError("edge lines must all have 2 or all have 3 fields")
