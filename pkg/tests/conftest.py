import random
from itertools import combinations

import pytest

from rainbow_bounds.graph import EdgeColoredGraph, Graph

ACCEPTANCE_LINES: list[str] = []


def edges_in(triple, edge_set):
    return sum(1 for a, b in combinations(triple, 2) if (a, b) in edge_set)


def brute_counts(n, edges):
    """(triangles, one-edge triples, happy triples, empty triples) by full triple enumeration."""
    es = {(min(u, v), max(u, v)) for u, v in edges}
    tally = [0, 0, 0, 0]  # by number of induced edges
    for tri in combinations(range(n), 3):
        tally[edges_in(tri, es)] += 1
    return tally[3], tally[1], tally[2] + tally[3], tally[0]


def brute_rainbow(n, colored):
    col = {(min(u, v), max(u, v)): c for u, v, c in colored}
    found = []
    for a, b, c in combinations(range(n), 3):
        es = [(a, b), (a, c), (b, c)]
        if all(e in col for e in es) and len({col[e] for e in es}) == 3:
            found.append((a, b, c))
    return found


def random_graph(rng: random.Random, n: int, m: int) -> Graph:
    pairs = list(combinations(range(n), 2))
    return Graph.from_edges(n, rng.sample(pairs, m))


def random_colored(rng: random.Random, n: int, m: int, colors: int) -> EdgeColoredGraph:
    pairs = list(combinations(range(n), 2))
    return EdgeColoredGraph.from_colored_edges(
        n, [(u, v, rng.randrange(colors)) for u, v in rng.sample(pairs, m)])


def all_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
