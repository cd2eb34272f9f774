"""Deterministic test corpora shared by the unit, property and acceptance tests."""

from __future__ import annotations

import random

from corrterm.blackgraph import BlackGraph, GraphError
from corrterm.braidlang import BraidWord, family_braid
from corrterm.intlinalg import bareiss_det

SEED = 20240917

EVEN_GRID = [(1, 2), (1, 1), (2, 3), (1, 1, 1, 1), (2, 1, 3, 1), (1, 2, 1, 2, 1, 1)]
ODD_GRID = [(0, 0, 0), (1, 0, 0), (1, 1, 1), (2, 1, 0)]


def random_black_graph(rng: random.Random, max_b: int = 5, max_det: int = 200) -> BlackGraph:
    """Connected loop-free multigraph with ``1 <= b <= max_b`` and ``|det Q| <= max_det``.

    A random tree plus ``b`` extra edges; orientations and edge order are
    shuffled so the breadth-first tree rarely matches the generating one.
    A determinant band is drawn first so large forms are not crowded out.
    """
    bands = [(1, 15), (16, 50), (51, 110), (111, 200)]
    lo, hi = rng.choice([(a, min(c, max_det)) for a, c in bands if a <= max_det])
    while True:
        n = rng.randint(2, 8)
        b = rng.randint(1, max_b)
        edges = [(rng.randrange(v), v) for v in range(1, n)]
        for _ in range(b):
            if rng.random() < 0.3:
                u, v = edges[rng.randrange(len(edges))]  # parallel edge
            else:
                u, v = rng.sample(range(n), 2)
            edges.append((u, v))
        edges = [(v, u) if rng.random() < 0.5 else (u, v) for u, v in edges]
        rng.shuffle(edges)
        try:
            g = BlackGraph(n, tuple(edges))
        except GraphError:
            continue
        if lo <= spanning_tree_count(g) <= hi:
            return g


def spanning_tree_count(g: BlackGraph) -> int:
    """Matrix-tree theorem: the reduced Laplacian determinant, equal to ``|det Q|``."""
    n = g.vertex_count
    lap = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    return bareiss_det([row[1:] for row in lap[1:]]) if n > 1 else 1


def random_graphs(count: int, seed: int = SEED, **kw) -> list[BlackGraph]:
    rng = random.Random(seed)
    return [random_black_graph(rng, **kw) for _ in range(count)]


def random_family(rng: random.Random, max_param: int = 4) -> tuple[str, tuple[int, ...]]:
    if rng.random() < 0.5:
        n = rng.randint(1, 2)
        return "even", tuple(rng.randint(1, max_param) for _ in range(2 * n))
    return "odd", tuple(rng.randint(0, max_param) for _ in range(3))


def random_family_braids(count: int, seed: int = SEED, max_param: int = 4):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        kind, params = random_family(rng, max_param)
        out.append((kind, params, family_braid(kind, params)))
    return out


def random_wheel_braid(rng: random.Random, k_max: int = 4, q_max: int = 4) -> BraidWord:
    q = [rng.randint(1, q_max) for _ in range(rng.randint(2, k_max))]
    letters: list[int] = []
    for x in q:
        letters += [1] + [-2] * x
    r = rng.randrange(len(letters))
    return BraidWord(tuple(letters[r:] + letters[:r]))
