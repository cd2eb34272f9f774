"""Black graphs of alternating diagrams and their fundamental circuits."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Sequence

from .braidlang import BraidWord


class GraphError(ValueError):
    pass


class UnsupportedShapeError(ValueError):
    """The braid is not, up to rotation, a product of σ₁σ₂^{-q} blocks."""


@dataclass(frozen=True)
class BlackGraph:
    """Connected loop-free multigraph; each edge is an oriented ``(tail, head)``."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        n = self.vertex_count
        if not isinstance(n, int) or n < 1:
            raise GraphError("vertex count must be a positive integer")
        for i, (u, v) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {i} {[u, v]} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"edge {i} is a self-loop at vertex {u}")
        if len(_reach(n, edges)) != n:
            raise GraphError("graph is disconnected")

    @property
    def betti(self) -> int:
        return len(self.edges) - self.vertex_count + 1

    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Vertex-by-edge matrix: -1 at the tail, +1 at the head."""
        rows = [[0] * len(self.edges) for _ in range(self.vertex_count)]
        for j, (u, v) in enumerate(self.edges):
            rows[u][j] -= 1
            rows[v][j] += 1
        return tuple(map(tuple, rows))

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class CircuitMatrix:
    """Signed fundamental circuits; row ``i`` belongs to non-tree edge ``nontree[i]``."""

    nontree: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]


def _reach(n: int, edges: Sequence[tuple[int, int]]) -> set[int]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def graph_from_json(data: dict) -> BlackGraph:
    if not isinstance(data, dict):
        raise GraphError("graph file must hold a single object")
    unknown = set(data) - {"vertices", "edges"}
    if unknown:
        raise GraphError(f"unknown field(s): {', '.join(sorted(unknown))}")
    if "vertices" not in data or "edges" not in data:
        raise GraphError("graph object needs 'vertices' and 'edges'")
    n = data["vertices"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise GraphError("'vertices' must be an integer")
    edges = data["edges"]
    if not isinstance(edges, list):
        raise GraphError("'edges' must be a list")
    pairs = []
    for i, e in enumerate(edges):
        if (
            not isinstance(e, list)
            or len(e) != 2
            or any(isinstance(x, bool) or not isinstance(x, int) for x in e)
        ):
            raise GraphError(f"edge {i} must be a [tail, head] pair of integers")
        pairs.append((e[0], e[1]))
    return BlackGraph(n, tuple(pairs))


def load_graph(file: str | Path | IO[str]) -> BlackGraph:
    """Read a graph file ``{"vertices": n, "edges": [[tail, head], ...]}``."""
    if hasattr(file, "read"):
        text = file.read()
    else:
        text = Path(file).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed graph file: {exc}") from exc
    return graph_from_json(data)


def wheel_graph(q: Sequence[int]) -> BlackGraph:
    """Hub joined by one spoke to each corner of a k-gon whose i-th side has q[i] edges.

    Vertex 0 is the hub; rim vertices follow in cyclic order starting at the
    first corner. Rim edges are oriented along the cycle so that adjacent
    fundamental circuits cross their shared spoke in opposite directions.
    """
    q = [int(x) for x in q]
    if len(q) < 2:
        raise GraphError("a wheel needs at least two sides")
    if any(x < 1 for x in q):
        raise GraphError("side lengths must be positive")
    rim_size = sum(q)
    corners = []
    rim = 1
    for x in q:
        corners.append(rim)
        rim += x
    spokes = [(0, c) for c in corners]
    rim_edges = []
    for i in range(rim_size):
        u = 1 + i
        v = 1 + (i + 1) % rim_size
        rim_edges.append((u, v))
    return BlackGraph(1 + rim_size, tuple(spokes + rim_edges))


def braid_blocks(w: BraidWord) -> list[int] | None:
    """Return ``q`` if a rotation of ``w`` is ∏ σ₁σ₂^{-q_i} with all q_i ≥ 1."""
    letters = w.letters
    if not letters or 1 not in letters:
        return None
    start = letters.index(1)
    rot = letters[start:] + letters[:start]
    q: list[int] = []
    for x in rot:
        if x == 1:
            q.append(0)
        elif x == -2:
            q[-1] += 1
        else:
            return None
    if any(x < 1 for x in q):
        return None
    return q


def black_graph_of_braid(w: BraidWord) -> BlackGraph:
    q = braid_blocks(w)
    if q is None or len(q) < 2:
        raise UnsupportedShapeError(
            f"braid {w.tokens()!r} is not a rotation of a product of k >= 2 "
            "blocks σ₁σ₂^-q with q >= 1; supply a graph file instead"
        )
    return wheel_graph(q)


def spanning_tree(g: BlackGraph) -> tuple[int, ...]:
    """Edge indices of the breadth-first tree from vertex 0 (input edge order)."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.vertex_count)]
    for j, (u, v) in enumerate(g.edges):
        adj[u].append((j, v))
        adj[v].append((j, u))
    seen = [False] * g.vertex_count
    seen[0] = True
    tree = []
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for j, y in adj[x]:
            if not seen[y]:
                seen[y] = True
                tree.append(j)
                queue.append(y)
    return tuple(sorted(tree))


def circuit_matrix(g: BlackGraph, tree: Sequence[int]) -> CircuitMatrix:
    """Fundamental circuit of each non-tree edge, traversed in that edge's direction.

    Entry ``[i][j]`` is +1 (-1) when circuit ``i`` runs along edge ``j``
    with (against) its orientation, and 0 when it avoids the edge.
    """
    tree_set = set(tree)
    if len(tree_set) != g.vertex_count - 1:
        raise GraphError("tree has the wrong number of edges")
    # root the tree at 0: parent vertex, parent edge, depth
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.vertex_count)]
    for j in tree_set:
        u, v = g.edges[j]
        adj[u].append((j, v))
        adj[v].append((j, u))
    parent = [-1] * g.vertex_count
    pedge = [-1] * g.vertex_count
    depth = [-1] * g.vertex_count
    depth[0] = 0
    stack = [0]
    while stack:
        x = stack.pop()
        for j, y in adj[x]:
            if depth[y] < 0:
                depth[y], parent[y], pedge[y] = depth[x] + 1, x, j
                stack.append(y)
    if min(depth) < 0:
        raise GraphError("edge subset is not a spanning tree")

    def step_sign(j: int, frm: int) -> int:
        return 1 if g.edges[j][0] == frm else -1

    nontree = tuple(j for j in range(len(g.edges)) if j not in tree_set)
    rows = []
    for j in nontree:
        row = [0] * len(g.edges)
        row[j] = 1
        u, v = g.edges[j]
        # walk back from head v to tail u through the tree
        down: list[tuple[int, int]] = []  # (edge, from-vertex) on the u side, reversed later
        a, b = v, u
        while depth[a] > depth[b]:
            row[pedge[a]] += step_sign(pedge[a], a)
            a = parent[a]
        while depth[b] > depth[a]:
            down.append((pedge[b], parent[b]))
            b = parent[b]
        while a != b:
            row[pedge[a]] += step_sign(pedge[a], a)
            a = parent[a]
            down.append((pedge[b], parent[b]))
            b = parent[b]
        for e, frm in down:
            row[e] += step_sign(e, frm)
        rows.append(tuple(row))
    return CircuitMatrix(nontree, tuple(rows))
