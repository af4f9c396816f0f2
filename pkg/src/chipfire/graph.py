"""Finite simple undirected graphs: construction, parsing, generation, metrics.

Vertices are always 0..n-1.  Every Graph carries its full distance matrix,
computed eagerly by BFS from every source (O(n*(n+m))); at the scales this
package targets that is cheaper than caching logic, and it makes diameter
and pairwise-distance checks free at verification time.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import Disconnected, EmptyGraph, InvalidGraph, ParseError, Unsatisfiable
from .rng import SplitMix64, derive_seed

GENERATOR_KINDS = ("cycle", "path", "complete", "star", "random_tree", "random_connected")

_TREE_RETRIES = 1  # Pruefer decode always yields a tree; no retry needed
_GNP_RETRIES = 200


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph with precomputed metrics.

    edges are normalized (u < v) and sorted; adjacency lists are sorted.
    distance uses -1 for unreachable pairs.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]
    degree: tuple[int, ...]
    distance: tuple[tuple[int, ...], ...]
    connected: bool

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def diameter(self) -> int:
        """Largest pairwise distance. Raises Disconnected when undefined."""
        if not self.connected:
            raise Disconnected("diameter requires a connected graph")
        return max(max(row) for row in self.distance)

    @staticmethod
    def build(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Validate and assemble a Graph from a vertex count and edge pairs."""
        if n <= 0:
            raise EmptyGraph("graph needs at least one vertex")
        norm: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraph(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidGraph(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise InvalidGraph(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        norm.sort()
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        adjacency = tuple(tuple(sorted(a)) for a in adj)
        degree = tuple(len(a) for a in adjacency)
        distance = tuple(tuple(row) for row in _all_pairs_distances(n, adjacency))
        connected = all(d >= 0 for d in distance[0])
        return Graph(n, tuple(norm), adjacency, degree, distance, connected)


def _all_pairs_distances(n: int, adjacency) -> list[list[int]]:
    out = []
    for src in range(n):
        dist = [-1] * n
        dist[src] = 0
        q = deque([src])
        while q:
            u = q.popleft()
            du = dist[u]
            for w in adjacency[u]:
                if dist[w] < 0:
                    dist[w] = du + 1
                    q.append(w)
        out.append(dist)
    return out


def parse_edge_list(text: str) -> Graph:
    """Parse edge-list text into a Graph.

    Format: one "u v" pair per line, ids 0-based; '#' starts a comment
    that runs to end of line; blank lines are ignored.  The first
    non-comment line may be a header "n <count>" declaring the vertex
    count (needed for isolated trailing vertices); without it the count
    is max id + 1.

    Raises ParseError for malformed tokens, InvalidGraph for self-loops,
    duplicate edges, or ids outside a declared count, EmptyGraph when no
    vertices are described.
    """
    declared: Optional[int] = None
    edges: list[tuple[int, int]] = []
    max_id = -1
    saw_content = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if saw_content or declared is not None:
                raise ParseError(f"line {lineno}: header must be the first content line")
            if len(tokens) != 2:
                raise ParseError(f"line {lineno}: header is 'n <count>'")
            try:
                declared = int(tokens[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad vertex count {tokens[1]!r}") from None
            if declared < 0:
                raise ParseError(f"line {lineno}: negative vertex count")
            saw_content = True
            continue
        saw_content = True
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex id in {line!r}") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: vertex ids are non-negative")
        max_id = max(max_id, u, v)
        edges.append((u, v))
    if declared is None:
        if max_id < 0:
            raise EmptyGraph("no vertices in input")
        n = max_id + 1
    else:
        if declared == 0:
            raise EmptyGraph("header declares zero vertices")
        if max_id >= declared:
            raise InvalidGraph(f"vertex id {max_id} exceeds declared count {declared}")
        n = declared
    return Graph.build(n, edges)


def generate(kind: str, n: int, p: Optional[float] = None, seed: int = 0) -> Graph:
    """Build a named graph deterministically.

    kind is one of cycle | path | complete | star | random_tree |
    random_connected; the random kinds are pure functions of (n, p, seed).
    Raises InvalidGraph for size constraints a kind cannot meet and
    Unsatisfiable when random_connected exhausts its retry budget.
    """
    if n <= 0:
        raise EmptyGraph("generation needs n >= 1")
    if kind == "cycle":
        if n < 3:
            raise InvalidGraph("a simple cycle needs n >= 3")
        return Graph.build(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "path":
        return Graph.build(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "complete":
        return Graph.build(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if kind == "star":
        if n < 2:
            raise InvalidGraph("a star needs n >= 2")
        return Graph.build(n, [(0, i) for i in range(1, n)])
    if kind == "random_tree":
        return Graph.build(n, _random_tree_edges(n, seed))
    if kind == "random_connected":
        if p is None:
            raise InvalidGraph("random_connected needs an edge probability p")
        if not (0.0 <= p <= 1.0):
            raise InvalidGraph(f"edge probability {p} outside [0, 1]")
        return _random_connected(n, p, seed)
    raise InvalidGraph(f"unknown generator kind {kind!r}")


def _random_tree_edges(n: int, seed: int) -> list[tuple[int, int]]:
    # Uniform labeled tree via a random Pruefer sequence.
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    rng = SplitMix64(seed)
    seq = [rng.below(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    # smallest-leaf-first decode keeps the tree a pure function of seq
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    w = heapq.heappop(leaves)
    edges.append((u, w))
    return edges


def _random_connected(n: int, p: float, seed: int) -> Graph:
    # Retry G(n, p) draws until one is connected; each attempt has its own
    # derived stream so the sequence of attempts is reproducible.
    for attempt in range(_GNP_RETRIES):
        rng = SplitMix64(derive_seed(seed, attempt))
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.chance(p)
        ]
        g = Graph.build(n, edges)
        if g.connected:
            return g
    raise Unsatisfiable(
        f"no connected G({n}, {p}) within {_GNP_RETRIES} attempts for seed {seed}"
    )


def stabilization_threshold(g: Graph) -> int:
    """Candy total 4m - n above which every game on g must stabilize."""
    return 4 * g.m - g.n


@dataclass(frozen=True)
class ValidationReport:
    simple: bool
    connected: bool
    degree_sum_ok: bool
    degenerate: bool

    @property
    def analysis_ready(self) -> bool:
        """True when every structural check passed and n >= 2."""
        return self.simple and self.connected and self.degree_sum_ok and not self.degenerate


def validate(g: Graph) -> ValidationReport:
    """Re-verify structural invariants from the raw fields.

    Deliberately recomputes everything (including a fresh BFS) instead of
    trusting the constructor, so a hand-built or tampered instance is
    caught here.
    """
    simple = True
    seen = set()
    for u, v in g.edges:
        if u == v or not (0 <= u < g.n and 0 <= v < g.n) or u > v:
            simple = False
            break
        if (u, v) in seen:
            simple = False
            break
        seen.add((u, v))
    if simple:
        # adjacency must match the edge set exactly, both directions
        pairs = {(u, v) for u, v in g.edges} | {(v, u) for u, v in g.edges}
        listed = {(u, w) for u in range(g.n) for w in g.adjacency[u]}
        simple = pairs == listed
    degree_sum_ok = sum(g.degree) == 2 * g.m and all(
        g.degree[v] == len(g.adjacency[v]) for v in range(g.n)
    )
    reach = 1
    if g.n > 0:
        dist = [-1] * g.n
        dist[0] = 0
        q = deque([0])
        while q:
            u = q.popleft()
            for w in g.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    q.append(w)
        reach = sum(1 for d in dist if d >= 0)
    return ValidationReport(
        simple=simple,
        connected=reach == g.n,
        degree_sum_ok=degree_sum_ok,
        degenerate=g.n < 2,
    )


def to_dot(g: Graph) -> str:
    """Render the graph as DOT text for external visualization tools."""
    lines = ["graph {"]
    isolated = [v for v in range(g.n) if g.degree[v] == 0]
    for v in isolated:
        lines.append(f"  {v};")
    for u, v in g.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
