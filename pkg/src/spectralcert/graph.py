"""Simple undirected graphs stored as adjacency bitsets.

Vertices are ``0..n-1``.  Row ``adj[v]`` is an ``int`` whose bit ``u`` is set
when ``uv`` is an edge.  Everything here is immutable and pure; the composite
constructions elsewhere rely on the fixed vertex numbering of the generators.

Edge masks (used by the enumerator and the exhaustive engine) index the pairs
``i < j`` in graph6 column order: ``(0,1), (0,2), (1,2), (0,3), ...``.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_ENUMERATE_N = 7


class GraphError(ValueError):
    """Raised for malformed graph input."""


class Marker(enum.Enum):
    """Distinguished non-integer values for distances and diameters."""

    DISCONNECTED = "disconnected"

    def __repr__(self) -> str:
        return self.value


DISCONNECTED = Marker.DISCONNECTED


def pair_order(n: int) -> list[tuple[int, int]]:
    """Pairs ``(i, j)`` with ``i < j`` in graph6 column order."""
    return [(i, j) for j in range(1, n) for i in range(j)]


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError(f"graph needs at least one vertex, got n={self.n}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency must have one row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {v} references a vertex >= n")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            r = row
            while r:
                low = r & -r
                u = low.bit_length() - 1
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"adjacency not symmetric at ({v},{u})")
                r ^= low

    # -- basic queries -------------------------------------------------

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adj)

    @cached_property
    def m(self) -> int:
        return sum(self.degrees) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in graph6 column order."""
        return [(i, j) for j in range(self.n) for i in _bits(self.adj[j]) if i < j]

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def adjacency_lists(self) -> list[list[int]]:
        return [_bits(row) for row in self.adj]

    # -- derived graphs ------------------------------------------------

    def remove_edge(self, u: int, v: int) -> Graph:
        if not self.has_edge(u, v):
            raise GraphError(f"({u},{v}) is not an edge")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj))

    def edge_subgraph(self, edges: Iterable[tuple[int, int]]) -> Graph:
        """Spanning subgraph keeping only ``edges`` (each must be an edge of self)."""
        adj = [0] * self.n
        for u, v in edges:
            if not self.has_edge(u, v):
                raise GraphError(f"({u},{v}) is not an edge of the host graph")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))

    def is_edge_subgraph_of(self, other: Graph) -> bool:
        return self.n == other.n and all(a & ~b == 0 for a, b in zip(self.adj, other.adj))

    def to_mask(self) -> int:
        """Edge mask over :func:`pair_order` (bit ``k`` = k-th pair)."""
        mask = 0
        for k, (i, j) in enumerate(pair_order(self.n)):
            if self.adj[i] >> j & 1:
                mask |= 1 << k
        return mask

    @classmethod
    def from_mask(cls, n: int, mask: int) -> Graph:
        adj = [0] * n
        for k, (i, j) in enumerate(pair_order(n)):
            if mask >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        return cls(n, tuple(adj))

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Graph on ``n`` vertices with the given edges (duplicates merged)."""
    if n < 1:
        raise GraphError(f"n must be >= 1, got {n}")
    adj = [0] * n
    for pair in edges:
        u, v = (int(x) for x in pair)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"vertex out of range in edge ({u},{v}) for n={n}")
        if u == v:
            raise GraphError(f"self-loop ({u},{v})")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


# ---------------------------------------------------------------------------
# Generators

def complete(s: int) -> Graph:
    _positive(s=s)
    return build_graph(s, [(i, j) for j in range(s) for i in range(j)])


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}: parts ``0..a-1`` and ``a..a+b-1``."""
    _positive(a=a, b=b)
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def path(n: int) -> Graph:
    """Path on ``n`` vertices ``0-1-...-(n-1)`` (length ``n-1``)."""
    _positive(n=n)
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(k: int) -> Graph:
    """K_{1,k} with centre 0."""
    _positive(k=k)
    return build_graph(k + 1, [(0, i) for i in range(1, k + 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def paw() -> Graph:
    """Triangle 0-1-2 with pendant vertex 3 attached to 0."""
    return build_graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)])


FAMILIES = {
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "path": path,
    "cycle": cycle,
    "star": star,
    "petersen": petersen,
    "paw": paw,
}


def generate(family: str, *params: int) -> Graph:
    try:
        fn = FAMILIES[family]
    except KeyError:
        raise GraphError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    return fn(*params)


def _positive(**params: int) -> None:
    for name, value in params.items():
        if value < 1:
            raise GraphError(f"{name} must be positive, got {value}")


# ---------------------------------------------------------------------------
# Metric and structural queries

@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs hop counts; ``None`` marks an unreachable pair."""

    dist: tuple[tuple[int | None, ...], ...]

    def __getitem__(self, ij: tuple[int, int]) -> int | None:
        i, j = ij
        return self.dist[i][j]

    @property
    def diameter(self) -> int | Marker:
        best = 0
        for row in self.dist:
            for d in row:
                if d is None:
                    return DISCONNECTED
                best = max(best, d)
        return best


def bfs(g: Graph, source: int) -> list[int | None]:
    dist: list[int | None] = [None] * g.n
    dist[source] = 0
    frontier = 1 << source
    seen = frontier
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.adj[v]
        nxt &= ~seen
        seen |= nxt
        for v in _bits(nxt):
            dist[v] = d
        frontier = nxt
    return dist


def distances(g: Graph) -> DistanceMatrix:
    return DistanceMatrix(tuple(tuple(bfs(g, v)) for v in range(g.n)))


def is_connected(g: Graph) -> bool:
    seen = frontier = 1
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def components(g: Graph) -> list[list[int]]:
    left = (1 << g.n) - 1
    out = []
    while left:
        start = left & -left
        seen = frontier = start
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        out.append(_bits(seen))
        left &= ~seen
    return out


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    max_degree: int
    min_degree: int
    is_regular: bool
    is_connected: bool
    bipartition: tuple[tuple[int, ...], tuple[int, ...]] | None
    odd_cycle: tuple[int, ...] | None
    diameter: int | Marker

    @property
    def is_bipartite(self) -> bool:
        return self.bipartition is not None


def two_coloring(g: Graph) -> tuple[list[int] | None, list[int] | None]:
    """BFS 2-colouring.

    Returns ``(colour, None)`` for bipartite graphs and ``(None, cycle)`` with
    an odd cycle (as a vertex list, closing edge implied) otherwise.
    """
    colour: list[int | None] = [None] * g.n
    parent: list[int | None] = [None] * g.n
    depth = [0] * g.n
    for root in range(g.n):
        if colour[root] is not None:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in _bits(g.adj[u]):
                if colour[v] is None:
                    colour[v] = 1 - colour[u]
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return None, _odd_cycle(u, v, parent, depth)
    return colour, None  # type: ignore[return-value]


def _odd_cycle(u, v, parent, depth) -> list[int]:
    left, right = [u], [v]
    a, b = u, v
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    # left ends and right ends at the common ancestor
    return left + right[-2::-1]


def structure_flags(g: Graph) -> GraphStats:
    colour, odd = two_coloring(g)
    bip = None
    if colour is not None:
        bip = (tuple(v for v in range(g.n) if colour[v] == 0),
               tuple(v for v in range(g.n) if colour[v] == 1))
        assert all(colour[u] != colour[v] for u, v in g.edges())
    degs = g.degrees
    return GraphStats(
        n=g.n,
        m=g.m,
        max_degree=max(degs),
        min_degree=min(degs),
        is_regular=max(degs) == min(degs),
        is_connected=is_connected(g),
        bipartition=bip,
        odd_cycle=tuple(odd) if odd is not None else None,
        diameter=distances(g).diameter,
    )


def distances_and_diameter(g: Graph) -> tuple[DistanceMatrix, int | Marker]:
    dm = distances(g)
    return dm, dm.diameter


def count_walks(g: Graph, k: int) -> int:
    """Number of walks with ``k`` vertices (grand sum of ``A**(k-1)``), exact."""
    if k < 1:
        raise ValueError("walks need k >= 1 vertices")
    vec = [1] * g.n
    rows = g.adjacency_lists()
    for _ in range(k - 1):
        vec = [sum(vec[u] for u in rows[v]) for v in range(g.n)]
    return sum(vec)


# ---------------------------------------------------------------------------
# Enumeration

def enumerate_connected(n: int) -> Iterator[Graph]:
    """Every labelled connected graph on ``n`` vertices, in edge-mask order."""
    if not 1 <= n <= MAX_ENUMERATE_N:
        raise GraphError(
            f"built-in enumeration supports 1 <= n <= {MAX_ENUMERATE_N}; "
            "supply a graph6 corpus file for larger n")
    from .masks import connected_masks

    for mask in connected_masks(n):
        yield Graph.from_mask(n, int(mask))


# ---------------------------------------------------------------------------
# Edge-list text format: "n m" header, then one "u v" line per edge.

def parse_edge_list(text: str) -> Graph:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise GraphError("edge list needs an 'n m' header line")
    n, m = (int(x) for x in lines[0])
    edges = [tuple(int(x) for x in ln) for ln in lines[1:]]
    if any(len(e) != 2 for e in edges):
        raise GraphError("each edge line must hold exactly two vertices")
    if len(edges) != m:
        raise GraphError(f"header declares {m} edges, found {len(edges)}")
    return build_graph(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"
