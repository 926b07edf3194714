"""Simple undirected graphs on at most 64 vertices, stored as bitmask rows.

Vertex sets are plain ``int`` bitmasks: bit ``v`` is set when vertex ``v``
(0-based) belongs to the set.  Every predicate below also accepts any
iterable of vertex indices and converts it with :func:`to_mask`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence, Union

from .errors import DegenerateInputError

MAX_VERTICES = 64

VertexSet = int
VertexSetLike = Union[int, Iterable[int]]


def to_mask(vertices: VertexSetLike) -> VertexSet:
    if isinstance(vertices, int):
        if vertices < 0:
            raise ValueError("vertex mask must be non-negative")
        return vertices
    mask = 0
    for v in vertices:
        if v < 0:
            raise ValueError(f"negative vertex index {v}")
        mask |= 1 << v
    return mask


def members(mask: VertexSet) -> tuple[int, ...]:
    """Vertices of ``mask`` in ascending order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def popcount(mask: VertexSet) -> int:
    return bin(mask).count("1")


def lowest(mask: VertexSet) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``0..n-1``; ``adj[v]`` is the neighbour mask of ``v``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count must be in 1..{MAX_VERTICES}, got {self.n}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency must have one row per vertex")
        full = self.full
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour index >= n")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in members(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete_multipartite(cls, sizes: Sequence[int]) -> "Graph":
        parts = _contiguous_parts(sizes)
        n = sum(sizes)
        edges = [
            (u, v)
            for a, b in combinations(parts, 2)
            for u in members(a)
            for v in members(b)
        ]
        return cls.from_edges(n, edges)

    @property
    def full(self) -> VertexSet:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in members(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def neighborhood(self, vertices: VertexSetLike) -> VertexSet:
        """Union of the open neighbourhoods of ``vertices``."""
        out = 0
        for v in members(to_mask(vertices)):
            out |= self.adj[v]
        return out

    def closed_neighborhood(self, vertices: VertexSetLike) -> VertexSet:
        mask = to_mask(vertices)
        return mask | self.neighborhood(mask)

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.n))


def _contiguous_parts(sizes: Sequence[int]) -> list[VertexSet]:
    parts, start = [], 0
    for size in sizes:
        if size < 1:
            raise ValueError("part sizes must be positive")
        parts.append(((1 << size) - 1) << start)
        start += size
    return parts


def _check_bound(g: Graph, mask: VertexSet) -> None:
    if mask & ~g.full:
        raise ValueError(f"vertex set {members(mask)} is not within 0..{g.n - 1}")


def complement(g: Graph) -> Graph:
    full = g.full
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def is_independent(g: Graph, a: VertexSetLike) -> bool:
    a = to_mask(a)
    _check_bound(g, a)
    return all(not g.adj[v] & a for v in members(a))


def is_maximal_independent(g: Graph, a: VertexSetLike) -> bool:
    a = to_mask(a)
    return is_independent(g, a) and g.closed_neighborhood(a) == g.full


def is_clique(g: Graph, c: VertexSetLike) -> bool:
    c = to_mask(c)
    _check_bound(g, c)
    return all((c & ~(1 << v)) & ~g.adj[v] == 0 for v in members(c))


def is_maximal_clique(g: Graph, c: VertexSetLike) -> bool:
    c = to_mask(c)
    if not is_clique(g, c):
        return False
    outside = g.full & ~c
    return not any(c & ~g.adj[v] == 0 for v in members(outside))


def dominates(g: Graph, a: VertexSetLike, b: VertexSetLike) -> bool:
    """True when every vertex of ``b`` has a neighbour in ``a``.

    Membership in ``a`` does not count: a vertex of ``a & b`` still needs
    an edge into ``a``.
    """
    a, b = to_mask(a), to_mask(b)
    _check_bound(g, a | b)
    return all(g.adj[v] & a for v in members(b))


def is_dominating_set(g: Graph, a: VertexSetLike) -> bool:
    """Every vertex is in ``a`` or adjacent to a vertex of ``a``."""
    a = to_mask(a)
    _check_bound(g, a)
    return g.closed_neighborhood(a) == g.full


def is_minimal_dominating_set(g: Graph, a: VertexSetLike) -> bool:
    # single deletions suffice because domination is closed under supersets
    a = to_mask(a)
    if not is_dominating_set(g, a):
        return False
    return not any(is_dominating_set(g, a & ~(1 << v)) for v in members(a))


def is_vertex_cover(g: Graph, b: VertexSetLike) -> bool:
    b = to_mask(b)
    _check_bound(g, b)
    rest = g.full & ~b
    return all(not g.adj[v] & rest for v in members(rest))


def is_partition(g: Graph, parts: Sequence[VertexSetLike]) -> bool:
    """Parts are non-empty, pairwise disjoint and cover every vertex."""
    seen = 0
    for part in parts:
        part = to_mask(part)
        if part == 0 or part & seen or part & ~g.full:
            return False
        seen |= part
    return seen == g.full


def is_partition_into_independent_sets(g: Graph, parts: Sequence[VertexSetLike]) -> bool:
    return is_partition(g, parts) and all(is_independent(g, p) for p in parts)


def is_clique_cover(g: Graph, parts: Sequence[VertexSetLike]) -> bool:
    """Disjoint maximal cliques whose union is the whole vertex set."""
    return is_partition(g, parts) and all(is_maximal_clique(g, p) for p in parts)


def induced(g: Graph, s: VertexSetLike) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``s``; the second item maps new index -> old index."""
    s = to_mask(s)
    _check_bound(g, s)
    if s == 0:
        raise DegenerateInputError("cannot induce a subgraph on an empty vertex set")
    old = members(s)
    new_of = {v: i for i, v in enumerate(old)}
    rows = tuple(to_mask(new_of[u] for u in members(g.adj[v] & s)) for v in old)
    return Graph(len(old), rows), old


def two_coloring(g: Graph) -> tuple[VertexSet, VertexSet] | None:
    """Bipartition ``(left, right)`` with vertex 0 of each component on the left, or None."""
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for u in members(g.adj[v]):
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    stack.append(u)
                elif color[u] == color[v]:
                    return None
    left = to_mask(v for v in range(g.n) if color[v] == 0)
    return left, g.full & ~left
