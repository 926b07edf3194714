"""Exhaustive enumeration: maximal independent sets, maximal cliques,
disjoint maximal-clique covers and minimal dominating sets.

These routines are the ground truth every other route is checked against.
All outputs are deterministic: vertex-set lists are sorted by mask value and
searches branch on the lowest vertex first.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional, Sequence, Union

from .errors import SizeLimitError
from .graph import (
    Graph,
    VertexSet,
    dominates,
    is_clique_cover,
    is_dominating_set,
    is_independent,
    is_maximal_independent,
    lowest,
    members,
    popcount,
    to_mask,
)

DOMINATION_LIMIT = 16

CliqueCover = tuple[VertexSet, ...]


@dataclass(frozen=True)
class MisReport:
    """All maximal independent sets of a graph, sorted ascending by mask."""

    sets: tuple[VertexSet, ...]
    min_size: int
    max_size: int

    @property
    def independence_number(self) -> int:
        return self.max_size

    @property
    def sizes(self) -> frozenset[int]:
        return frozenset(popcount(m) for m in self.sets)

    @property
    def well_covered(self) -> bool:
        return self.min_size == self.max_size


def _bron_kerbosch(rows: Sequence[int], full: int) -> list[int]:
    """Maximal cliques of the graph whose neighbour masks are ``rows``.

    Tomita-style pivoting: branch only on candidates outside the pivot's
    neighbourhood, the pivot maximising ``|P & N(u)|`` over ``P | X``.
    """
    found: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p:
            if not x:
                found.append(r)
            return
        px = p | x
        best, pivot_nbrs = -1, 0
        while px:
            u = px & -px
            px ^= u
            nb = rows[u.bit_length() - 1]
            score = popcount(p & nb)
            if score > best:
                best, pivot_nbrs = score, nb
        todo = p & ~pivot_nbrs
        while todo:
            bit = todo & -todo
            todo ^= bit
            nb = rows[bit.bit_length() - 1]
            expand(r | bit, p & nb, x & nb)
            p &= ~bit
            x |= bit

    expand(0, full, 0)
    found.sort()
    return found


def enumerate_maximal_independent_sets(g: Graph) -> MisReport:
    """Every maximal independent set of ``g`` exactly once, ascending by mask."""
    full = g.full
    non_adj = [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)]
    sets = tuple(_bron_kerbosch(non_adj, full))
    sizes = [popcount(m) for m in sets]
    return MisReport(sets, min(sizes), max(sizes))


def enumerate_maximal_cliques(g: Graph) -> list[VertexSet]:
    return _bron_kerbosch(g.adj, g.full)


# -- certificates -----------------------------------------------------------


@dataclass(frozen=True)
class WellCovered:
    common_size: int
    verdict = True

    def verify(self, g: Graph) -> bool:
        report = enumerate_maximal_independent_sets(g)
        return report.well_covered and report.min_size == self.common_size


@dataclass(frozen=True)
class NotWellCovered:
    witness_small: VertexSet
    witness_large: VertexSet
    verdict = False

    def verify(self, g: Graph) -> bool:
        return (
            is_maximal_independent(g, self.witness_small)
            and is_maximal_independent(g, self.witness_large)
            and popcount(self.witness_small) != popcount(self.witness_large)
        )


@dataclass(frozen=True)
class UniformlyWellCovered:
    partition: CliqueCover
    verdict = True

    def verify(self, g: Graph) -> bool:
        if not is_clique_cover(g, self.partition):
            return False
        report = enumerate_maximal_independent_sets(g)
        return all(
            popcount(m & part) == 1 for m in report.sets for part in self.partition
        )


NO_COVER = "no-cover-exists"
INDEPENDENT_DOMINATOR = "independent-dominator"


@dataclass(frozen=True)
class NotUniform:
    """No partition balances the independence complex.

    With ``reason == INDEPENDENT_DOMINATOR`` the fields name the first cover
    tried, the failing part's index and an independent set outside that part
    dominating it.
    """

    reason: str
    cover: Optional[CliqueCover] = None
    clique_index: Optional[int] = None
    witness: Optional[VertexSet] = None
    verdict = False

    def verify(self, g: Graph) -> bool:
        if self.reason == NO_COVER:
            return not find_all_clique_covers(g)
        if self.reason != INDEPENDENT_DOMINATOR or self.cover is None:
            return False
        part = self.cover[self.clique_index]
        witness_ok = (
            is_clique_cover(g, self.cover)
            and self.witness is not None
            and is_independent(g, self.witness)
            and not self.witness & part
            and dominates(g, self.witness, part)
        )
        return witness_ok and isinstance(is_uniformly_well_covered(g), NotUniform)


Certificate = Union[WellCovered, NotWellCovered, UniformlyWellCovered, NotUniform]


def is_well_covered(g: Graph, report: Optional[MisReport] = None) -> Certificate:
    report = report or enumerate_maximal_independent_sets(g)
    if report.well_covered:
        return WellCovered(report.min_size)
    small = next(m for m in report.sets if popcount(m) == report.min_size)
    large = next(m for m in report.sets if popcount(m) == report.max_size)
    return NotWellCovered(small, large)


# -- clique covers ----------------------------------------------------------


def _covers(g: Graph, cliques: Sequence[int], limit: Optional[int]) -> Iterator[CliqueCover]:
    full = g.full
    by_vertex: list[list[int]] = [[] for _ in range(g.n)]
    for c in cliques:
        for v in members(c):
            by_vertex[v].append(c)

    parts: list[int] = []

    def search(covered: int) -> Iterator[CliqueCover]:
        if covered == full:
            yield tuple(parts)
            return
        if limit is not None and len(parts) >= limit:
            return
        u = lowest(full & ~covered)
        for c in by_vertex[u]:
            if c & covered:
                continue
            parts.append(c)
            yield from search(covered | c)
            parts.pop()

    yield from search(0)


def find_all_clique_covers(g: Graph, cliques: Optional[Sequence[int]] = None) -> list[CliqueCover]:
    """Every partition of the vertex set into maximal cliques, any part count."""
    if cliques is None:
        cliques = enumerate_maximal_cliques(g)
    return list(_covers(g, cliques, None))


def find_clique_covers(
    g: Graph, s: int, cliques: Optional[Sequence[int]] = None
) -> list[CliqueCover]:
    """Partitions of V(G) into exactly ``s`` maximal cliques.

    Each cover is emitted once, its parts ordered by their smallest vertex.
    """
    if not 1 <= s <= g.n:
        raise ValueError(f"part count must be in 1..{g.n}, got {s}")
    if cliques is None:
        cliques = enumerate_maximal_cliques(g)
    return [c for c in _covers(g, cliques, s) if len(c) == s]


def is_uniformly_well_covered(g: Graph) -> Certificate:
    """Decide uniform well-coveredness through the clique-domination criterion.

    A cover of the vertex set by disjoint maximal cliques certifies the graph
    when no independent set outside any part dominates that part.  Covers are
    tried in search order and the first passing one is returned.
    """
    from .recognition import has_independent_dominating_set_outside

    covers = find_all_clique_covers(g)
    if not covers:
        return NotUniform(NO_COVER)
    first_failure = None
    for cover in covers:
        for i, part in enumerate(cover):
            witness = has_independent_dominating_set_outside(g, part)
            if witness is not None:
                if first_failure is None:
                    first_failure = NotUniform(INDEPENDENT_DOMINATOR, cover, i, witness)
                break
        else:
            return UniformlyWellCovered(cover)
    return first_failure


def find_balanced_partition(
    g: Graph, report: Optional[MisReport] = None
) -> Optional[CliqueCover]:
    """Search for a partition meeting every maximal independent set exactly once.

    Works straight from the definition.  Two non-adjacent vertices extend to
    a common maximal independent set, so parts must be cliques; a clique is
    admissible only if every maximal independent set meets it.  Returns the
    first partition found (lowest-vertex branching) or None.
    """
    report = report or enumerate_maximal_independent_sets(g)
    if not report.well_covered:
        return None
    target = report.min_size
    sets = report.sets
    full = g.full

    def hits_all(c: int) -> bool:
        return all(m & c for m in sets)

    def cliques_with(u: int, pool: int) -> Iterator[int]:
        # cliques containing u drawn from pool, ascending-vertex extension
        def grow(c: int, cand: int) -> Iterator[int]:
            yield c
            while cand:
                bit = cand & -cand
                cand ^= bit
                v = bit.bit_length() - 1
                yield from grow(c | bit, cand & g.adj[v])

        yield from grow(1 << u, pool & g.adj[u])

    parts: list[int] = []

    def search(covered: int) -> Optional[CliqueCover]:
        if covered == full:
            return tuple(parts) if len(parts) == target else None
        if len(parts) >= target:
            return None
        u = lowest(full & ~covered)
        for c in sorted(cliques_with(u, full & ~covered)):
            if not hits_all(c):
                continue
            parts.append(c)
            found = search(covered | c)
            if found is not None:
                return found
            parts.pop()
        return None

    return search(0)


# -- domination -------------------------------------------------------------


def enumerate_minimal_dominating_sets(g: Graph, limit: int = DOMINATION_LIMIT) -> list[VertexSet]:
    """All minimal dominating sets, ascending by mask.

    Candidates are visited by increasing size; a dominating candidate that
    contains no previously found minimal set is itself minimal.
    """
    if g.n > limit:
        raise SizeLimitError(f"minimal dominating set enumeration is limited to n <= {limit}")
    found: list[int] = []
    for k in range(1, g.n + 1):
        for combo in combinations(range(g.n), k):
            mask = to_mask(combo)
            if any(m & mask == m for m in found):
                continue
            if is_dominating_set(g, mask):
                found.append(mask)
    found.sort()
    return found


def domination_number(g: Graph, limit: int = DOMINATION_LIMIT) -> int:
    return min(popcount(m) for m in enumerate_minimal_dominating_sets(g, limit))


def is_well_dominated(g: Graph, limit: int = DOMINATION_LIMIT) -> bool:
    return len({popcount(m) for m in enumerate_minimal_dominating_sets(g, limit)}) == 1
