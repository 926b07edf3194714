"""Recognition criteria for well-covered graphs that admit a cover by
disjoint maximal cliques, plus the bipartite matching checks.

Every checker returns a report object; a failed precondition makes the
report inapplicable instead of raising, so corpus scans keep running.
Only malformed arguments (an invalid cover, overlapping sides) raise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Optional, Sequence

from .enumeration import (
    DOMINATION_LIMIT,
    CliqueCover,
    MisReport,
    enumerate_maximal_cliques,
    enumerate_maximal_independent_sets,
    enumerate_minimal_dominating_sets,
    find_balanced_partition,
    find_clique_covers,
)
from .errors import DegenerateInputError, InvalidCoverError, SizeLimitError
from .graph import (
    Graph,
    VertexSet,
    VertexSetLike,
    complement,
    is_clique,
    is_clique_cover,
    is_dominating_set,
    is_minimal_dominating_set,
    is_partition,
    is_partition_into_independent_sets,
    lowest,
    members,
    popcount,
    to_mask,
    two_coloring,
)


def has_independent_dominating_set_outside(g: Graph, c: VertexSetLike) -> Optional[VertexSet]:
    """Find an independent ``A`` disjoint from ``c`` that dominates ``c``.

    Returns the first such set in lowest-vertex branching order, or None when
    every dominating set of ``c`` drawn from outside it contains an edge.
    Branching: take the lowest undominated vertex of ``c`` and try its
    admissible outside neighbours in ascending order; a neighbour whose
    subtree fails is excluded from later siblings.
    """
    c = to_mask(c)
    if c == 0:
        raise DegenerateInputError("clique must be non-empty")
    adj = g.adj
    outside = g.full & ~c

    def search(chosen: int, blocked: int, undominated: int) -> Optional[int]:
        if not undominated:
            return chosen
        rest = undominated
        while rest:
            bit = rest & -rest
            rest ^= bit
            if not adj[bit.bit_length() - 1] & outside & ~blocked:
                return None
        u = lowest(undominated)
        cands = adj[u] & outside & ~blocked
        while cands:
            bit = cands & -cands
            cands ^= bit
            nb = adj[bit.bit_length() - 1]
            found = search(chosen | bit, blocked | bit | nb, undominated & ~nb)
            if found is not None:
                return found
            blocked |= bit
        return None

    return search(0, 0, c)


@dataclass
class EquivalenceReport:
    """Verdicts of several conditions that a theorem claims are equivalent."""

    name: str
    applicable: bool
    s: Optional[int] = None
    cover: Optional[CliqueCover] = None
    verdicts: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, Any] = field(default_factory=dict)
    reason: str = ""

    @property
    def agree(self) -> bool:
        return not self.applicable or len(set(self.verdicts.values())) <= 1


def _validate_cover(g: Graph, cover: Sequence[VertexSetLike]) -> CliqueCover:
    cover = tuple(to_mask(c) for c in cover)
    if not is_clique_cover(g, cover):
        raise InvalidCoverError("cover must partition V(G) into maximal cliques")
    return cover


def _require_class_size(report: MisReport, s: int) -> None:
    if s not in report.sizes:
        raise InvalidCoverError(
            f"cover has {s} parts but no maximal independent set has that size"
        )


def check_clique_cover_criteria(
    g: Graph, cover: Sequence[VertexSetLike], report: Optional[MisReport] = None
) -> EquivalenceReport:
    """Compare well-coveredness, uniform well-coveredness and the
    no-independent-dominator condition for a disjoint maximal-clique cover
    whose size matches some maximal independent set."""
    cover = _validate_cover(g, cover)
    report = report or enumerate_maximal_independent_sets(g)
    _require_class_size(report, len(cover))

    out = EquivalenceReport("clique_cover_criteria", True, len(cover), cover)
    out.verdicts["well_covered"] = report.well_covered
    if not report.well_covered:
        out.witnesses["mis_sizes"] = sorted(report.sizes)
    balanced = find_balanced_partition(g, report)
    out.verdicts["uniformly_well_covered"] = balanced is not None
    if balanced is not None:
        out.witnesses["partition"] = balanced
    out.verdicts["no_independent_dominator"] = True
    for i, part in enumerate(cover):
        witness = has_independent_dominating_set_outside(g, part)
        if witness is not None:
            out.verdicts["no_independent_dominator"] = False
            out.witnesses["dominator"] = (i, witness)
            break
    return out


def check_complement_domination(
    g: Graph,
    parts: Sequence[VertexSetLike],
    limit: int = DOMINATION_LIMIT,
) -> EquivalenceReport:
    """Evaluate the three conditions of the complement-domination criterion
    for a partition of V(G) into cliques (an s-partition of the complement).

    The report is applicable only when some maximal independent set has
    exactly ``len(parts)`` vertices; without it the equivalence fails (a
    uniformly well-covered graph with a coarser clique partition).
    """
    parts = tuple(to_mask(p) for p in parts)
    if not is_partition(g, parts) or not all(is_clique(g, p) for p in parts):
        raise InvalidCoverError("parts must partition V(G) into cliques")
    if g.n > limit:
        raise SizeLimitError(f"minimal dominating set enumeration is limited to n <= {limit}")
    s = len(parts)
    report = enumerate_maximal_independent_sets(g)
    co = complement(g)

    out = EquivalenceReport("complement_domination", s in report.sizes, s, parts)
    if not out.applicable:
        out.reason = f"no maximal independent set of size {s}"
    dominating_sets = enumerate_minimal_dominating_sets(g, limit)
    parts_dominate = all(is_minimal_dominating_set(co, p) for p in parts)
    sizes_ok = all(popcount(m) == s for m in dominating_sets)
    out.verdicts["complement_domination"] = parts_dominate and sizes_ok
    if not sizes_ok:
        out.witnesses["dominating_set"] = next(m for m in dominating_sets if popcount(m) != s)
    out.verdicts["uniformly_well_covered"] = find_balanced_partition(g, report) is not None
    out.verdicts["well_covered_size_s"] = report.well_covered and report.min_size == s
    return out


def check_uniform_characterisations(
    g: Graph, s: Optional[int] = None, limit: int = DOMINATION_LIMIT
) -> EquivalenceReport:
    """Evaluate the four equivalent characterisations of uniform
    well-coveredness for a maximal-independent-set size ``s``.

    With ``s`` omitted the smallest size admitting an ``s``-part cover by
    disjoint maximal cliques is used.  No such size makes the report
    inapplicable.
    """
    report = enumerate_maximal_independent_sets(g)
    cliques = enumerate_maximal_cliques(g)
    candidates = sorted(report.sizes) if s is None else [s]
    covers: list[CliqueCover] = []
    for size in candidates:
        if size in report.sizes and size <= g.n:
            covers = find_clique_covers(g, size, cliques)
            if covers:
                s = size
                break
    out = EquivalenceReport("uniform_characterisations", bool(covers), s)
    if not covers:
        out.reason = "no disjoint maximal clique cover matches a maximal independent set size"
        return out
    out.cover = covers[0]

    out.verdicts["well_covered_with_cover"] = report.well_covered

    co = complement(g)
    dominating_cover = next(
        (cov for cov in covers if all(is_dominating_set(co, p) for p in cov)), None
    )
    dominating_sets = enumerate_minimal_dominating_sets(g, limit)
    well_dominated = {popcount(m) for m in dominating_sets} == {s}
    out.verdicts["complement_partite_well_dominated"] = dominating_cover is not None and well_dominated

    passing = None
    for cov in covers:
        if all(has_independent_dominating_set_outside(g, p) is None for p in cov):
            passing = cov
            break
    out.verdicts["cover_without_independent_dominator"] = passing is not None
    if passing is not None:
        out.witnesses["cover"] = passing
    out.verdicts["uniformly_well_covered"] = find_balanced_partition(g, report) is not None
    return out


# -- matchings --------------------------------------------------------------


@dataclass(frozen=True)
class MatchingCertificate:
    """Perfect matching between two disjoint vertex sets."""

    left: VertexSet
    right: VertexSet
    matching: tuple[tuple[int, int], ...]
    pair: Optional[tuple[int, int]] = None

    def verify(self, g: Graph) -> bool:
        used_left = to_mask(u for u, _ in self.matching)
        used_right = to_mask(v for _, v in self.matching)
        return (
            len(self.matching) == popcount(self.left) == popcount(self.right)
            and used_left == self.left
            and used_right == self.right
            and all(g.has_edge(u, v) for u, v in self.matching)
        )


def maximum_matching(g: Graph, left: VertexSetLike, right: VertexSetLike) -> dict[int, int]:
    """Maximum matching between ``left`` and ``right`` by augmenting paths.

    A greedy pass first gives each left vertex, in ascending order, its
    lowest free right neighbour; augmenting paths then fill the remaining
    left vertices.  Returns ``{left_vertex: right_vertex}``.
    """
    left, right = to_mask(left), to_mask(right)
    if left & right:
        raise ValueError("matching sides must be disjoint")
    mate_of_right: dict[int, int] = {}
    for u in members(left):
        free = g.adj[u] & right & ~to_mask(mate_of_right)
        if free:
            mate_of_right[lowest(free)] = u

    def augment(u: int, seen: set[int]) -> bool:
        for v in members(g.adj[u] & right):
            if v in seen:
                continue
            seen.add(v)
            if v not in mate_of_right or augment(mate_of_right[v], seen):
                mate_of_right[v] = u
                return True
        return False

    matched = to_mask(mate_of_right.values())
    for u in members(left & ~matched):
        augment(u, set())
    return {u: v for v, u in sorted(mate_of_right.items(), key=lambda kv: kv[1])}


def bipartite_matching(
    g: Graph, left: VertexSetLike, right: VertexSetLike
) -> Optional[MatchingCertificate]:
    """A perfect matching between ``left`` and ``right``, or None."""
    left, right = to_mask(left), to_mask(right)
    if left & right:
        raise ValueError("matching sides must be disjoint")
    if popcount(left) != popcount(right):
        return None
    mates = maximum_matching(g, left, right)
    if len(mates) != popcount(left):
        return None
    return MatchingCertificate(left, right, tuple(sorted(mates.items())))


@dataclass
class PartMatchingReport:
    applicable: bool
    reason: str = ""
    part_sizes: tuple[int, ...] = ()
    matchings: dict[tuple[int, int], Optional[MatchingCertificate]] = field(default_factory=dict)

    @property
    def equal_sizes(self) -> bool:
        return len(set(self.part_sizes)) <= 1

    @property
    def holds(self) -> bool:
        if not self.applicable:
            return True
        return self.equal_sizes and all(m is not None for m in self.matchings.values())


def verify_part_matchings(g: Graph, parts: Sequence[VertexSetLike]) -> PartMatchingReport:
    """Check equal part sizes and pairwise perfect matchings in an
    s-partite well-covered graph whose maximal cliques all have size s."""
    parts = tuple(to_mask(p) for p in parts)
    s = len(parts)
    if not is_partition_into_independent_sets(g, parts):
        return PartMatchingReport(False, "parts are not an s-partition into independent sets")
    sizes = {popcount(c) for c in enumerate_maximal_cliques(g)}
    if sizes != {s}:
        return PartMatchingReport(False, f"maximal clique sizes {sorted(sizes)} differ from {s}")
    if not enumerate_maximal_independent_sets(g).well_covered:
        return PartMatchingReport(False, "graph is not well-covered")
    out = PartMatchingReport(True, part_sizes=tuple(popcount(p) for p in parts))
    for i, j in combinations(range(s), 2):
        cert = bipartite_matching(g, parts[i], parts[j])
        if cert is not None:
            cert = MatchingCertificate(cert.left, cert.right, cert.matching, (i, j))
        out.matchings[(i, j)] = cert
    return out


@dataclass
class MatchedEdgeResult:
    applicable: bool
    verdict: Optional[bool] = None
    matching: tuple[tuple[int, int], ...] = ()
    offending_edge: Optional[tuple[int, int]] = None
    offending_pair: Optional[tuple[int, int]] = None
    reason: str = ""


def matched_edge_check(g: Graph) -> MatchedEdgeResult:
    """Bipartite well-coveredness via a perfect matching whose every edge
    ``xy`` has ``N(x)`` completely joined to ``N(y)``."""
    sides = two_coloring(g)
    if sides is None:
        return MatchedEdgeResult(False, reason="graph is not bipartite")
    if any(row == 0 for row in g.adj):
        return MatchedEdgeResult(False, reason="graph has an isolated vertex")
    left, right = sides
    mates = maximum_matching(g, left, right)
    matching = tuple(sorted(mates.items()))
    if len(mates) * 2 != g.n:
        return MatchedEdgeResult(True, False, matching, reason="no perfect matching")
    for x, y in matching:
        for a in members(g.adj[x] & ~(1 << y)):
            missing = g.adj[y] & ~(1 << x) & ~g.adj[a]
            if missing:
                return MatchedEdgeResult(
                    True,
                    False,
                    matching,
                    offending_edge=(x, y),
                    offending_pair=(a, lowest(missing)),
                    reason="neighbourhood of a matched edge is not complete bipartite",
                )
    return MatchedEdgeResult(True, True, matching)
