import pytest
from hypothesis import given

from wellcover.enumeration import enumerate_maximal_independent_sets
from wellcover.errors import DegenerateInputError, InvalidCoverError
from wellcover.graph import Graph, dominates, is_independent, to_mask
from wellcover.lab import find_s_partition
from wellcover.recognition import (
    bipartite_matching,
    check_clique_cover_criteria,
    check_complement_domination,
    check_uniform_characterisations,
    has_independent_dominating_set_outside,
    maximum_matching,
    matched_edge_check,
    verify_part_matchings,
)

from . import oracles
from .conftest import C4, C5, C6, G_A, G_C, G_D, OCTAHEDRON, P3, P4, S
from .strategies import graphs, graphs_with_subset

# Well-covered, coverable by three disjoint edges, and uniformly well-covered,
# yet {1,2} dominates the graph so its domination number is 2, not 3.
DOMINATION_GAP = Graph.from_edges(6, [(0, 1), (0, 3), (0, 5), (1, 2), (1, 4), (2, 3)])


class TestIndependentDominator:
    def test_examples(self):
        assert has_independent_dominating_set_outside(C6, S(1, 2)) == S(3, 6)
        assert has_independent_dominating_set_outside(G_C, S(1, 5, 6)) is None
        assert has_independent_dominating_set_outside(P4, S(1, 2)) is None

    def test_empty_clique(self):
        with pytest.raises(DegenerateInputError):
            has_independent_dominating_set_outside(C6, 0)

    @given(graphs_with_subset())
    def test_agrees_with_exhaustive_search(self, gs):
        g, c = gs
        if not c:
            return
        found = has_independent_dominating_set_outside(g, c)
        everything = oracles.independent_dominators_outside(g, c)
        if found is None:
            assert everything == []
        else:
            assert found in everything
            assert is_independent(g, found) and not found & c and dominates(g, found, c)


class TestCliqueCoverCriteria:
    def test_uniform_fixture(self):
        r = check_clique_cover_criteria(G_C, [S(1, 5, 6), S(2, 3, 4)])
        assert r.verdicts == dict.fromkeys(r.verdicts, True) and len(r.verdicts) == 3

    def test_hexagon(self):
        r = check_clique_cover_criteria(C6, [S(1, 2), S(3, 4), S(5, 6)])
        assert set(r.verdicts.values()) == {False}
        assert r.witnesses["dominator"] == (0, S(3, 6))

    def test_square(self):
        r = check_clique_cover_criteria(C4, [S(1, 2), S(3, 4)])
        assert set(r.verdicts.values()) == {True} and r.agree

    def test_rejects_bad_covers(self):
        with pytest.raises(InvalidCoverError):
            check_clique_cover_criteria(G_A, [S(1, 2), S(3, 4), S(5, 6)])
        with pytest.raises(InvalidCoverError):
            # a valid cover of K4 by one clique, but K4 has no independent set of size... it does: 1
            check_clique_cover_criteria(Graph.complete(4), [0b0011, 0b1100])


class TestComplementDomination:
    def test_uniform_fixture(self):
        r = check_complement_domination(G_C, [S(1, 5, 6), S(2, 3, 4)])
        assert r.applicable and set(r.verdicts.values()) == {True}

    def test_not_well_covered(self):
        r = check_complement_domination(G_A, [S(1, 2), S(3, 4), S(5, 6)])
        assert r.applicable and set(r.verdicts.values()) == {False}

    def test_single_edge(self):
        r = check_complement_domination(Graph.complete(2), [0b11])
        assert r.applicable and set(r.verdicts.values()) == {True}

    def test_part_count_without_matching_independent_set(self):
        # C4 is uniformly well-covered with two parts; four singletons do not qualify
        r = check_complement_domination(C4, [1, 2, 4, 8])
        assert not r.applicable and r.agree

    def test_rejects_non_clique_parts(self):
        with pytest.raises(InvalidCoverError):
            check_complement_domination(C4, [S(1, 3), S(2, 4)])


class TestUniformCharacterisations:
    def test_uniform_fixture(self):
        r = check_uniform_characterisations(G_C)
        assert r.applicable and r.s == 2 and len(r.verdicts) == 4
        assert set(r.verdicts.values()) == {True}

    def test_hexagon(self):
        r = check_uniform_characterisations(C6)
        assert r.applicable and r.s == 3 and set(r.verdicts.values()) == {False}

    def test_no_cover(self):
        assert not check_uniform_characterisations(G_D).applicable

    def test_domination_condition_diverges_on_pinned_graph(self):
        r = check_uniform_characterisations(DOMINATION_GAP, 3)
        assert r.cover == (S(1, 6), S(2, 5), S(3, 4))
        assert r.verdicts == {
            "well_covered_with_cover": True,
            "complement_partite_well_dominated": False,
            "cover_without_independent_dominator": True,
            "uniformly_well_covered": True,
        }
        assert not r.agree


class TestMatching:
    def test_examples(self):
        assert maximum_matching(C4, S(1, 3), S(2, 4)) == {0: 1, 2: 3}
        cert = bipartite_matching(C6, S(1, 3, 5), S(2, 4, 6))
        assert cert is not None and cert.verify(C6)
        assert bipartite_matching(P3, S(2), S(1, 3)) is None

    def test_overlapping_sides(self):
        with pytest.raises(ValueError):
            maximum_matching(C4, S(1, 2), S(2, 3))

    @given(graphs_with_subset())
    def test_matching_size_is_maximum(self, gs):
        g, left = gs
        right = g.full & ~left
        mates = maximum_matching(g, left, right)
        assert all(g.has_edge(u, v) for u, v in mates.items())
        assert len(set(mates.values())) == len(mates)
        assert len(mates) == _brute_matching(g, oracles.bits(left), right)


def _brute_matching(g, lefts, right):
    if not lefts:
        return 0
    u, rest = lefts[0], lefts[1:]
    best = _brute_matching(g, rest, right)
    for v in oracles.bits(g.adj[u] & right):
        best = max(best, 1 + _brute_matching(g, rest, right & ~(1 << v)))
    return best


class TestPartMatchings:
    def test_octahedron(self):
        r = verify_part_matchings(OCTAHEDRON, [S(1, 2), S(3, 4), S(5, 6)])
        assert r.applicable and r.part_sizes == (2, 2, 2) and r.holds
        assert len(r.matchings) == 3 and all(m.verify(OCTAHEDRON) for m in r.matchings.values())

    def test_square(self):
        r = verify_part_matchings(C4, [S(1, 3), S(2, 4)])
        assert r.applicable and r.holds

    def test_mixed_clique_sizes(self):
        parts = find_s_partition(G_D, 3)
        assert parts is not None
        r = verify_part_matchings(G_D, parts)
        assert not r.applicable and "clique" in r.reason


class TestMatchedEdges:
    def test_path(self):
        r = matched_edge_check(P4)
        assert r.applicable and r.verdict and r.matching == ((0, 1), (2, 3))

    def test_hexagon(self):
        r = matched_edge_check(C6)
        assert r.applicable and r.verdict is False
        (x, y), (a, b) = r.offending_edge, r.offending_pair
        assert C6.has_edge(x, y) and C6.has_edge(x, a) and C6.has_edge(y, b)
        assert not C6.has_edge(a, b)

    def test_square(self):
        assert matched_edge_check(C4).verdict is True

    def test_inapplicable(self):
        assert not matched_edge_check(C5).applicable
        assert not matched_edge_check(Graph.from_edges(3, [(0, 1)])).applicable

    def test_no_perfect_matching(self):
        star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        r = matched_edge_check(star)
        assert r.applicable and r.verdict is False and r.reason == "no perfect matching"

    @given(graphs(max_n=8))
    def test_agrees_with_enumeration(self, g):
        r = matched_edge_check(g)
        if r.applicable:
            assert r.verdict == enumerate_maximal_independent_sets(g).well_covered


def test_cover_accepts_label_iterables():
    r = check_clique_cover_criteria(G_C, [to_mask([0, 4, 5]), {1, 2, 3}])
    assert r.agree
