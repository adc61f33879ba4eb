"""
Test finite categories, cubical nerves and the fundamental category.
"""

import pytest
import os
import networkx as nx

import sys
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.boxcat import connection, degeneracy
from src.category import (FinCategory, find_category_isomorphism, from_poset, nerve, poset_category,
                          presentation, tau1, terminal_category, walking_isomorphism)
from src.complex import boundary, cube, is_isomorphic, k_complex, materialize
from src.errors import CubikError, DimensionMismatch, PreconditionError
from src.rewriting import knuth_bendix, orient, reduce_word


class TestFinCategory:
    """Composition tables, opposites and isomorphisms."""

    def test_poset_category(self):
        C = poset_category(2)
        assert C.objects == ("0", "1", "2")
        assert len(C.morphisms) == 6
        assert C.hom("0", "2") == ["0->2"]
        assert C.compose("1->2", "0->1") == "0->2"
        assert C.validate().ok

    def test_composition_needs_matching_ends(self):
        C = poset_category(2)
        with pytest.raises(CubikError):
            C.compose("0->1", "1->2")

    def test_cyclic_relations_are_rejected(self):
        graph = nx.DiGraph([("a", "b"), ("b", "a")])
        with pytest.raises(PreconditionError):
            from_poset(graph)

    def test_walking_isomorphism(self):
        I = walking_isomorphism()
        assert I.validate().ok
        assert I.inverse("u") == "v"
        assert I.is_isomorphism("v")
        assert not poset_category(1).is_isomorphism("0->1")

    def test_opposite(self):
        C = poset_category(1)
        op = C.opposite()
        assert op.validate().ok
        assert op.morphisms["0->1"] == ("1", "0")
        assert find_category_isomorphism(C, op) is not None

    def test_non_isomorphic_categories(self):
        assert find_category_isomorphism(poset_category(1), walking_isomorphism()) is None
        assert find_category_isomorphism(terminal_category(), poset_category(1)) is None

    def test_broken_table_is_reported(self):
        C = FinCategory("broken", ("a",), {"ida": ("a", "a"), "f": ("a", "a")}, {"a": "ida"},
                        {("ida", "ida"): "ida", ("f", "ida"): "f", ("ida", "f"): "f"})
        report = C.validate()
        assert not report.ok
        assert "f" in report.first


class TestNerve:
    """Cubes of N(C) are functors out of [1]^n."""

    @pytest.fixture
    def interval(self):
        return nerve(poset_category(1), 2)

    def test_counts(self, interval):
        assert interval.counts() == (2, 3, 6)
        assert len(interval.nondegenerate(1)) == 1
        assert interval.nondegenerate(2) == []

    def test_vertex_and_edge(self, interval):
        arrow = interval.edge("0->1")
        assert interval.face(arrow, 1, 0) == interval.vertex("0")
        assert interval.face(arrow, 1, 1) == interval.vertex("1")
        assert interval.label(arrow) == "0->1"

    def test_degeneracies_and_connections_of_an_arrow(self, interval):
        arrow = interval.edge("0->1")
        square = interval.act(arrow, connection(2, 1, 0))
        assert interval.face(square, 1, 0) == arrow
        assert interval.face(square, 2, 0) == arrow
        assert interval.is_degenerate(interval.act(arrow, degeneracy(2, 1)))

    def test_bound_is_enforced(self, interval):
        with pytest.raises(DimensionMismatch):
            interval.cubes(3)

    def test_squares_of_a_poset_commute(self):
        N = nerve(poset_category(2), 2)
        fillers = N.cubes_with_boundary(2, {
            (1, 0): N.edge("0->1"), (2, 1): N.edge("1->2"),
            (2, 0): N.edge("0->0"), (1, 1): N.edge("0->2"),
        })
        assert len(fillers) == 1

    def test_materialized_nerve_of_an_arrow_is_the_interval(self):
        result = materialize(nerve(poset_category(1), 1))
        assert is_isomorphic(result.complex, cube(1))


class TestTau1:
    """Fundamental categories of finite complexes."""

    def test_interval(self):
        assert len(tau1(cube(1)).category.morphisms) == 3

    def test_square(self):
        C = tau1(cube(2)).category
        assert len(C.morphisms) == 9
        assert C.validate().ok

    def test_k_is_the_walking_isomorphism(self):
        C = tau1(k_complex()).category
        assert find_category_isomorphism(C, walking_isomorphism()) is not None

    def test_boundary_of_the_square_is_free(self):
        pres = presentation(boundary(2))
        assert pres.relations == []
        C = tau1(boundary(2)).category
        assert len(C.hom("c00", "c11")) == 2

    def test_presentation_of_the_square(self):
        pres = presentation(cube(2))
        assert pres.relations == [(("c*0", "c1*"), ("c0*", "c*1"))]


class TestRewriting:
    def test_orient_uses_shortlex(self):
        assert orient(("a", "b"), ()) == (("a", "b"), ())
        assert orient(("a",), ("a",)) is None

    def test_knuth_bendix_completes_inverse_pair(self):
        rules = knuth_bendix([(("f", "e"), ()), (("e", "g"), ())])
        assert rules is not None
        assert reduce_word(("f", "e", "g"), rules) == reduce_word(("g",), rules) == reduce_word(("f",), rules)

    def test_knuth_bendix_gives_up(self):
        assert knuth_bendix([(("a", "b"), ("b", "a")), (("a", "a", "a"), ())], max_steps=0) is None


if __name__ == "__main__":
    pytest.main([__file__])
