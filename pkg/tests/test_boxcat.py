"""
Test the box category: generators, normal forms and vertex semantics.
"""

import pytest
import os
import itertools

import sys
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.boxcat import (BOX_0, BOX_1, BoxOperator, compose, compose_all, connection, critical_edge,
                        degeneracy, evaluate, face, face_gen, hom_set, identity, involute, minus_forms,
                        normal_forms, operator_of_pattern, parse_operator, pattern_of, classify,
                        tensor_operator, total_degeneracy)
from src.errors import DimensionMismatch, InvalidOperator
from src.suites import generator_pair_check, involution_check, normal_form_check


class TestGenerators:
    """Generators, sections and the identities table."""

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_degeneracy_is_a_section_of_face(self, n):
        for i in range(1, n + 1):
            for eps in (0, 1):
                assert compose(degeneracy(n, i), face(n, i, eps)) == identity(n - 1)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_connection_is_a_section_of_face(self, n):
        for i in range(1, n):
            for eps in (0, 1):
                assert compose(connection(n, i, eps), face(n, i, eps)) == identity(n - 1)
                assert compose(connection(n, i, eps), face(n, i + 1, eps)) == identity(n - 1)

    def test_opposite_sign_face_of_connection_is_constant(self):
        result = compose(connection(2, 1, 0), face(2, 1, 1))
        assert result == BoxOperator(1, 1, faces=((1, 1),), degens=(1,))
        assert evaluate(result).table == ((1,), (1,))

    def test_connection_vertex_functions(self):
        assert evaluate(connection(2, 1, 0)).table == ((0,), (1,), (1,), (1,))
        assert evaluate(connection(2, 1, 1)).table == ((0,), (0,), (0,), (1,))

    def test_illegal_generators_are_rejected(self):
        with pytest.raises(InvalidOperator):
            face_gen(2, 3, 0)
        with pytest.raises(InvalidOperator):
            connection(1, 1, 0)
        with pytest.raises(InvalidOperator):
            BoxOperator(2, 0, degens=(2, 1))

    def test_compose_checks_dimensions(self):
        with pytest.raises(DimensionMismatch):
            compose(face(3, 1, 0), face(1, 1, 0))

    def test_compose_is_associative_on_small_hom_sets(self):
        for f in hom_set(1, 2):
            for g in hom_set(2, 2):
                for h in hom_set(2, 1):
                    assert compose(h, compose(g, f)) == compose(compose(h, g), f)

    def test_compose_all(self):
        assert compose_all(degeneracy(2, 1), connection(3, 2, 0), face(3, 3, 0)) == \
            compose(degeneracy(2, 1), compose(connection(3, 2, 0), face(3, 3, 0)))

    def test_total_degeneracy(self):
        assert total_degeneracy(3).cod == 0
        assert compose(total_degeneracy(2), face(2, 1, 1)) == total_degeneracy(1)

    @pytest.mark.unit
    def test_every_generator_pair_matches_vertex_semantics(self):
        report = generator_pair_check(4)
        assert report.checked > 0
        assert report.ok, report.witnesses


class TestHomSets:
    """Enumeration of hom-sets and normal forms."""

    def test_small_hom_set_sizes(self):
        assert len(hom_set(1, 1)) == 3
        assert len(hom_set(1, 2)) == 8
        assert len(hom_set(0, 2)) == 4

    def test_hom_set_excludes_the_diagonal(self):
        tables = {evaluate(f).table for f in hom_set(1, 2)}
        assert ((0, 0), (1, 1)) not in tables

    @pytest.mark.parametrize("m,n", [(0, 0), (1, 1), (2, 1), (1, 2), (2, 2), (3, 2)])
    def test_closure_matches_normal_forms(self, m, n):
        assert hom_set(m, n) == normal_forms(m, n)

    def test_minus_forms_have_no_faces(self):
        forms = minus_forms(3, 1)
        assert forms
        assert all(f.is_minus for f in forms)

    def test_normal_forms_are_monotone_and_distinct(self):
        forms = normal_forms(2, 2)
        assert all(evaluate(f).is_monotone() for f in forms)
        assert len({evaluate(f) for f in forms}) == len(forms)

    @pytest.mark.slow
    def test_normal_forms_up_to_dimension_four(self):
        report = normal_form_check(4)
        assert report.ok, report.witnesses


class TestRendering:
    """Canonical text of operators."""

    def test_render_and_parse(self):
        op = compose(connection(2, 1, 0), degeneracy(3, 3))
        assert op.render() == "g1_0 s3"
        assert parse_operator("g1_0 s3", 3) == op

    def test_parse_normalizes(self):
        assert parse_operator("s1 d1_0", 0) == identity(0)
        assert parse_operator("g1_0 d1_1", 1) == BoxOperator(1, 1, faces=((1, 1),), degens=(1,))

    def test_identity_rendering(self):
        assert identity(2).render() == "id2"
        assert parse_operator("id2", 2) == identity(2)

    def test_parse_errors(self):
        with pytest.raises(InvalidOperator):
            parse_operator("x1", 1)
        with pytest.raises(DimensionMismatch):
            parse_operator("id2", 1)
        with pytest.raises(InvalidOperator):
            parse_operator("d1", 1)

    def test_patterns(self):
        edge = critical_edge(2, 1, 0)
        assert pattern_of(edge) == "*1"
        assert operator_of_pattern("*1") == edge
        assert evaluate(edge).table == ((0, 1), (1, 1))
        with pytest.raises(InvalidOperator):
            operator_of_pattern("*2")


class TestInvolutionsAndTensor:
    """co, coop, op and the tensor of operators."""

    def test_involutions_on_faces(self):
        assert involute(face(2, 1, 0), "co") == face(2, 2, 0)
        assert involute(face(2, 1, 0), "coop") == face(2, 1, 1)
        assert involute(face(2, 1, 0), "op") == face(2, 2, 1)

    def test_involutions_on_connections(self):
        assert involute(connection(3, 1, 0), "co") == connection(3, 2, 0)
        assert involute(connection(3, 1, 0), "coop") == connection(3, 1, 1)

    def test_unknown_involution(self):
        with pytest.raises(InvalidOperator):
            involute(face(1, 1, 0), "flip")

    def test_involutions_are_involutive_functors(self):
        report = involution_check(2)
        assert report.ok, report.witnesses

    def test_tensor_operator(self):
        assert tensor_operator(face(1, 1, 0), identity(1)) == face(2, 1, 0)
        assert tensor_operator(identity(1), face(1, 1, 0)) == face(2, 2, 0)
        assert tensor_operator(degeneracy(1, 1), identity(2)) == degeneracy(3, 1)

    def test_tensor_is_functorial(self):
        ops = hom_set(1, 1)
        for f, g in itertools.product(ops, repeat=2):
            for h, k in itertools.product(ops, repeat=2):
                assert compose(tensor_operator(h, k), tensor_operator(f, g)) == \
                    tensor_operator(compose(h, f), compose(k, g))

    def test_classification(self):
        c = classify(connection(2, 1, 0))
        assert c.part == "minus"
        assert BOX_0 in c.variants
        assert BOX_1 not in c.variants
        assert classify(identity(2)).part == "identity"
        assert classify(face(2, 1, 0)).part == "plus"


if __name__ == "__main__":
    pytest.main([__file__])
