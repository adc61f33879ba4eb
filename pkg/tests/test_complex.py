"""
Test finite cubical complexes, their maps, quotients and standard shapes.
"""

import pytest
import os

import sys
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.boxcat import connection, degeneracy, face, hom_set, identity
from src.complex import (ComplexMap, CubeRef, CubicalComplex, boundary, complex_maps, count_maps, cube,
                         disjoint_union, find_isomorphism, flat, image, inclusion_map, inner_cube,
                         inner_open_box, involuted, is_isomorphic, is_mono, k_complex, k_prime,
                         marked_open_box, materialize, open_box, pi0, point, pushout, quotient,
                         remove_cubes, sharp, standard_shape, subcomplex, three_out_of_four, validate)
from src.errors import BudgetExceeded, DimensionMismatch, InvalidOperator, PreconditionError
from src.unionfind import UnionFind


class TestStandardShapes:
    """Cubes, boxes and the complexes K and K'."""

    @pytest.mark.parametrize("n,counts", [(0, (1,)), (1, (2, 1)), (2, (4, 4, 1)), (3, (8, 12, 6, 1))])
    def test_cube_counts(self, n, counts):
        assert cube(n).counts() == counts
        assert validate(cube(n)).ok

    def test_boundary_and_open_boxes(self):
        assert boundary(2).counts() == (4, 4)
        assert open_box(2, 1, 0).counts() == (4, 3)
        assert open_box(1, 1, 0).counts() == (1,)
        assert inner_open_box(2, 1, 0).counts() == (3, 2)
        assert inner_cube(2, 1, 0).counts() == (3, 3, 1)

    def test_inner_boxes_need_dimension_two(self):
        with pytest.raises(InvalidOperator, match="needs n >= 2"):
            inner_open_box(1, 1, 0)
        with pytest.raises(InvalidOperator, match="index must lie in 1..2"):
            open_box(2, 3, 0)
        with pytest.raises(InvalidOperator, match="sign"):
            open_box(2, 1, 2)

    def test_k_complex(self):
        K = k_complex()
        assert K.counts() == (2, 3, 2)
        assert validate(K).ok
        assert K.act(K.ref("s1"), face(2, 2, 0)) == CubeRef("1", degeneracy(1, 1))
        assert k_prime().marked_edges() == ["e"]

    def test_marked_shapes(self):
        box = marked_open_box(2, 1, 0)
        assert len(box.marked) == 1
        assert marked_open_box(1, 1, 0).marked == frozenset()
        assert len(three_out_of_four(1, 0).marked) == 3

    def test_standard_shape_dispatch(self):
        assert standard_shape("open_box", 2, 1, 0).counts() == (4, 3)
        assert standard_shape("K").counts() == (2, 3, 2)
        assert standard_shape("point").counts() == (1,)
        with pytest.raises(InvalidOperator):
            standard_shape("cube")


class TestCubicalComplex:
    """Acting by operators and validating face tables."""

    @pytest.fixture
    def square(self):
        return cube(2)

    def test_faces_follow_patterns(self, square):
        top = square.ref("c**")
        assert square.face(top, 1, 0) == square.ref("c0*")
        assert square.face(top, 2, 1) == square.ref("c*1")
        assert square.act(top, face(2, 1, 1)) == square.ref("c1*")

    def test_degenerate_cubes(self, square):
        edge = square.ref("c*0")
        flat_square = square.act(edge, degeneracy(2, 2))
        assert square.is_degenerate(flat_square)
        assert square.face(flat_square, 2, 0) == edge
        assert square.face(flat_square, 1, 0) == square.act(square.ref("c00"), degeneracy(1, 1))

    def test_connection_faces(self, square):
        edge = square.ref("c*0")
        c = square.act(edge, connection(2, 1, 0))
        assert square.face(c, 1, 0) == edge
        assert square.face(c, 2, 0) == edge

    def test_cubes_are_minus_forms_of_non_degenerate_cubes(self):
        assert len(cube(1).cubes(1)) == 1 + 2
        assert len(point().cubes(2)) == 1

    def test_validate_reports_broken_tables(self):
        dims = {"a": 0, "b": 0, "x": 2}
        flat_on = lambda c: CubeRef(c, degeneracy(1, 1))
        faces = {("x", 1, 0): flat_on("a"), ("x", 1, 1): flat_on("b"),
                 ("x", 2, 0): flat_on("a"), ("x", 2, 1): flat_on("a")}
        report = validate(CubicalComplex("broken", dims, faces))
        assert not report.ok
        assert report.first is not None

    def test_missing_face_is_reported(self):
        report = validate(CubicalComplex("open", {"a": 0, "e": 1}, {("e", 1, 0): CubeRef("a", identity(0))}))
        assert not report.ok
        assert "missing face" in report.first

    def test_marks_must_be_edges(self, square):
        with pytest.raises(DimensionMismatch):
            square.with_marks(["c**"])
        assert len(sharp(square).marked) == 4
        assert flat(sharp(square)).marked == frozenset()

    def test_involution_of_explicit_complex(self, square):
        co = involuted(square, "co")
        assert isinstance(co, CubicalComplex)
        assert is_isomorphic(co, square)
        assert validate(involuted(k_complex(), "op")).ok


class TestMaps:
    """Enumeration of maps, monos and isomorphisms."""

    @pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (2, 1), (2, 2)])
    def test_yoneda_counts(self, m, n):
        assert count_maps(cube(m), cube(n)) == len(hom_set(m, n))

    def test_fixed_images(self):
        X = cube(1)
        maps = list(complex_maps(X, X, fixed={"c0": X.ref("c1")}))
        assert len(maps) == 1
        assert maps[0].assignment["c*"] == X.act(X.ref("c1"), degeneracy(1, 1))

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            list(complex_maps(cube(2), cube(2), budget=1))

    def test_maps_validate(self):
        for f in complex_maps(cube(1), k_complex()):
            assert f.validate().ok

    def test_inclusions_are_mono(self):
        f = inclusion_map(boundary(2), cube(2))
        assert is_mono(f)
        with pytest.raises(PreconditionError):
            inclusion_map(cube(2), boundary(2))

    def test_isomorphism_respects_markings(self):
        assert find_isomorphism(k_complex(), k_complex()) is not None
        assert not is_isomorphic(k_prime(), k_complex())
        assert is_isomorphic(k_prime(), k_complex(), respect_markings=False)
        assert not is_isomorphic(cube(2), boundary(2))


class TestGluing:
    """Quotients, pushouts and subcomplexes."""

    def test_identifying_endpoints_makes_a_loop(self):
        X = cube(1)
        result = quotient(X, [(X.ref("c0"), X.ref("c1"))])
        assert result.complex.counts() == (1, 1)
        assert validate(result.complex).ok
        assert result.projection.validate().ok

    def test_collapsing_an_edge_makes_it_degenerate(self):
        X = cube(2)
        result = quotient(X, [(X.ref("c*1"), X.act(X.ref("c01"), degeneracy(1, 1)))])
        assert result.complex.counts() == (3, 3, 1)
        assert result.projection.assignment["c*1"].is_degenerate

    def test_gluing_pairs_must_have_equal_dimension(self):
        X = cube(1)
        with pytest.raises(DimensionMismatch):
            quotient(X, [(X.ref("c0"), X.ref("c*"))])

    def test_pushout_of_two_edges_along_a_point(self):
        I = cube(1)
        end = ComplexMap(point(), I, {"c": I.ref("c1")})
        start = ComplexMap(point(), I, {"c": I.ref("c0")})
        result = pushout(end, start)
        assert result.complex.counts() == (3, 2)
        assert len(pi0(result.complex)) == 1
        assert result.left.validate().ok and result.right.validate().ok

    def test_subcomplex_and_image(self):
        sub, inclusion = subcomplex(cube(2), ["c*0"])
        assert sub.counts() == (2, 1)
        assert is_mono(inclusion)
        im, _ = image(inclusion)
        assert im.counts() == (2, 1)

    def test_remove_cubes_keeps_faces(self):
        with pytest.raises(PreconditionError):
            remove_cubes(cube(1), ["c0"])

    def test_disjoint_union_components(self):
        union, inclusions = disjoint_union([cube(1), point()])
        assert union.counts() == (3, 1)
        assert len(pi0(union)) == 2
        assert all(f.validate().ok for f in inclusions)

    def test_materialize_explicit_complex(self):
        result = materialize(k_complex())
        assert is_isomorphic(result.complex, k_complex())


class TestUnionFind:
    def test_union_and_classes(self):
        uf = UnionFind(range(5))
        assert uf.union(0, 1)
        assert uf.union(3, 4)
        assert not uf.union(1, 0)
        assert uf.same(0, 1) and not uf.same(1, 3)
        assert len(uf) == 3
        assert sorted(sorted(c) for c in uf.classes().values()) == [[0, 1], [2], [3, 4]]

    def test_elements_are_added_lazily(self):
        uf = UnionFind()
        uf.union("a", "b")
        assert "a" in uf and uf.size[uf.find("a")] == 2


if __name__ == "__main__":
    pytest.main([__file__])
