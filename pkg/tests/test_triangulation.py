"""
Test triangulation, its right adjoint and the comparison posets maps.
"""

import pytest
import os
import numpy as np

import sys
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.boxcat import degeneracy
from src.complex import (ComplexMap, CubeRef, boundary, cube, inclusion_map, open_box, point)
from src.errors import PreconditionError
from src.simplex import horn, is_isomorphic, simplex, validate
from src.triangulation import (PosetMapFG, cube_nerve, f_chain, maximal_chains, simplicial_hom,
                               triangulate, triangulate_map, triangulation_preserves_mono,
                               triangulation_product_check, triangulation_pushout_check,
                               triangulation_pushout_product_check, u_truncated)


class TestTriangulate:
    """T(X) as a colimit of nerves of cubes."""

    def test_cube_nerve(self):
        assert cube_nerve(2).counts() == (4, 5, 2)
        assert len(maximal_chains(3)) == 6

    def test_small_cubes(self):
        assert triangulate(point()).complex.counts() == (1,)
        assert is_isomorphic(triangulate(cube(1)).complex, simplex(1))
        T = triangulate(cube(2)).complex
        assert T.counts() == (4, 5, 2)
        assert validate(T).ok

    def test_boundary_of_the_square(self):
        T = triangulate(boundary(2)).complex
        assert T.counts() == (4, 4)

    def test_open_box_is_a_path(self):
        T = triangulate(open_box(2, 2, 0)).complex
        assert T.counts() == (4, 3)

    def test_origin_round_trip(self):
        result = triangulate(cube(2))
        for s in result.complex.ids():
            cube_id, chain = result.origin(s)
            assert result.simplex_of(cube_id, chain) == result.complex.ref(s)

    def test_maps(self):
        f = inclusion_map(boundary(2), cube(2))
        Tf = triangulate_map(f)
        assert Tf.validate().ok
        assert triangulation_preserves_mono(f)

    def test_mono_check_needs_a_mono(self):
        P = point()
        collapse = ComplexMap(cube(1), P, {"c0": P.ref("c"), "c1": P.ref("c"),
                                           "c*": CubeRef("c", degeneracy(1, 1))})
        assert collapse.validate().ok
        assert triangulate_map(collapse).validate().ok
        with pytest.raises(PreconditionError):
            triangulation_preserves_mono(collapse)

    def test_pushout_is_preserved(self):
        I = cube(1)
        end = ComplexMap(point(), I, {"c": I.ref("c1")})
        start = ComplexMap(point(), I, {"c": I.ref("c0")})
        assert triangulation_pushout_check(end, start)

    def test_products_are_preserved(self):
        assert triangulation_product_check(cube(1), cube(1))
        assert triangulation_product_check(cube(1), boundary(2))

    @pytest.mark.slow
    def test_pushout_products_are_preserved(self):
        i = inclusion_map(boundary(1), cube(1))
        assert triangulation_pushout_product_check(i, i)

    @pytest.mark.slow
    def test_top_simplices_of_the_three_cube(self):
        assert len(triangulate(cube(3)).complex.ids(3)) == 6


class TestRightAdjoint:
    """U(S) truncated: cubes are maps out of N([1]ⁿ)."""

    def test_u_of_an_edge(self):
        U = u_truncated(simplex(1), 2)
        assert U.counts() == (2, 3, 6)

    def test_u_faces_are_maps(self):
        U = u_truncated(horn(2, 1), 1)
        for h in U.cubes(1):
            for eps in (0, 1):
                assert U.as_map(U.face(h, 1, eps)).validate().ok


class TestPosetMaps:
    """F: [1]ⁿ → [n] and G: [n] → [1]ⁿ."""

    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
    def test_laws(self, n):
        assert PosetMapFG(n).check().ok

    def test_tables(self):
        fg = PosetMapFG(2)
        assert fg.f_table().tolist() == [0, 1, 2, 2]
        np.testing.assert_array_equal(fg.g_table(), np.array([[0, 0], [0, 1], [1, 1]]))

    def test_f_chain(self):
        assert f_chain(2, ["v00", "v01", "v11"]) == (0, 1, 2)

    def test_negative_dimension(self):
        with pytest.raises(PreconditionError):
            PosetMapFG(-1)


class TestMappingSpaces:
    """Right, left and two-sided mapping spaces of simplicial sets."""

    @pytest.mark.parametrize("kind", ["right", "left", "two_sided"])
    def test_mapping_space_of_an_arrow(self, kind):
        H = simplicial_hom(kind, simplex(1), "0", "1", 1)
        assert H.counts() == (1,)

    def test_no_arrows_backwards(self):
        H = simplicial_hom("right", simplex(1), "1", "0", 1)
        assert H.dims == {}

    def test_bad_arguments(self):
        with pytest.raises(PreconditionError):
            simplicial_hom("middle", simplex(1), "0", "1", 1)
        with pytest.raises(PreconditionError):
            simplicial_hom("right", simplex(1), "01", "1", 1)


if __name__ == "__main__":
    pytest.main([__file__])
