"""
Test the geometric product, pushout products and hom complexes.
"""

import pytest
import os

import sys
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.boxcat import INVOLUTIONS, degeneracy, face, identity
from src.complex import (CubeRef, boundary, cube, inclusion_map, is_isomorphic, is_isomorphism, is_mono,
                         k_complex, k_prime, open_box, point, validate)
from src.errors import InvalidOperator, PreconditionError
from src.tensor import (ProductCube, associator, hom, involution_isomorphism, marked_product, pair_id, product,
                        product_by_colimit, product_map, pushout_product, verify_nondegenerate_pairs)


class TestProduct:
    """X⊗Y built from pairs of non-degenerate cubes."""

    @pytest.mark.parametrize("m,n", [(0, 2), (1, 1), (1, 2), (2, 1)])
    def test_cubes_multiply(self, m, n):
        P = product(cube(m), cube(n))
        assert is_isomorphic(P, cube(m + n))
        assert validate(P).ok

    def test_point_is_a_unit(self):
        assert is_isomorphic(product(point(), k_complex()), k_complex())
        assert is_isomorphic(product(k_complex(), point()), k_complex())

    def test_ids_and_provenance(self):
        P = product(cube(1), cube(1))
        assert pair_id("c*", "c*") in P.ids(2)
        assert P.provenance[pair_id("c0", "c*")] == ("c0", "c*")
        assert P.face_table[(pair_id("c*", "c*"), 2, 1)] == CubeRef(pair_id("c*", "c1"), identity(1))

    def test_faces_of_a_product_cube(self):
        P = product(cube(1), cube(1))
        top = P.ref(pair_id("c*", "c*"))
        assert P.act(top, face(2, 1, 0)) == P.ref(pair_id("c0", "c*"))

    def test_degeneracies_at_the_seam_agree(self):
        X, Y = cube(1), cube(1)
        left = ProductCube(CubeRef("c*", degeneracy(2, 2)), Y.ref("c*"))
        right = ProductCube(X.ref("c*"), CubeRef("c*", degeneracy(2, 1)))
        assert left.dim == right.dim == 3
        assert left.standard_form() == right.standard_form()
        assert left.standard_form().target == pair_id("c*", "c*")
        assert left.standard_form().is_degenerate

    def test_faces_use_product_cubes(self):
        I = cube(1)
        P = product(I, I)
        for (c, i, eps), r in P.face_table.items():
            x, y = P.provenance[c]
            if i <= I.dims[x]:
                expected = ProductCube(I.face_table[(x, 1, eps)], I.ref(y))
            else:
                expected = ProductCube(I.ref(x), I.face_table[(y, 1, eps)])
            assert r == expected.standard_form()

    def test_counts_of_products_with_a_boundary(self):
        P = product(cube(1), boundary(2))
        assert P.counts() == (8, 12, 4)

    def test_colimit_agrees_with_pairs(self):
        assert verify_nondegenerate_pairs(cube(1), boundary(2))
        assert verify_nondegenerate_pairs(k_complex(), cube(1))
        colimit, tops = product_by_colimit(cube(1), cube(1))
        assert colimit.counts() == (4, 4, 1)
        assert len(tops) == 9

    def test_marked_product(self):
        P = marked_product(k_prime(), cube(1))
        assert sorted(P.marked) == [pair_id("e", "c0"), pair_id("e", "c1")]


class TestPushoutProduct:
    """Pushout products of monomorphisms."""

    def test_boundary_inclusions(self):
        i = inclusion_map(boundary(1), cube(1))
        result = pushout_product(i, i)
        assert result.map.validate().ok
        assert is_mono(result.map)
        assert result.pushout.complex.counts() == boundary(2).counts()

    def test_open_box_from_an_endpoint(self):
        i = inclusion_map(boundary(1), cube(1))
        end = inclusion_map(open_box(1, 1, 0), cube(1))
        result = pushout_product(i, end)
        assert is_mono(result.map)
        assert result.pushout.complex.counts() == open_box(2, 2, 0).counts()

    def test_product_map_of_identities(self):
        f = inclusion_map(boundary(1), cube(1))
        g = product_map(f, inclusion_map(cube(1), cube(1)))
        assert g.validate().ok
        assert is_mono(g)


class TestConstructedIsomorphisms:
    """Involutions and the associator as explicit maps."""

    @pytest.mark.parametrize("kind", INVOLUTIONS)
    @pytest.mark.parametrize("X,Y", [(cube(1), cube(1)), (cube(2), boundary(2)), (boundary(2), open_box(2, 1, 0)),
                                     (k_complex(), cube(1))],
                             ids=["interval", "square-boundary", "boundary-box", "k-interval"])
    def test_involutions_on_products(self, kind, X, Y):
        f = involution_isomorphism(X, Y, kind)
        assert f.validate().ok
        assert is_isomorphism(f)

    def test_co_swaps_the_factors(self):
        f = involution_isomorphism(cube(1), cube(2), "co")
        assert f.assignment[pair_id("c*", "c0*")].target == pair_id("c0*", "c*")
        g = involution_isomorphism(cube(1), cube(2), "coop")
        assert g.assignment[pair_id("c*", "c0*")].target == pair_id("c*", "c0*")

    def test_unknown_involution(self):
        with pytest.raises(InvalidOperator):
            involution_isomorphism(cube(1), cube(1), "flip")

    @pytest.mark.parametrize("shapes", [(cube(1), cube(1), cube(1)), (boundary(2), cube(1), k_complex()),
                                        (point(), boundary(2), cube(2))],
                             ids=["cubes", "mixed", "unit"])
    def test_associator(self, shapes):
        f = associator(*shapes)
        assert is_isomorphism(f)

    def test_a_non_surjective_map_is_not_an_isomorphism(self):
        f = inclusion_map(boundary(2), cube(2))
        assert f.validate().ok
        assert not is_isomorphism(f)


class TestHomComplex:
    """hom_L and hom_R as cubical sets."""

    def test_hom_out_of_a_point_is_the_target(self):
        H = hom("L", point(), cube(1), 1)
        assert H.counts() == (2, 3)

    def test_hom_faces_are_maps(self):
        H = hom("R", cube(1), cube(1), 1)
        assert H.counts()[0] == 3
        for h in H.cubes(1):
            for eps in (0, 1):
                assert H.as_map(H.face(h, 1, eps)).validate().ok

    def test_unknown_side(self):
        with pytest.raises(PreconditionError):
            hom("M", point(), cube(1), 1)


if __name__ == "__main__":
    pytest.main([__file__])
