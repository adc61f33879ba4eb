"""
Test cones, standard cones, the cosimplicial object Q and its adjoint.
"""

import pytest
import os

import sys
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.boxcat import face, identity
from src.category import nerve, poset_category
from src.complex import boundary, cube, inclusion_map, is_isomorphic, is_mono, k_complex, point, validate
from src.cone import (CONE_KINDS, L0, L1, R0, R1, BoxFilling, ConeKind, b_complex, check_f_bar, cone,
                      cone_as_map, cone_edge_check, cone_face_degeneracy_check, cone_map,
                      cosimplicial_generator, cosimplicial_identity_check, counit, counit_image,
                      decomposition_check, f_naturality, face_condition_check, face_iso_check,
                      filling_steps, integral, is_cone, iterated_cone, kind_coherence_check,
                      monad_law_check, parse_kind, q_full_faithfulness_check, q_functor, q_horn_image,
                      q_object, q_stand_form_check, sa1_check, standard_cone)
from src.errors import PreconditionError
from src.simplex import face as simplex_face, horn, j_complex, simplex


class TestConeKinds:
    def test_parse(self):
        assert parse_kind("r0") == R0
        assert [k.name for k in CONE_KINDS] == ["L1", "L0", "R0", "R1"]
        with pytest.raises(PreconditionError):
            parse_kind("X1")

    def test_involutions(self):
        assert L1.involution is None
        assert L0.involution == "coop"
        assert R1.involution == "co"

    def test_invalid_kind(self):
        with pytest.raises(PreconditionError):
            ConeKind("M", 1)


class TestCone:
    """C_{W,ε}X with its unit and multiplication."""

    def test_cone_on_a_point_is_an_interval(self):
        C = cone(point())
        assert is_isomorphic(C.complex, cube(1))
        assert C.apex in C.complex.ids(0)

    @pytest.mark.parametrize("kind", CONE_KINDS, ids=lambda k: k.name)
    def test_cone_on_an_interval(self, kind):
        C = cone(cube(1), kind)
        assert C.complex.counts() == (3, 3, 1)
        assert validate(C.complex).ok
        assert is_mono(C.eta)

    def test_cone_map_of_an_inclusion(self):
        f = inclusion_map(boundary(1), cube(1))
        source, target = cone(boundary(1)), cone(cube(1))
        Cf = cone_map(f, source, target)
        assert Cf.validate().ok
        assert is_mono(Cf)

    @pytest.mark.parametrize("kind", CONE_KINDS, ids=lambda k: k.name)
    def test_monad_laws_on_a_point(self, kind):
        report = monad_law_check(point(), kind)
        assert report.ok, report.witnesses

    @pytest.mark.slow
    def test_monad_laws_on_an_interval(self):
        assert monad_law_check(cube(1), L1).ok

    def test_iterated_cone(self):
        assert iterated_cone(point(), 2).counts() == (3, 3, 1)


class TestStandardCones:
    """C^{m,n} as quotients of cubes."""

    def test_small_cones(self):
        assert standard_cone(0, 2).complex.counts() == (3, 3, 1)
        assert is_isomorphic(standard_cone(2, 0).complex, cube(2))
        assert is_isomorphic(standard_cone(1, 1).complex, cone(cube(1)).complex, respect_markings=False)

    def test_q_objects(self):
        assert is_isomorphic(q_object(1).complex, cube(1))
        assert q_object(0).complex.counts() == (1,)

    def test_top_cube_is_a_cone(self):
        C = standard_cone(1, 2)
        assert is_cone(C.complex, C.top(), 1, 2)
        assert not is_cone(cube(2), cube(2).ref("c**"), 1, 1)
        assert is_cone(cube(2), cube(2).ref("c**"), 2, 0)

    def test_cone_dimension_must_match(self):
        with pytest.raises(PreconditionError):
            is_cone(cube(2), cube(2).ref("c**"), 1, 0)
        with pytest.raises(PreconditionError):
            standard_cone(-1, 1)

    def test_cone_as_map(self):
        C = standard_cone(1, 1)
        f = cone_as_map(C.complex, C.top(), 1, 1)
        assert f.validate().ok
        with pytest.raises(PreconditionError):
            cone_as_map(cube(2), cube(2).ref("c**"), 1, 1)

    def test_face_checks(self):
        assert face_iso_check(3).ok
        assert cone_edge_check(3).ok
        assert face_condition_check(standard_cone(1, 2).complex, 3).ok

    def test_cone_closure_on_a_standard_cone(self):
        report = cone_face_degeneracy_check(standard_cone(1, 1).complex, max_total=2)
        assert report.ok, report.witnesses
        assert report.checked > 0
        assert sa1_check(standard_cone(1, 1).complex, 2).ok

    @pytest.mark.slow
    def test_cone_closure_over_every_cube_of_a_nerve(self):
        N = nerve(poset_category(2), 4)
        report = cone_face_degeneracy_check(N, 4)
        assert report.ok, report.witnesses
        assert report.parameters == {"X": N.name, "max_total": 4}

    def test_kind_coherence(self):
        report = kind_coherence_check(cube(1))
        assert report.ok, report.witnesses


class TestBoxDecomposition:
    """B^{m,n,k} ↪ C^{m,n} as a sequence of open-box fillings."""

    def test_b_complex_counts(self):
        assert b_complex(1, 1, 1)[0].counts() == (3, 2)
        assert b_complex(2, 1, 1)[0].counts() == (5, 7, 3)

    def test_b_complex_range(self):
        with pytest.raises(PreconditionError):
            b_complex(1, 1, 3)

    def test_filling_steps(self):
        assert filling_steps(1, 1, 1) == [BoxFilling(1, 1, (2, 0), identity(2))]
        steps = filling_steps(2, 1, 1)
        assert len(steps) == 2
        assert steps[-1].missing == (3, 0)
        with pytest.raises(PreconditionError):
            filling_steps(0, 1, 0)

    @pytest.mark.parametrize("m,n,k", [(1, 1, 1), (2, 1, 1), (1, 2, 2)])
    def test_decomposition(self, m, n, k):
        report = decomposition_check(m, n, k)
        assert report.ok, report.witnesses


class TestQ:
    """Q: sSet → cSet and its right adjoint ∫."""

    def test_generators(self):
        assert cosimplicial_generator(L1, simplex_face(1, 0)) == face(1, 1, 1)
        assert cosimplicial_generator(L1, simplex_face(1, 1)) == face(1, 1, 0)

    def test_cosimplicial_identities(self):
        for kind in CONE_KINDS:
            report = cosimplicial_identity_check(2, kind)
            assert report.ok, report.witnesses

    def test_f_naturality(self):
        assert f_naturality(3).ok

    def test_q_of_small_shapes(self):
        assert is_isomorphic(q_functor(simplex(1)).complex, cube(1))
        assert q_functor(horn(2, 1)).complex.counts() == (3, 2)
        assert q_horn_image(2, 1)

    @pytest.mark.parametrize("n,i", [(1, 1), (2, 2), (3, 1), (3, 3)])
    def test_q_of_horns_with_a_positive_index(self, n, i):
        assert q_horn_image(n, i)

    @pytest.mark.parametrize("n,i", [(1, 0), (2, 0), (2, 3)])
    def test_horn_index_outside_the_open_boxes(self, n, i):
        with pytest.raises(PreconditionError, match="horn index"):
            q_horn_image(n, i)

    def test_q_of_j_is_k(self):
        assert is_isomorphic(q_functor(j_complex()).complex, k_complex(), respect_markings=False)

    def test_integral_of_an_interval(self):
        assert integral(cube(1), 1).counts() == (2, 1)

    def test_counit(self):
        result = counit(cube(1))
        assert result.map.validate().ok
        assert counit_image(cube(2)).counts() == (4, 4)

    def test_standard_forms_under_the_counit(self):
        assert q_stand_form_check(k_complex()).ok

    def test_f_bar(self):
        assert check_f_bar(horn(2, 1)).ok

    @pytest.mark.slow
    def test_full_faithfulness(self):
        assert q_full_faithfulness_check([simplex(0), simplex(1), horn(2, 1)]).ok


if __name__ == "__main__":
    pytest.main([__file__])
