"""
Test coherent families of composites and the counit filtration.
"""

import pytest
import os

import sys
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.boxcat import connection, degeneracy
from src.category import nerve, poset_category
from src.complex import cube
from src.errors import PreconditionError
from src.theta import (BASE_CASE, ThetaFamily, counit_step_check, filtration_base_check,
                       lift_consistency_check, theta, theta_base, theta_report_lines, verify_theta)


@pytest.fixture
def chain():
    """N([2]) up to 3-cubes."""
    return nerve(poset_category(2), 3)


@pytest.fixture
def family(chain):
    return ThetaFamily(chain, 3)


class TestBaseCase:
    """Closed formulas for m ≤ 1."""

    @pytest.mark.parametrize("m,n", [(0, 2), (1, 1)])
    def test_face_recovers_the_cone(self, m, n):
        X = cube(2)
        top = X.ref("c**")
        assert X.face(theta_base(X, top, m, n), n + 1, 0) == top

    def test_degeneracy_and_connection(self):
        X = cube(1)
        edge = X.ref("c*")
        assert theta_base(X, edge, 0, 1) == X.act(edge, degeneracy(2, 2))
        assert theta_base(X, edge, 1, 0) == X.act(edge, connection(2, 1, 0))

    def test_no_closed_formula_above_one(self):
        X = cube(2)
        with pytest.raises(PreconditionError):
            theta_base(X, X.ref("c**"), 2, 0)

    def test_iterated_degeneracy_of_a_vertex(self, family, chain):
        v = chain.vertex("0")
        once = family.theta(0, 0, v)
        assert family.case_of(0, 0, v) == BASE_CASE
        twice = theta(family, 0, 1, once)
        assert twice == chain.act(chain.act(v, degeneracy(1, 1)), connection(2, 1, 0))


class TestFamily:
    """The six-way case split and the lift."""

    def test_bound(self, chain):
        with pytest.raises(PreconditionError):
            ThetaFamily(chain, 0)
        family = ThetaFamily(chain, 2)
        with pytest.raises(PreconditionError):
            family.theta(2, 0, chain.vertex("0"))

    def test_indices(self, family):
        assert list(family.indices()) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]

    def test_lifted_squares(self, family, chain):
        lifted = [x for x in family.cones(2, 0) if family.case_of(2, 0, x) == 6]
        assert lifted
        for x in lifted:
            value = family.theta(2, 0, x)
            assert chain.cube_dim(value) == 3
            assert chain.face(value, 1, 0) == x
            report = lift_consistency_check(family, 2, 0, x)
            assert report.ok, report.witnesses

    def test_degenerate_cones_never_lift(self, family, chain):
        family.build()
        for entry in family.entries():
            if entry.case == 6:
                assert not chain.is_degenerate(entry.x)


class TestVerification:
    """Θ1-Θ8 and the structural checks, exhaustively."""

    def test_arrow(self):
        report = verify_theta(nerve(poset_category(1), 3), 3)
        assert report.ok

    def test_chain(self, chain):
        report = verify_theta(chain, 3)
        assert report.ok
        assert set(report.checks) == {"theta_cone_output", "theta_lift_case", "theta_t", "theta_degenerate_edge"}

    def test_report_lines(self):
        report = verify_theta(nerve(poset_category(1), 2), 2)
        lines = theta_report_lines(report)
        assert lines[0].startswith("theta m=0 n=0 id=T1 checked=")
        assert all(line.endswith("failed=0") for line in lines)

    @pytest.mark.slow
    def test_chains_up_to_four(self):
        for k in (2, 3):
            assert verify_theta(nerve(poset_category(k), 4), 4).ok


class TestFiltration:
    """Adjoining lifted cones one inner filling at a time."""

    def test_step_arguments(self, chain):
        with pytest.raises(PreconditionError):
            counit_step_check(chain, 1, 0)
        with pytest.raises(PreconditionError):
            counit_step_check(chain, 2, 1, bound=3)

    def test_first_step(self, chain):
        report = counit_step_check(chain, 2, 0)
        assert report.ok, report.witnesses

    @pytest.mark.slow
    def test_second_step(self):
        report = counit_step_check(nerve(poset_category(2), 4), 2, 1)
        assert report.ok, report.witnesses

    @pytest.mark.slow
    def test_base_is_the_image_of_the_counit(self, chain):
        assert filtration_base_check(chain, 3).ok


if __name__ == "__main__":
    pytest.main([__file__])
