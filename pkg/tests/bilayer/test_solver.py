"""Tests for bilayer fixed points and dynamics."""
import math

import numpy as np
import pytest

from src.aklt_trees.bilayer.map import BilayerVector
from src.aklt_trees.bilayer.solver import (
    Subspace,
    damped_newton,
    dense_cycle_residual,
    iterate_dynamics,
    solve_fixed_points,
    staggered_slope,
    symmetric_fixed_point,
)
from src.aklt_trees.bilayer.system import Cycle, extract_system
from src.aklt_trees.config import DEFAULT_SEED
from src.aklt_trees.utils.errors import ContractViolation

U1 = (math.sqrt(19) - 4) / 3
G3_CYCLE = (0.27159113, 0.05463329, 0.15338809)
PRINTED_G3_CYCLE = (0.3020, 0.0466, 0.1754)


class TestSymmetricFixedPoint:
    """Test the SU(2)-symmetric fixed point and its x1 slope."""

    def test_g1_closed_form(self):
        point = symmetric_fixed_point(1)
        assert point.u == pytest.approx(U1, abs=1e-12)
        assert point.slope == pytest.approx(-4 / 9 / (1 + U1 / 3), abs=1e-12)
        assert not point.unstable

    def test_g2(self):
        point = symmetric_fixed_point(2)
        assert point.u == pytest.approx(0.12908, abs=1e-4)
        assert point.slope == pytest.approx(-0.867, abs=1e-3)
        assert not point.unstable

    def test_g3_unstable(self):
        point = symmetric_fixed_point(3)
        assert point.u == pytest.approx(0.13943, abs=1e-4)
        assert point.slope == pytest.approx(-1.319, abs=1e-3)
        assert point.unstable
        assert staggered_slope(3) == point.slope

    def test_dense_check(self):
        """The symmetric point is a fixed point of the dense map."""
        point = symmetric_fixed_point(2)
        x = BilayerVector.from_symmetric(0.0, 0.0, point.u)
        assert dense_cycle_residual(2, x, Cycle.PERIOD1) < 1e-10


class TestNewton:
    """Test the damped Newton iteration."""

    def test_converges_near_root(self):
        system = extract_system(1)
        outcome = damped_newton(lambda z: system.residual(z, Cycle.PERIOD1), np.array([0.01, 0.01, 0.1]))
        assert outcome.converged
        assert outcome.z == pytest.approx([0.0, 0.0, U1], abs=1e-10)

    def test_linear_system(self):
        outcome = damped_newton(lambda z: 2.0 * z - 1.0, np.array([5.0]))
        assert outcome.converged
        assert outcome.z[0] == pytest.approx(0.5)


class TestSolveFixedPoints:
    """Test the multi-start search."""

    def test_reported_solutions_are_verified(self):
        report = solve_fixed_points(1, starts=12, seed=7)
        assert report.converged >= len(report.solutions)
        assert all(s.residual <= 1e-10 for s in report.solutions)
        assert all(s.symmetric for s in report.solutions)

    def test_independent_of_workers(self):
        one = solve_fixed_points(2, starts=8, seed=3, workers=1)
        four = solve_fixed_points(2, starts=8, seed=3, workers=4)
        assert [s.to_dict() for s in one.solutions] == [s.to_dict() for s in four.solutions]

    @pytest.mark.slow
    @pytest.mark.parametrize("cycle", [Cycle.PERIOD1, Cycle.PERIOD2])
    def test_g2_only_unpolarized_point(self, cycle):
        """A hundred seeded starts find nothing but the symmetric point."""
        report = solve_fixed_points(2, cycle=cycle, starts=100, seed=DEFAULT_SEED)
        assert len(report.solutions) == 1
        sol = report.solutions[0]
        assert sol.x.symmetric_coords() == pytest.approx((0.0, 0.0, 0.12908), abs=1e-5)
        assert sol.psd
        assert sol.residual < 1e-10

    @pytest.mark.slow
    def test_g3_two_cycle(self):
        """The staggered two-cycle appears as a +-x1 pair of PSD points."""
        report = solve_fixed_points(3, cycle=Cycle.PERIOD2, starts=100, seed=DEFAULT_SEED)
        pair = [s for s in report.solutions if abs(abs(s.x1) - G3_CYCLE[0]) < 1e-4]
        assert sorted(math.copysign(1.0, s.x1) for s in pair) == [-1.0, 1.0]
        for sol in pair:
            _, x2, x3 = sol.x.symmetric_coords()
            assert abs(sol.x1) == pytest.approx(G3_CYCLE[0], abs=1e-6)
            assert x2 == pytest.approx(G3_CYCLE[1], abs=1e-6)
            assert x3 == pytest.approx(G3_CYCLE[2], abs=1e-6)
            assert sol.residual < 1e-10
            assert sol.psd
            assert dense_cycle_residual(3, sol.x, Cycle.PERIOD2) < 1e-10
        # the printed cycle sits about 0.03 away in the max norm
        _, dist = report.nearest(*PRINTED_G3_CYCLE)
        assert 0.02 < dist < 0.04

    def test_full_subspace(self):
        report = solve_fixed_points(1, starts=2, seed=5, subspace=Subspace.FULL)
        assert report.subspace is Subspace.FULL
        assert all(s.residual <= 1e-10 for s in report.solutions)

    def test_g1_finds_symmetric_point(self):
        """For g = 1 the only roots lie on the line x1 = x2 = 0."""
        report = solve_fixed_points(1, starts=12, seed=7)
        sol, dist = report.nearest(0.0, 0.0, U1)
        assert dist < 1e-9
        assert sol.psd
        assert all(abs(s.x1) < 1e-12 for s in report.solutions)

    def test_needs_starts(self):
        with pytest.raises(ContractViolation):
            solve_fixed_points(1, starts=0)


class TestDynamics:
    """Test plain iteration of the normalized map."""

    def test_g1_converges_to_symmetric_point(self):
        trace = iterate_dynamics(1, BilayerVector.zero(), 40)
        x1, x2, x3 = trace.final.symmetric_coords()
        assert x3 == pytest.approx(U1, abs=1e-9)
        assert abs(x1) < 1e-9
        assert trace.contraction < 1.0

    def test_first_step_is_identity_image(self):
        trace = iterate_dynamics(2, BilayerVector.zero(), 1)
        assert trace.final.symmetric_coords() == pytest.approx((0.0, 0.0, 1 / 9), abs=1e-12)

    def test_needs_steps(self):
        with pytest.raises(ContractViolation):
            iterate_dynamics(1, BilayerVector.zero(), 0)
