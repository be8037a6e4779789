"""Tests for the symmetry-breaking criteria on cells."""
import math
from fractions import Fraction

import pytest

from src.aklt_trees.cells.criteria import (
    Phase,
    breaking_criterion,
    cell_iterate,
    decorated_threshold,
    tree_cell_condition,
)
from src.aklt_trees.cells.graph import decorated_star_cell, load_cell, square_cell, star_cell
from src.aklt_trees.utils.errors import CellGraphError, ContractViolation

T5 = math.sqrt((4 * math.sqrt(6) - 9) / 3)


class TestBreakingCriterion:
    """Test F_cell'(0) < -1 and the accompanying fixed point."""

    def test_star5_breaks(self):
        """Must find the same fixed point as the single site."""
        result = breaking_criterion(star_cell(5))
        assert result.breaks
        assert result.slope == Fraction(-4, 3)
        assert result.t_cell == pytest.approx(T5, abs=1e-10)

    def test_star4_is_marginal(self):
        """Slope exactly -1 does not break."""
        result = breaking_criterion(star_cell(4))
        assert not result.breaks
        assert result.t_cell is None

    def test_square_does_not_break(self):
        result = breaking_criterion(square_cell())
        assert not result.breaks
        assert result.to_dict()["slope"] == "-13/42"


class TestDecoratedThreshold:
    """Test d against 3^(g+1) + 1."""

    @pytest.mark.parametrize("d,g,phase", [
        (5, 0, Phase.ORDERED),
        (4, 0, Phase.BOUNDARY),
        (3, 0, Phase.UNIQUE),
        (11, 1, Phase.ORDERED),
        (10, 1, Phase.BOUNDARY),
        (9, 1, Phase.UNIQUE),
        (28, 2, Phase.BOUNDARY),
    ])
    def test_phases(self, d, g, phase):
        assert decorated_threshold(d, g) is phase

    def test_agrees_with_cell_slope(self):
        """Ordered exactly when the decorated star's slope is below -1."""
        for d, g in [(5, 0), (3, 0), (6, 0), (5, 1), (6, 1)]:
            breaks = breaking_criterion(decorated_star_cell(d, g)).breaks
            assert breaks == (decorated_threshold(d, g) is Phase.ORDERED)

    def test_invalid(self):
        with pytest.raises(ContractViolation):
            decorated_threshold(1, 0)


class TestTreeCellCondition:
    """Test the path sum for tree cells."""

    def test_fork(self):
        """Two paths of two sites: 2/9, no breaking."""
        result = tree_cell_condition(load_cell("fork"), check=True)
        assert result.sum == Fraction(2, 9)
        assert not result.breaks
        assert result.path_lengths == [2, 2]

    def test_star5(self):
        result = tree_cell_condition(star_cell(5), check=True)
        assert result.sum == Fraction(4, 3)
        assert result.breaks

    def test_decorated(self):
        """Must match the slope F_d / 3^g."""
        result = tree_cell_condition(decorated_star_cell(5, 1), check=True)
        assert result.sum == Fraction(4, 9)

    def test_rejects_loops(self):
        with pytest.raises(CellGraphError):
            tree_cell_condition(square_cell())


class TestCellIterate:
    """Test repeated application of F_cell."""

    def test_alternates_at_fixed_point(self):
        values = cell_iterate(star_cell(5), T5, 4)
        assert values == pytest.approx([-T5, T5, -T5, T5], abs=1e-9)

    def test_decays_below_threshold(self):
        values = cell_iterate(square_cell(), 0.9, 30)
        assert abs(values[-1]) < 1e-10

    def test_depth_must_be_positive(self):
        with pytest.raises(ContractViolation):
            cell_iterate(star_cell(3), 0.5, 0)
