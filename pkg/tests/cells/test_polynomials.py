"""Tests for exact transfer polynomials in both conventions."""
from fractions import Fraction

import pytest

from src.aklt_trees.cells.graph import (
    decorated_star_cell,
    load_cell,
    single_edge_cell,
    square_cell,
    star_cell,
)
from src.aklt_trees.cells.network import dense_ratio
from src.aklt_trees.cells.polynomials import (
    Convention,
    TransferPoly,
    convention_report,
    diagram_polynomials,
    oracle_polynomials,
    transfer_polynomials,
)
from src.aklt_trees.site.transfer import trace_polynomials
from src.aklt_trees.utils.errors import ContractViolation


def single_site_poly(d):
    n0, n1 = trace_polynomials(d)
    return TransferPoly(tuple(-c for c in n1), n0)


class TestTransferPoly:
    """Test the polynomial pair itself."""

    def test_zero_constant_rejected(self):
        """q(0) = 0 is not a valid transfer function."""
        with pytest.raises(ContractViolation):
            TransferPoly((Fraction(1),), (Fraction(0), Fraction(1)))

    def test_trailing_zeros_trimmed(self):
        poly = TransferPoly((0, Fraction(-1, 3), 0, 0), (1, 0))
        assert poly.p == (0, Fraction(-1, 3))
        assert poly.q == (1,)

    def test_same_function_after_scaling(self):
        """Common factors do not change the function."""
        a = TransferPoly((0, Fraction(-2)), (Fraction(6),))
        b = TransferPoly((0, Fraction(-1, 3)), (Fraction(1),))
        assert a.same_function(b)
        assert a.slope == b.slope == Fraction(-1, 3)


class TestOracleConvention:
    """Test the polynomials from the dense network contraction."""

    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
    def test_star_is_single_site(self, d):
        """A star cell is exactly F_d."""
        poly = oracle_polynomials(star_cell(d))
        assert poly.same_function(single_site_poly(d))
        assert poly.slope == Fraction(-(d - 1), 3)

    @pytest.mark.parametrize("d", [3, 5])
    @pytest.mark.parametrize("g", [0, 1, 2])
    def test_decorated_star_scales_by_three(self, d, g):
        """g degree-2 sites above the center divide F_d by 3^g."""
        poly = oracle_polynomials(decorated_star_cell(d, g))
        base = single_site_poly(d)
        scaled = TransferPoly(tuple(c / 3 ** g for c in base.p), base.q)
        assert poly.same_function(scaled)

    def test_square(self):
        """F = -(26t + 2t^3) / (84 + 26t^2)."""
        poly = oracle_polynomials(square_cell()).normalized()
        assert poly.p == (0, Fraction(-13, 42), 0, Fraction(-1, 42))
        assert poly.q == (1, 0, Fraction(13, 42))
        assert poly.slope == Fraction(-13, 42)
        assert poly.has_parity()

    @pytest.mark.parametrize("t", [-0.7, 0.1, 0.5, 1.0])
    def test_dense_ratio_agrees(self, t):
        """Float contraction and exact polynomials describe the same F."""
        poly = oracle_polynomials(square_cell())
        assert abs(dense_ratio(square_cell(), t) - poly.evaluate(t)) < 1e-12

    def test_fork_cell(self):
        """Two length-2 paths give slope -2/9."""
        assert oracle_polynomials(load_cell("fork")).slope == Fraction(-2, 9)


class TestDiagramConvention:
    """Test the loop-diagram sums."""

    def test_star3(self):
        """q = 1 - t^2/3, p = -2t/3."""
        poly = diagram_polynomials(star_cell(3))
        assert poly.p == (0, Fraction(-2, 3))
        assert poly.q == (1, 0, Fraction(-1, 3))
        assert poly.convention is Convention.PAPER

    def test_square_constant_term(self):
        """Empty diagram plus the 4-cycle."""
        assert diagram_polynomials(square_cell()).q[0] == Fraction(82, 81)

    def test_single_edge_conventions_agree(self):
        poly = diagram_polynomials(single_edge_cell())
        assert poly.same_function(oracle_polynomials(single_edge_cell()))

    def test_dispatch(self):
        cell = star_cell(4)
        assert transfer_polynomials(cell, "paper") == diagram_polynomials(cell)
        assert transfer_polynomials(cell) == oracle_polynomials(cell)

    def test_convention_names(self):
        """Conventions are selected by the names paper and oracle."""
        assert {c.value for c in Convention} == {"paper", "oracle"}
        with pytest.raises(ValueError):
            transfer_polynomials(star_cell(4), "diagram")


class TestConventionReport:
    """Test the comparison against diagram sums and printed values."""

    def test_square_printed_values_differ(self):
        """The printed slope -13/41 is not what the network gives."""
        report = convention_report(load_cell("square"))
        assert report.printed_diff is not None
        assert not report.printed_diff.matches
        assert report.printed_diff.slope_reference == Fraction(-13, 41)
        assert not report.printed_diff.slope_matches
        assert report.oracle.slope == Fraction(-13, 42)

    def test_star3_diagram_diff(self):
        """The diagram sums flip the sign of the t^2 term in q."""
        report = convention_report(star_cell(3))
        assert report.printed_diff is None
        assert not report.diagram_diff.matches
        assert report.diagram_diff.q_diff == [0, 0, Fraction(-2, 3)]
        assert report.diagram_diff.p_diff == [0, 0]

    def test_report_serializes(self):
        data = convention_report(square_cell()).to_dict()
        assert data["oracle"]["slope"] == "-13/42"
        assert data["printed_diff"]["slope_reference"] == "-13/41"
