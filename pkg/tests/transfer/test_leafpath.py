"""Tests for the leaf-path growth bound."""
import pytest

from src.aklt_trees.oracle.trees import cayley, layered
from src.aklt_trees.transfer.leafpath import leafpath_bound, leafpath_sequence_bound
from src.aklt_trees.transfer.sequence import DegreeSequence
from src.aklt_trees.utils.errors import ContractViolation, TreeError


class TestLeafPathBound:
    """Test the degree-product condition along root-to-leaf paths."""

    def test_cayley_five_quarter(self):
        """Cayley-5 with C = 1, mu = 4/3 gives the bound 1/4."""
        result = leafpath_bound(cayley(5, 4), 1.0, 4 / 3)
        assert result.satisfied
        assert result.lower_bound == pytest.approx(0.25)
        assert result.worst_margin == pytest.approx(0.0, abs=1e-12)

    def test_cayley_four_fails(self):
        """Cayley-4 has growth 1 per layer, below any mu > 1."""
        result = leafpath_bound(cayley(4, 4), 1.0, 1.1)
        assert not result.satisfied
        assert result.lower_bound is None

    def test_degree_two_layer_breaks_condition(self):
        """A degree-2 layer divides the product by 3."""
        tree = layered(DegreeSequence((5, 2, 5), period=1), 4)
        assert not leafpath_bound(tree, 1.0, 4 / 3).satisfied

    def test_small_constant_absorbs_prefix(self):
        """Lowering C absorbs a finite bad prefix."""
        tree = layered(DegreeSequence((5, 2, 5), period=1), 4)
        assert leafpath_bound(tree, 0.1, 1.05).satisfied

    def test_rejects_bad_parameters(self):
        """C must be positive and mu above 1."""
        tree = cayley(5, 2)
        with pytest.raises(ContractViolation):
            leafpath_bound(tree, 0.0, 2.0)
        with pytest.raises(ContractViolation):
            leafpath_bound(tree, 1.0, 1.0)


class TestLeafPathSequenceBound:
    """Test the bound read off a degree sequence without building the tree."""

    @pytest.mark.parametrize("seq, layers, C, mu", [
        (DegreeSequence.constant(5), 4, 1.0, 4 / 3),
        (DegreeSequence.constant(4), 4, 1.0, 1.1),
        (DegreeSequence((5, 2, 5), period=1), 4, 1.0, 4 / 3),
        (DegreeSequence((5, 2, 5), period=1), 4, 0.1, 1.05),
        (DegreeSequence.constant(5), 1, 1.0, 2.0),
    ])
    def test_matches_layered_tree(self, seq, layers, C, mu):
        from_tree = leafpath_bound(layered(seq, layers), C, mu)
        from_seq = leafpath_sequence_bound(seq, C, mu, layers)
        assert from_seq.satisfied == from_tree.satisfied
        assert from_seq.lower_bound == from_tree.lower_bound
        assert from_seq.worst_margin == pytest.approx(from_tree.worst_margin, abs=1e-12)
        assert from_seq.depth == from_tree.depth

    @pytest.mark.timeout(5)
    def test_deep_cayley_is_immediate(self):
        """Twenty layers of degree 5 would be 4**19 vertices as a tree."""
        result = leafpath_sequence_bound(DegreeSequence.constant(5), 1.0, 4 / 3, 20)
        assert result.satisfied
        assert result.lower_bound == pytest.approx(0.25)
        assert result.depth == 20

    def test_rejects_bad_parameters(self):
        with pytest.raises(ContractViolation):
            leafpath_sequence_bound(DegreeSequence.constant(5), -1.0, 2.0, 3)
        with pytest.raises(TreeError):
            leafpath_sequence_bound(DegreeSequence.constant(5), 1.0, 2.0, 0)
