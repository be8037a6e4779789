"""Tests for finite tree construction."""
import pytest

from src.aklt_trees.cells.graph import load_cell, square_cell, star_cell
from src.aklt_trees.config import MAX_TREE_VERTICES
from src.aklt_trees.oracle.trees import (
    FiniteTree,
    TreeKind,
    bilayer_cayley,
    cayley,
    check_tree_size,
    decorated,
    from_cell,
    layered,
)
from src.aklt_trees.transfer.sequence import counterexample_sequence
from src.aklt_trees.utils.errors import TreeError


class TestFamilies:
    """Test the bundled tree families."""

    def test_cayley_sizes(self):
        """1 + 4 + 16 vertices, 64 legs on the last generation."""
        tree = cayley(5, 3)
        assert tree.size == 21
        assert tree.depth == 3
        assert tree.dangling_count() == 64
        assert all(tree.degree(v) == 5 for v in tree.graph.nodes)

    def test_layered_follows_sequence(self):
        """Generation i has degree d_i."""
        tree = layered(counterexample_sequence(2), 4)
        by_generation = {}
        for v in tree.graph.nodes:
            by_generation.setdefault(tree.generation(v), set()).add(tree.degree(v))
        assert by_generation == {1: {2}, 2: {2}, 3: {5}, 4: {5}}

    def test_decorated_inserts_degree_two_sites(self):
        tree = decorated(3, 2, 2)
        degrees = sorted(tree.degree(v) for v in tree.graph.nodes)
        assert degrees == [2, 2, 2, 2, 3, 3, 3]

    def test_bilayer_kind(self):
        tree = bilayer_cayley(2, 3)
        assert tree.kind is TreeKind.BILAYER
        assert tree.size == 7
        assert tree.spin_count == 14

    def test_from_cell_star_is_cayley(self):
        """Nested star cells rebuild the Cayley tree."""
        tree = from_cell(star_cell(4), 3)
        assert tree.size == cayley(4, 3).size
        assert all(s == 1 for signs in tree.dangling.values() for s in signs)

    def test_from_cell_signs(self):
        """Pendants at even distance flip the orientation of the next copy."""
        tree = from_cell(load_cell("fork"), 1)
        assert sorted(s for signs in tree.dangling.values() for s in signs) == [-1, -1]
        deeper = from_cell(load_cell("fork"), 2)
        assert sorted(s for signs in deeper.dangling.values() for s in signs) == [1, 1, 1, 1]

    def test_from_cell_rejects_loops(self):
        with pytest.raises(TreeError):
            from_cell(square_cell(), 2)


class TestValidation:
    """Test structural checks on hand-built trees."""

    def test_from_edges_relabels(self):
        tree = FiniteTree.from_edges([("a", "b"), ("a", "c")], "a")
        assert tree.root == 0
        assert tree.children(0) == [1, 2]
        assert tree.legs(1) == (1,)

    def test_rejects_cycle(self):
        with pytest.raises(TreeError):
            FiniteTree.from_edges([(0, 1), (1, 2), (2, 0)], 0)

    def test_rejects_low_degree(self):
        """A leaf without legs has degree 1."""
        with pytest.raises(TreeError):
            FiniteTree.from_edges([(0, 1)], 0, leaf_degree=1)

    def test_rejects_bad_sign(self):
        with pytest.raises(TreeError):
            FiniteTree.from_edges([(0, 1)], 0, dangling={1: (2,)})

    def test_bad_depth(self):
        with pytest.raises(TreeError):
            cayley(3, 0)


class TestVertexLimit:
    """Test that oversized trees are refused before they are built."""

    def test_generation_sizes_counted(self):
        assert check_tree_size("cayley", [1, 4, 16]) == 21

    def test_limit_exceeded(self):
        with pytest.raises(TreeError):
            check_tree_size("cayley", [MAX_TREE_VERTICES, 1])

    @pytest.mark.timeout(10)
    @pytest.mark.parametrize("build", [
        lambda: cayley(5, 20),
        lambda: layered(counterexample_sequence(2), 25),
        lambda: decorated(5, 1, 15),
        lambda: bilayer_cayley(3, 30),
        lambda: from_cell(star_cell(5), 20),
    ])
    def test_deep_trees_rejected(self, build):
        """4**19 vertices and similar raise at once."""
        with pytest.raises(TreeError):
            build()

    def test_size_matches_count(self):
        """The upfront count is the size of the built tree."""
        assert decorated(3, 2, 3).size == check_tree_size("decorated", [1, 6, 12])
