"""Tests for cell graphs and their file format."""
import json
from fractions import Fraction

import pytest

from src.aklt_trees.cells.graph import (
    CellGraph,
    cell_from_dict,
    decorated_star_cell,
    load_cell,
    save_cell,
    single_edge_cell,
    square_cell,
    star_cell,
)
from src.aklt_trees.utils.errors import CellGraphError


class TestCellValidation:
    """Test the structural invariants of a cell."""

    def test_square_is_valid(self):
        """The bundled square cell loads with its printed reference."""
        cell = load_cell("square")
        assert cell.name == "square"
        assert not cell.is_tree
        assert cell.reference.slope == Fraction(-13, 41)

    def test_rejects_odd_cycle(self):
        """Triangles are not bipartite."""
        with pytest.raises(CellGraphError):
            CellGraph((0, 1, 2, 3), ((0, 1), (1, 2), (2, 3), (3, 1)), 0, (2, 3))

    def test_rejects_root_of_degree_two(self):
        """The root links to exactly one site."""
        with pytest.raises(CellGraphError):
            CellGraph((0, 1, 2), ((0, 1), (0, 2)), 0, (1, 2))

    def test_rejects_root_in_boundary(self):
        """The root is never a boundary vertex."""
        with pytest.raises(CellGraphError):
            CellGraph((0, 1), ((0, 1),), 0, (0, 1))

    def test_rejects_dangling_site(self):
        """A site needs at least two legs."""
        with pytest.raises(CellGraphError):
            CellGraph((0, 1, 2), ((0, 1), (1, 2)), 0, (1,))

    def test_rejects_wrong_bipartition(self):
        """File bipartition labels must alternate along edges."""
        with pytest.raises(CellGraphError):
            CellGraph((0, 1), ((0, 1),), 0, (1,), bipartition={"A": (0, 1), "B": ()})

    def test_missing_keys(self):
        """Files without required keys are rejected."""
        with pytest.raises(CellGraphError):
            cell_from_dict({"vertices": [0, 1]})

    def test_missing_file(self):
        """Unknown bundled names raise CellGraphError."""
        with pytest.raises(CellGraphError):
            load_cell("no_such_cell")

    def test_invalid_json(self, tmp_path):
        """Unparseable files raise CellGraphError."""
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(CellGraphError):
            load_cell(path)


class TestCellQueries:
    """Test degrees, distances and pendant signs."""

    def test_star_degrees(self):
        """The star site has degree d."""
        cell = star_cell(5)
        assert cell.site_degree(1) == 5
        assert cell.sites == [1]

    def test_pendant_sign_by_distance(self):
        """+1 at odd distance, -1 at even distance."""
        cell = decorated_star_cell(4, 1)
        assert cell.distance(2) == 2
        assert cell.pendant_sign(2) == -1
        assert star_cell(4).pendant_sign(1) == 1

    def test_square_internal_edges(self):
        """The root edge is not internal."""
        cell = square_cell()
        assert len(cell.internal_edges()) == 4
        assert cell.top == 4

    def test_single_edge(self):
        """A degree-2 site with one boundary leg."""
        cell = single_edge_cell()
        assert cell.site_degree(1) == 2

    def test_bundled_star_matches_builder(self):
        """data/cells/star5.json describes star_cell(5)."""
        loaded = load_cell("star5")
        built = star_cell(5)
        assert loaded.boundary == built.boundary
        assert loaded.edges == built.edges

    def test_save_and_load(self, tmp_path):
        """A saved cell keeps its structure and reference."""
        path = tmp_path / "square.json"
        save_cell(square_cell(), path)
        loaded = load_cell(path)
        assert loaded.boundary == (1, 2, 3)
        assert loaded.reference == square_cell().reference
        assert json.loads(path.read_text())["root"] == 0


class TestBundledCells:
    """Test the cells shipped under data/cells."""

    def test_all_load(self, bundled_cells):
        assert {"square", "fork", "star3", "star5", "single_edge", "decorated_d5_g1"} <= set(bundled_cells)

    def test_names_follow_files(self, bundled_cells):
        assert all(cell.name == name for name, cell in bundled_cells.items())
