"""Tests for core path utilities."""
from src.aklt_trees.config import BILAYER_DIR, CELLS_DIR, REPORTS_DIR, SEQUENCES_DIR
from src.aklt_trees.core.paths import (
    get_bilayer_reference_path,
    get_cell_path,
    get_report_path,
    get_sequence_path,
)


class TestInputPaths:
    """Test resolution of bundled inputs."""

    def test_bare_cell_name(self):
        """A bare name resolves into the cells directory with .json added."""
        path = get_cell_path("square")
        assert path == CELLS_DIR / "square.json"
        assert path.exists()

    def test_cell_name_with_suffix(self):
        """A name that already ends in .json is not suffixed twice."""
        assert get_cell_path("star5.json") == CELLS_DIR / "star5.json"

    def test_existing_path_is_kept(self, tmp_path):
        """An existing file path is returned unchanged."""
        cell = tmp_path / "mine.json"
        cell.write_text("{}")
        assert get_cell_path(cell) == cell

    def test_sequence_name(self):
        """Bundled sequences resolve with .txt added."""
        path = get_sequence_path("constant5")
        assert path == SEQUENCES_DIR / "constant5.txt"
        assert path.exists()

    def test_bilayer_reference(self):
        """Printed bilayer systems are keyed by g."""
        assert get_bilayer_reference_path(3) == BILAYER_DIR / "printed_g3.json"
        assert get_bilayer_reference_path(2).exists()


class TestReportPaths:
    """Test report path generation."""

    def test_kind_and_suffix(self):
        """Reports go under reports/<kind>/ with the given suffix."""
        path = get_report_path("scans", "cayley_d5", ".csv")
        assert path == REPORTS_DIR / "scans" / "cayley_d5.csv"

    def test_sanitizes_stem(self):
        """Unsafe characters in the stem are replaced."""
        path = get_report_path("scans", "d=5 t/0.5")
        assert "/" not in path.name
        assert " " not in path.name
        assert path.suffix == ".json"
