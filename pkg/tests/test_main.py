"""Tests for the command-line entry point."""
import json
import logging
import math

import pytest

from src.aklt_trees.main import (
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_VALIDATION,
    main,
    parse_int_list,
    parse_word,
)
from src.aklt_trees.oracle.scan import SCAN_COLUMNS
from src.aklt_trees.utils.errors import ContractViolation

T5 = math.sqrt((4 * math.sqrt(6) - 9) / 3)


@pytest.fixture(autouse=True)
def fresh_logger():
    """Drop handlers bound to a previous test's captured streams."""
    yield
    logger = logging.getLogger("src.aklt_trees")
    for handler in list(logger.handlers):
        handler.close()
        logger.removeHandler(handler)


def run_json(capsys, argv):
    code = main(argv)
    assert code == EXIT_OK
    return json.loads(capsys.readouterr().out)


class TestParsers:
    """Test small argument parsers."""

    def test_int_range(self):
        assert parse_int_list("1..3") == [1, 2, 3]
        assert parse_int_list("2,4,8") == [2, 4, 8]

    def test_word(self):
        assert parse_word("I13").letters == (0, 1, 3)

    def test_bad_word(self):
        with pytest.raises(ContractViolation):
            parse_word("I1x")


class TestFnCommand:
    """Test the scalar transfer function subcommand."""

    def test_fixed_point(self, capsys):
        data = run_json(capsys, ["fn", "--d", "5", "--fixed-point"])
        assert data["d"] == 5
        assert data["t_star"] == pytest.approx(T5, abs=1e-12)

    def test_no_fixed_point_at_four(self, capsys):
        data = run_json(capsys, ["fn", "--d", "4", "--fixed-point"])
        assert data["t_star"] is None

    def test_text_format(self, capsys):
        assert main(["fn", "--d", "5", "--fixed-point", "--format", "text"]) == EXIT_OK
        assert "t_star: " in capsys.readouterr().out

    def test_missing_degree(self, capsys):
        assert main(["fn"]) == EXIT_VALIDATION
        assert capsys.readouterr().out == ""

    def test_leafpath_default_layers(self, capsys):
        """Twenty layers of degree 5 are checked along one path, not built."""
        data = run_json(capsys, ["fn", "--d", "5", "--leafpath"])
        assert data["satisfied"] is True
        assert data["lower_bound"] == pytest.approx(0.25)
        assert data["depth"] == 20


class TestCellCommands:
    """Test cell, decorated and treecell subcommands."""

    def test_square_criterion(self, capsys):
        data = run_json(capsys, ["cell", "--file", "square", "--criterion"])
        assert data["slope"] == "-13/42"
        assert data["slope_reference"] == "-13/41"
        assert data["breaks"] is False

    def test_paper_convention(self, capsys):
        data = run_json(capsys, ["cell", "--file", "star3", "--convention", "paper"])
        assert data["q"] == ["1/1", "0/1", "-1/3"]
        assert data["convention"] == "paper"

    def test_unknown_cell(self, capsys):
        assert main(["cell", "--file", "no_such_cell"]) == EXIT_VALIDATION

    def test_decorated(self, capsys):
        data = run_json(capsys, ["decorated", "--d", "10", "--g", "1"])
        assert data["threshold"] == 10
        assert data["phase"] == "boundary"

    def test_treecell(self, capsys):
        data = run_json(capsys, ["treecell", "--file", "fork", "--check"])
        assert data["sum"] == "2/9"
        assert data["breaks"] is False

    def test_treecell_rejects_loops(self, capsys):
        assert main(["treecell", "--file", "square"]) == EXIT_VALIDATION


class TestBilayerCommand:
    """Test the bilayer subcommand."""

    def test_symmetric(self, capsys):
        data = run_json(capsys, ["bilayer", "--g", "1", "--symmetric"])
        assert data["x3"] == pytest.approx((math.sqrt(19) - 4) / 3, abs=1e-12)
        assert data["unstable"] is False

    def test_compare(self, capsys):
        data = run_json(capsys, ["bilayer", "--g", "1", "--compare"])
        assert all(d["matches"] for d in data["diffs"])

    def test_splitting_limit_is_numerical(self, capsys):
        assert main(["bilayer", "--g", "5", "--symmetric"]) == EXIT_NUMERICAL


class TestSimulateCommand:
    """Test finite-tree contraction from the command line."""

    def test_cayley_series(self, capsys):
        data = run_json(capsys, ["simulate", "--family", "cayley", "--d", "2", "--t", "0.5", "--depths", "1..3"])
        expected = [0.5 * (-1 / 3) ** n for n in (1, 2, 3)]
        assert data["series"]["values"] == pytest.approx(expected, abs=1e-12)

    def test_scan_csv(self, capsys):
        argv = ["simulate", "--family", "cayley", "--d", "3", "--scan", "--depths", "1,2",
                "--t-grid", "0.1,0.2", "--format", "csv"]
        assert main(argv) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == ",".join(SCAN_COLUMNS)
        assert len(lines) == 5

    def test_check_dense(self, capsys):
        data = run_json(capsys, ["simulate", "--family", "cayley", "--d", "3", "--t", "0.4",
                                 "--depths", "1,2", "--check-dense"])
        assert set(data["dense_gaps"]) == {"1", "2"}

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "out" / "fp.json"
        assert main(["fn", "--d", "5", "--fixed-point", "--output", str(path)]) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert json.loads(path.read_text())["d"] == 5

    @pytest.mark.parametrize("argv", [
        ["simulate", "--family", "layered"],
        ["simulate", "--family", "from_cell"],
    ])
    def test_family_input_required(self, capsys, argv):
        assert main(argv) == EXIT_VALIDATION
        assert capsys.readouterr().out == ""

    @pytest.mark.timeout(10)
    def test_oversized_tree_rejected(self, capsys):
        """A depth-30 Cayley tree exceeds the vertex limit."""
        assert main(["simulate", "--family", "cayley", "--d", "5", "--depths", "30"]) == EXIT_VALIDATION
        assert capsys.readouterr().out == ""
