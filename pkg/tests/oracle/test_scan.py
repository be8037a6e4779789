"""Tests for order-parameter scans."""
import math

import pandas as pd
import pytest

from src.aklt_trees.oracle.scan import (
    SCAN_COLUMNS,
    order_parameter_scan,
    save_scan,
    scalar_sweep,
    vertex_scalar_map,
)
from src.aklt_trees.oracle.trees import bilayer_cayley, cayley
from src.aklt_trees.transfer.function import eval_F
from src.aklt_trees.transfer.sequence import counterexample_sequence
from src.aklt_trees.utils.errors import ContractViolation

T5 = math.sqrt((4 * math.sqrt(6) - 9) / 3)


class TestScalarMap:
    """Test the one-number-per-vertex contraction."""

    @pytest.mark.parametrize("d", [2, 3, 5, 8])
    def test_equal_inputs_give_F(self, d):
        assert vertex_scalar_map([0.4] * (d - 1)) == pytest.approx(eval_F(d, 0.4), abs=1e-13)

    def test_mixed_inputs(self):
        """Opposite inputs on a degree-3 vertex cancel in the numerator."""
        assert vertex_scalar_map([0.5, -0.5]) == pytest.approx(0.0, abs=1e-15)

    def test_scalar_sweep_cayley(self):
        assert scalar_sweep(cayley(5, 4), T5) == pytest.approx(T5, abs=1e-10)

    def test_rejects_bilayer(self):
        with pytest.raises(ContractViolation):
            scalar_sweep(bilayer_cayley(1, 2), 0.5)

    def test_rejects_large_t(self):
        with pytest.raises(ContractViolation):
            scalar_sweep(cayley(3, 2), 1.5)


class TestOrderParameterScan:
    """Test the tabulated scans."""

    def test_columns_and_order(self):
        df = order_parameter_scan("cayley", {"d": 3}, [0.2, 0.6], [1, 2, 3], workers=2)
        assert list(df.columns) == SCAN_COLUMNS
        assert list(df["depth"]) == [1, 1, 2, 2, 3, 3]
        assert list(df["t"]) == [0.2, 0.6] * 3
        assert (df["expectation"] - df["scalar_map_value"]).abs().max() < 1e-10

    def test_path(self):
        df = order_parameter_scan("cayley", {"d": 2}, [0.5], [10])
        assert df["expectation"].iloc[0] == pytest.approx(0.5 * 3.0 ** -10, rel=1e-9)

    def test_counterexample(self):
        df = order_parameter_scan("layered", {"seq": counterexample_sequence(2)}, [T5], [6, 7])
        assert df["params"].iloc[0] == "seq=counterexample_2"
        assert (df["expectation"].abs() - T5 / 9).abs().max() < 1e-10

    def test_depth_one_is_F(self):
        df = order_parameter_scan("cayley", {"d": 4}, [0.3], [1], axis=1)
        assert df["scalar_map_value"].iloc[0] == pytest.approx(eval_F(4, 0.3), abs=1e-13)

    def test_rejects_bilayer(self):
        with pytest.raises(ContractViolation):
            order_parameter_scan("bilayer_cayley", {"g": 2}, [0.1], [2])

    def test_rejects_unknown_family(self):
        with pytest.raises(ContractViolation):
            order_parameter_scan("hexagonal", {}, [0.1], [2])

    def test_rejects_axis(self):
        with pytest.raises(ContractViolation):
            order_parameter_scan("cayley", {"d": 3}, [0.1], [2], axis=4)

    def test_save(self, tmp_path):
        df = order_parameter_scan("cayley", {"d": 3}, [0.5], [2])
        path = save_scan(df, tmp_path / "scan.csv")
        loaded = pd.read_csv(path)
        assert list(loaded.columns) == SCAN_COLUMNS
        assert loaded["params"].iloc[0] == "d=3"
