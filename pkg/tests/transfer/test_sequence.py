"""Tests for degree sequences, compositions and growth classification."""
import math

import pytest

from src.aklt_trees.transfer.function import eval_F, fixed_point
from src.aklt_trees.transfer.sequence import (
    DegreeSequence,
    Growth,
    classify_growth,
    compose_sequence,
    counterexample_sequence,
    load_degree_sequence,
    parse_degree_sequence,
    partial_products,
)
from src.aklt_trees.utils.errors import ContractViolation, DegreeSequenceError


class TestDegreeSequence:
    """Test construction, parsing and expansion."""

    def test_constant(self):
        """A constant sequence repeats its one degree."""
        seq = DegreeSequence.constant(5)
        assert seq.expand(4) == [5, 5, 5, 5]

    def test_periodic_tail(self):
        """The last `period` degrees repeat."""
        seq = DegreeSequence((3, 2, 11), period=2)
        assert seq.expand(7) == [3, 2, 11, 2, 11, 2, 11]

    def test_finite_sequence_runs_out(self):
        """Asking past a finite sequence is an error."""
        seq = DegreeSequence((3, 4))
        with pytest.raises(DegreeSequenceError):
            seq.degree(3)

    def test_rejects_small_degrees(self):
        """Degree 1 layers are not allowed."""
        with pytest.raises(DegreeSequenceError):
            DegreeSequence((5, 1))

    def test_parse_with_comments(self):
        """Comments and blank lines are skipped."""
        seq = parse_degree_sequence("# header\n2\n\n5  # tail\nrepeat 1\n")
        assert seq.degrees == (2, 5)
        assert seq.period == 1

    def test_parse_rejects_trailing_content(self):
        """Nothing may follow the repeat directive."""
        with pytest.raises(DegreeSequenceError):
            parse_degree_sequence("5\nrepeat 1\n4\n")

    def test_parse_rejects_bad_directive(self):
        """repeat needs a positive integer."""
        with pytest.raises(DegreeSequenceError):
            parse_degree_sequence("5\nrepeat x\n")

    def test_load_bundled(self):
        """Bundled sequences load by name."""
        seq = load_degree_sequence("counterexample")
        assert seq.expand(5) == [2, 2, 5, 5, 5]

    def test_load_missing(self):
        """Missing files raise DegreeSequenceError."""
        with pytest.raises(DegreeSequenceError):
            load_degree_sequence("no_such_sequence")

    def test_counterexample_builder(self):
        """N degree-2 layers followed by the tail degree."""
        assert counterexample_sequence(3).expand(5) == [2, 2, 2, 5, 5]


class TestComposeSequence:
    """Test layered compositions of F."""

    def test_single_layer(self):
        """One layer is one evaluation of F."""
        trace = compose_sequence(DegreeSequence.constant(4), 0.9, 1)
        assert trace.value == pytest.approx(eval_F(4, 0.9))

    def test_constant_five_two_cycle(self):
        """t_5 alternates sign under F_5."""
        t5 = fixed_point(5).t_star
        trace = compose_sequence(DegreeSequence.constant(5), t5, 6)
        for k, value in enumerate(trace.steps, start=1):
            assert value == pytest.approx((-1) ** k * t5, abs=1e-10)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_counterexample_scaling(self, n):
        """N degree-2 layers over a degree-5 tail scale t_5 by 3^-N."""
        t5 = fixed_point(5).t_star
        trace = compose_sequence(counterexample_sequence(n), t5, n + 10)
        assert abs(trace.value) == pytest.approx(t5 / 3 ** n, abs=1e-8)

    def test_lower_bound_respected(self):
        """The iterate never falls below the composition bound."""
        trace = compose_sequence(DegreeSequence.constant(5), 1.0, 30)
        assert abs(trace.value) >= trace.lower_bound

    def test_rejects_bad_arguments(self):
        """t0 outside [0, 1] or no layers are rejected."""
        with pytest.raises(ContractViolation):
            compose_sequence(DegreeSequence.constant(5), 1.5, 3)
        with pytest.raises(ContractViolation):
            compose_sequence(DegreeSequence.constant(5), 0.5, 0)


class TestClassifyGrowth:
    """Test the growth exponent classification."""

    def test_partial_products(self):
        """a_k = prod 3/(d_i - 1)."""
        assert partial_products([4, 2]) == pytest.approx([1.0, 3.0])

    def test_constant_five_ordered(self):
        """(5-1)/3 > 1."""
        stats = classify_growth(DegreeSequence.constant(5))
        assert stats.classification is Growth.ORDERED
        assert stats.exact
        assert stats.mu == pytest.approx(4 / 3)

    def test_constant_four_unique(self):
        """(4-1)/3 = 1 sits on the unique side."""
        stats = classify_growth(DegreeSequence.constant(4))
        assert stats.classification is Growth.UNIQUE

    def test_alternating_tail(self):
        """2, 11 repeating: (1 * 10)/9 > 1."""
        stats = classify_growth(load_degree_sequence("alternating_2_11"))
        assert stats.classification is Growth.ORDERED
        assert stats.log_mu == pytest.approx(math.log(10 / 9) / 2)

    def test_finite_prefix_inconclusive(self):
        """A prefix whose mean log growth is near zero is inconclusive."""
        stats = classify_growth(DegreeSequence((4, 4, 4)))
        assert stats.classification is Growth.INCONCLUSIVE
        assert not stats.exact
