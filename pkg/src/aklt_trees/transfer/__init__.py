"""Scalar transfer function F_d, its fixed point and layered compositions."""
from src.aklt_trees.transfer.function import (
    FixedPointResult,
    continued_fraction_F,
    eval_F,
    fixed_point,
    two_sided_bounds,
)
from src.aklt_trees.transfer.sequence import (
    ComposeTrace,
    DegreeSequence,
    Growth,
    GrowthStats,
    classify_growth,
    compose_sequence,
    counterexample_sequence,
    load_degree_sequence,
)

__all__ = [
    "ComposeTrace",
    "DegreeSequence",
    "FixedPointResult",
    "Growth",
    "GrowthStats",
    "classify_growth",
    "compose_sequence",
    "continued_fraction_F",
    "counterexample_sequence",
    "eval_F",
    "fixed_point",
    "load_degree_sequence",
    "two_sided_bounds",
]
