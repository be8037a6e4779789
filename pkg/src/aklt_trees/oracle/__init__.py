"""Finite trees, exact contraction and order-parameter scans."""
from src.aklt_trees.oracle.boundary import BoundaryAssignment, alternating_assignment, flip
from src.aklt_trees.oracle.scan import order_parameter_scan, save_scan, scalar_sweep
from src.aklt_trees.oracle.statevector import check_sweep, dense_root_operator
from src.aklt_trees.oracle.sweep import (
    DepthSeries,
    contract_expectation,
    converged_depth,
    depth_series,
    root_operator,
)
from src.aklt_trees.oracle.trees import (
    FiniteTree,
    TreeKind,
    bilayer_cayley,
    cayley,
    decorated,
    from_cell,
    layered,
    tree_families,
)

__all__ = [
    "BoundaryAssignment",
    "DepthSeries",
    "FiniteTree",
    "TreeKind",
    "alternating_assignment",
    "bilayer_cayley",
    "cayley",
    "check_sweep",
    "contract_expectation",
    "converged_depth",
    "decorated",
    "dense_root_operator",
    "depth_series",
    "flip",
    "from_cell",
    "layered",
    "order_parameter_scan",
    "root_operator",
    "save_scan",
    "scalar_sweep",
    "tree_families",
]
