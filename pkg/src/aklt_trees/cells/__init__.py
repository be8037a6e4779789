"""Cell graphs, loop diagrams, exact transfer polynomials and breaking criteria."""
from src.aklt_trees.cells.criteria import (
    CriterionResult,
    Phase,
    TreeCellResult,
    breaking_criterion,
    cell_iterate,
    decorated_threshold,
    tree_cell_condition,
)
from src.aklt_trees.cells.diagrams import AugmentedCell, LoopDiagram, enumerate_diagrams
from src.aklt_trees.cells.graph import (
    CellGraph,
    decorated_star_cell,
    load_cell,
    single_edge_cell,
    square_cell,
    star_cell,
)
from src.aklt_trees.cells.polynomials import (
    Convention,
    PolynomialDiff,
    TransferPoly,
    convention_report,
    transfer_polynomials,
)

__all__ = [
    "AugmentedCell",
    "CellGraph",
    "Convention",
    "CriterionResult",
    "LoopDiagram",
    "Phase",
    "PolynomialDiff",
    "TransferPoly",
    "TreeCellResult",
    "breaking_criterion",
    "cell_iterate",
    "convention_report",
    "decorated_star_cell",
    "decorated_threshold",
    "enumerate_diagrams",
    "load_cell",
    "single_edge_cell",
    "square_cell",
    "star_cell",
    "transfer_polynomials",
    "tree_cell_condition",
]
