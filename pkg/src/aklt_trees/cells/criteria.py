"""Symmetry-breaking criteria for quasi-Cayley trees built from a cell."""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np
from scipy import optimize

from src.aklt_trees.cells.graph import CellGraph
from src.aklt_trees.cells.polynomials import TransferPoly, oracle_polynomials
from src.aklt_trees.config import BISECTION_MAX_ITER, BISECTION_TOLERANCE, CRITERION_GRID
from src.aklt_trees.core.report import rational_to_str
from src.aklt_trees.transfer.function import bracket_first_root
from src.aklt_trees.utils.errors import BackendMismatchError, CellGraphError, ContractViolation

logger = logging.getLogger(__name__)


@dataclass
class CriterionResult:
    """F_cell'(0) and, when it is below -1, the nonzero fixed point of F = -t."""
    cell: str
    slope: Fraction
    breaks: bool
    t_cell: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cell": self.cell,
            "slope": rational_to_str(self.slope),
            "breaks": self.breaks,
            "t_cell": self.t_cell,
        }


def breaking_criterion(cell: CellGraph, poly: Optional[TransferPoly] = None) -> CriterionResult:
    poly = poly or oracle_polynomials(cell)
    slope = poly.slope
    breaks = slope < -1
    t_cell = None
    if breaks:
        def gap(t: float) -> float:
            return poly.evaluate(t) + t

        grid = np.linspace(0.0, 1.0, CRITERION_GRID + 1)[1:]
        bracket = bracket_first_root(gap, grid)
        if bracket is not None:
            lo, hi = bracket
            t_cell = lo if lo == hi else optimize.bisect(
                gap, lo, hi, xtol=BISECTION_TOLERANCE, maxiter=BISECTION_MAX_ITER
            )
            t_cell = float(t_cell)
        else:
            logger.warning(f"{cell.name}: slope {slope} < -1 but no sign change of F + t on (0, 1]")
    return CriterionResult(cell.name or "cell", slope, breaks, t_cell)


class Phase(str, Enum):
    """Outcome of a threshold comparison."""
    ORDERED = "ordered"
    UNIQUE = "unique"
    BOUNDARY = "boundary"


def decorated_threshold(d: int, g: int) -> Phase:
    """Compare d with 3^(g+1) + 1 for a degree-d tree with g decorations per edge."""
    if d < 2 or g < 0:
        raise ContractViolation(f"need d >= 2 and g >= 0, got d={d}, g={g}")
    threshold = 3 ** (g + 1) + 1
    if d > threshold:
        return Phase.ORDERED
    if d < threshold:
        return Phase.UNIQUE
    return Phase.BOUNDARY


@dataclass
class TreeCellResult:
    cell: str
    sum: Fraction
    breaks: bool
    path_lengths: List[int]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cell": self.cell,
            "sum": rational_to_str(self.sum),
            "breaks": self.breaks,
            "path_lengths": self.path_lengths,
        }


def tree_cell_condition(cell: CellGraph, check: bool = False) -> TreeCellResult:
    """Sum over root-to-pendant paths of (1/3)^|path|, |path| = sites on it.

    With check=True the sum is compared with |F_cell'(0)| from the oracle.
    """
    if not cell.is_tree:
        raise CellGraphError(
            f"{cell.name or 'cell'}: tree_cell_condition needs a tree cell",
            "Use breaking_criterion for cells with loops.",
        )
    lengths = [cell.distance(x) for x in cell.boundary]
    total = sum((Fraction(1, 3 ** n) for n in lengths), Fraction(0))
    if check:
        slope = oracle_polynomials(cell).slope
        if abs(slope) != total:
            raise BackendMismatchError(
                f"{cell.name}: path sum {total} differs from |slope| {abs(slope)}"
            )
    return TreeCellResult(cell.name or "cell", total, total > 1, lengths)


def cell_iterate(cell: CellGraph, t: float, depth: int, poly: Optional[TransferPoly] = None) -> List[float]:
    """F_cell applied `depth` times starting from t; every iterate is returned."""
    if depth < 1:
        raise ContractViolation(f"depth must be positive, got {depth}")
    poly = poly or oracle_polynomials(cell)
    values = []
    value = float(t)
    for _ in range(depth):
        value = poly.evaluate(value)
        values.append(value)
    return values
