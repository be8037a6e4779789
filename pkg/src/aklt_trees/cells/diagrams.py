"""Loop diagrams on the augmented cell.

The augmentation hangs one pendant vertex off each boundary entry. A loop
diagram is an edge subset of the augmented cell whose degree is even at
every site; the root and the pendants carry the open ends. The admissible
subsets form a GF(2) vector space, which is enumerated exhaustively from a
basis.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Hashable, List, Tuple

from src.aklt_trees.cells.graph import CellGraph
from src.aklt_trees.config import ENUMERATION_EDGE_CAP
from src.aklt_trees.utils.errors import BudgetExceededError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AugmentedCell:
    """Cell plus pendant vertices ("pendant", k) joined to boundary entry k."""
    cell: CellGraph
    edges: Tuple[Tuple[Hashable, Hashable], ...]
    pendants: Tuple[Tuple[str, int], ...]

    @classmethod
    def build(cls, cell: CellGraph) -> "AugmentedCell":
        pendants = tuple(("pendant", k) for k in range(len(cell.boundary)))
        pendant_edges = tuple((x, p) for x, p in zip(cell.boundary, pendants))
        return cls(cell, tuple(cell.edges) + pendant_edges, pendants)

    def is_internal(self, v: Hashable) -> bool:
        return v != self.cell.root and v not in self.pendants


@dataclass(frozen=True)
class LoopDiagram:
    edges: FrozenSet[int]  # indices into AugmentedCell.edges
    k: int  # pendant vertices touched
    weight: Fraction  # product over touched sites of -1/(deg+1)

    @property
    def parity(self) -> int:
        return self.k % 2


def _nullspace_gf2(rows: List[int], n_cols: int) -> List[int]:
    """Basis (as bitmasks) of {x : row . x = 0 mod 2 for every row}."""
    pivots: Dict[int, int] = {}  # pivot column -> reduced row
    for row in rows:
        for col, prow in pivots.items():
            if row >> col & 1:
                row ^= prow
        if not row:
            continue
        col = row.bit_length() - 1
        for other in list(pivots):
            if pivots[other] >> col & 1:
                pivots[other] ^= row
        pivots[col] = row
    basis = []
    for free in range(n_cols):
        if free in pivots:
            continue
        vec = 1 << free
        for col, prow in pivots.items():
            if prow >> free & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis


def diagram_weight(aug: AugmentedCell, subset: FrozenSet[int]) -> Fraction:
    degree: Dict[Hashable, int] = {}
    for i in subset:
        for v in aug.edges[i]:
            degree[v] = degree.get(v, 0) + 1
    weight = Fraction(1)
    for v, deg in degree.items():
        if aug.is_internal(v):
            weight *= Fraction(-1, deg + 1)
    return weight


def enumerate_diagrams(cell: CellGraph, cap: int = ENUMERATION_EDGE_CAP) -> Dict[int, List[LoopDiagram]]:
    """All loop diagrams, grouped by the number k of pendants they touch.

    The empty diagram is in class 0 with weight 1.
    """
    aug = AugmentedCell.build(cell)
    n_edges = len(aug.edges)
    if n_edges > cap:
        raise BudgetExceededError(
            f"augmented cell has {n_edges} edges, enumeration cap is {cap}",
            "Use the dense oracle convention for larger cells.",
        )

    rows = []
    for x in cell.sites:
        mask = 0
        for i, edge in enumerate(aug.edges):
            if x in edge:
                mask |= 1 << i
        rows.append(mask)
    basis = _nullspace_gf2(rows, n_edges)
    pendant_edge = {i for i, e in enumerate(aug.edges) if e[1] in aug.pendants}

    classes: Dict[int, List[LoopDiagram]] = {}
    for choice in itertools.product((0, 1), repeat=len(basis)):
        mask = 0
        for bit, vec in zip(choice, basis):
            if bit:
                mask ^= vec
        subset = frozenset(i for i in range(n_edges) if mask >> i & 1)
        k = len(subset & pendant_edge)
        classes.setdefault(k, []).append(LoopDiagram(subset, k, diagram_weight(aug, subset)))
    logger.debug(
        f"{cell.name or 'cell'}: {2 ** len(basis)} diagrams over {n_edges} edges, "
        f"classes {sorted((k, len(v)) for k, v in classes.items())}"
    )
    return classes


def diagram_edges(cell: CellGraph, diagram: LoopDiagram) -> List[Tuple[Hashable, Hashable]]:
    aug = AugmentedCell.build(cell)
    return [aug.edges[i] for i in sorted(diagram.edges)]
