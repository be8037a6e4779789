"""Boundary operators placed on the dangling legs of a finite tree.

Site trees take 2x2 operators, bilayer trees 4x4 operators on a pair of
half-spins. A dangling leg with sign -1 receives the flipped operator: every
Pauli component of odd weight changes sign, which for one qubit is
Tr(B) 1 - B.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from src.aklt_trees.config import PSD_FLOOR
from src.aklt_trees.oracle.trees import FiniteTree, TreeKind
from src.aklt_trees.pauli.operators import PAULI, BlochVector, ProductBoundary, is_psd, site_matrix
from src.aklt_trees.site.dense import pauli_components
from src.aklt_trees.utils.errors import BoundaryError

logger = logging.getLogger(__name__)

LegKey = Tuple[int, int]  # (vertex, index into its dangling signs)


def _odd_weight_mask(n: int) -> np.ndarray:
    grids = np.meshgrid(*([np.arange(4)] * n), indexing="ij")
    weight = sum((g > 0).astype(int) for g in grids)
    return (weight % 2).astype(bool)


def flip(matrix: np.ndarray) -> np.ndarray:
    """Negate the odd-weight Pauli components of a 2^n x 2^n operator."""
    matrix = np.asarray(matrix, dtype=complex)
    n = int(round(np.log2(matrix.shape[0])))
    comps = pauli_components(matrix, n)
    comps = np.where(_odd_weight_mask(n), -comps, comps)
    out = np.zeros_like(matrix)
    for idx in np.ndindex(*comps.shape):
        if comps[idx] != 0:
            word = PAULI[idx[0]]
            for a in idx[1:]:
                word = np.kron(word, PAULI[a])
            out += comps[idx] * word
    return out


def _validated(matrix: np.ndarray, dim: int, what: str) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape != (dim, dim):
        raise BoundaryError(f"{what}: expected a {dim}x{dim} operator, got shape {matrix.shape}")
    if not np.allclose(matrix, matrix.conj().T, atol=1e-12):
        raise BoundaryError(f"{what}: operator is not Hermitian")
    if not is_psd(matrix, PSD_FLOOR):
        raise BoundaryError(
            f"{what}: operator is not positive semidefinite",
            "Keep Bloch vectors inside the unit ball.",
        )
    return matrix


@dataclass
class BoundaryAssignment:
    """A base operator for every dangling leg plus per-leg overrides."""
    base: np.ndarray
    overrides: Dict[LegKey, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        self.base = np.asarray(self.base, dtype=complex)
        dim = self.base.shape[0] if self.base.ndim == 2 else 0
        if dim not in (2, 4):
            raise BoundaryError(f"boundary operators must be 2x2 or 4x4, got shape {self.base.shape}")
        self.base = _validated(self.base, dim, "base boundary")
        self.overrides = {
            key: _validated(op, dim, f"boundary at leg {key}") for key, op in self.overrides.items()
        }

    @property
    def dim(self) -> int:
        return self.base.shape[0]

    @classmethod
    def identity(cls, dim: int = 2) -> "BoundaryAssignment":
        return cls(np.eye(dim, dtype=complex))

    @classmethod
    def uniform(cls, x: BlochVector) -> "BoundaryAssignment":
        return cls(site_matrix(x.x))

    @classmethod
    def along(cls, axis: int, t: float) -> "BoundaryAssignment":
        return cls.uniform(BlochVector.along(axis, t))

    @classmethod
    def from_product(cls, tree: FiniteTree, b: ProductBoundary) -> "BoundaryAssignment":
        """One ProductBoundary site per dangling leg, legs in (vertex, index) order."""
        keys = dangling_legs(tree)
        if b.site_count != len(keys):
            raise BoundaryError(
                f"product boundary has {b.site_count} sites, tree has {len(keys)} dangling legs"
            )
        overrides = {key: site_matrix(b.x.x, sign) for key, sign in zip(keys, b.signs)}
        return cls(site_matrix(b.x.x), overrides)

    @classmethod
    def random(cls, tree: FiniteTree, rng: np.random.Generator) -> "BoundaryAssignment":
        """Independent Bloch vectors drawn uniformly from the unit ball."""
        overrides = {}
        for key in dangling_legs(tree):
            direction = rng.normal(size=3)
            direction /= np.linalg.norm(direction)
            radius = rng.uniform() ** (1.0 / 3.0)
            overrides[key] = site_matrix(radius * direction)
        return cls(np.eye(2, dtype=complex), overrides)

    def operator(self, vertex: int, index: int, sign: int) -> np.ndarray:
        op = self.overrides.get((vertex, index), self.base)
        if sign == 1:
            return op
        flipped = flip(op)
        if not is_psd(flipped, PSD_FLOOR):
            raise BoundaryError(
                f"flipped boundary at leg {(vertex, index)} is not positive semidefinite",
                "Use sign +1 on this leg or a boundary closer to the identity.",
            )
        return flipped

    def check_tree(self, tree: FiniteTree) -> None:
        expected = 4 if tree.kind is TreeKind.BILAYER else 2
        if self.dim != expected:
            raise BoundaryError(
                f"{tree.kind.value} trees take {expected}x{expected} boundaries, got {self.dim}x{self.dim}"
            )
        stray = set(self.overrides) - set(dangling_legs(tree))
        if stray:
            raise BoundaryError(f"overrides for legs {sorted(stray)} that the tree does not have")


def dangling_legs(tree: FiniteTree) -> List[LegKey]:
    return [(v, i) for v in sorted(tree.dangling) for i in range(len(tree.dangling[v]))]


def leg_operators(tree: FiniteTree, b: BoundaryAssignment, vertex: int) -> List[np.ndarray]:
    return [b.operator(vertex, i, sign) for i, sign in enumerate(tree.legs(vertex))]


def alternating_assignment(tree: FiniteTree, x: BlochVector, start: int = 1) -> BoundaryAssignment:
    """Boundary signs alternating with the generation of the dangling vertex."""
    overrides: Dict[LegKey, np.ndarray] = {}
    for v, i in dangling_legs(tree):
        sign = start * (-1) ** (tree.generation(v) - 1)
        overrides[(v, i)] = site_matrix(x.x, sign)
    return BoundaryAssignment(site_matrix(x.x), overrides)

