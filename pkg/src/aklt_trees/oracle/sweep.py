"""Leaf-to-root transfer sweep over a finite tree.

Every vertex maps the operators arriving on its child edges and dangling
legs to one operator on its parent edge; the root's parent edge ends on the
probe. Site vertices use the dense intertwiners of their degree, bilayer
vertices the dense bilayer map. Each intermediate operator is rescaled to
unit identity coefficient, which leaves every normalized expectation intact.
"""
import logging
from dataclasses import dataclass
from functools import reduce
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Union

import numpy as np

from src.aklt_trees.bilayer.map import build_bilayer_map
from src.aklt_trees.config import DEPTH_CONVERGENCE
from src.aklt_trees.oracle.boundary import BoundaryAssignment, leg_operators
from src.aklt_trees.oracle.trees import FiniteTree, TreeKind
from src.aklt_trees.pauli.operators import PauliWord
from src.aklt_trees.site.dense import intertwiners
from src.aklt_trees.utils.errors import ContractViolation

logger = logging.getLogger(__name__)

Observable = Union[None, int, PauliWord]


def _normalized(matrix: np.ndarray) -> np.ndarray:
    trace = np.trace(matrix).real
    if trace <= 0:
        raise ContractViolation("sweep produced an operator with nonpositive trace")
    return matrix * (matrix.shape[0] / trace)


def _vertex_map(tree: FiniteTree, v: int) -> Callable[[Sequence[np.ndarray]], np.ndarray]:
    if tree.kind is TreeKind.BILAYER:
        bilayer = build_bilayer_map(len(tree.children(v)) + len(tree.legs(v)))
        return bilayer.apply_product
    factors = intertwiners(tree.degree(v))
    return lambda ops: factors.apply(reduce(np.kron, ops))


def root_operator(tree: FiniteTree, b: BoundaryAssignment) -> np.ndarray:
    """Operator on the probe side of the root edge, trace-normalized."""
    b.check_tree(tree)
    done: Dict[int, np.ndarray] = {}
    for v in tree.postorder():
        inputs = [done.pop(c) for c in tree.children(v)] + leg_operators(tree, b, v)
        done[v] = _normalized(_vertex_map(tree, v)(inputs))
    return done[tree.root]


def _observable_word(tree: FiniteTree, observable: Observable) -> PauliWord:
    arity = 2 if tree.kind is TreeKind.BILAYER else 1
    if observable is None:
        return PauliWord.identity(arity)
    if isinstance(observable, PauliWord):
        word = observable
    else:
        word = PauliWord((int(observable),) + (0,) * (arity - 1))
    if word.arity != arity:
        raise ContractViolation(f"observable {word} has arity {word.arity}, the root edge carries {arity}")
    return word


def expectation_from_operator(matrix: np.ndarray, word: PauliWord) -> float:
    """Tr[sigma_w R] / Tr[R]."""
    return float((np.trace(word.to_dense() @ matrix) / np.trace(matrix)).real)


def contract_expectation(tree: FiniteTree, b: BoundaryAssignment, observable: Observable = None) -> float:
    """Normalized Pauli coefficient of the root operator.

    `observable` is None for the identity, a letter 1..3 for sigma_i at the
    root, or a PauliWord of the root edge's arity.
    """
    word = _observable_word(tree, observable)
    return expectation_from_operator(root_operator(tree, b), word)


@dataclass
class DepthSeries:
    depths: List[int]
    values: List[float]
    converged_at: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"depths": self.depths, "values": self.values, "converged_at": self.converged_at}


def converged_depth(depths: Sequence[int], values: Sequence[float],
                    tol: float = DEPTH_CONVERGENCE, stride: int = 1) -> Optional[int]:
    """First depth whose value is within tol of the value `stride` entries earlier.

    stride = 2 compares depths of equal parity, for sign-alternating series.
    """
    for i in range(stride, len(values)):
        if abs(values[i] - values[i - stride]) < tol:
            return depths[i]
    return None


def depth_series(factory: Callable[[int], FiniteTree], b: BoundaryAssignment, depths: Iterable[int],
                 observable: Observable = 3, tol: float = DEPTH_CONVERGENCE, stride: int = 1) -> DepthSeries:
    depths = list(depths)
    values = [contract_expectation(factory(n), b, observable) for n in depths]
    series = DepthSeries(depths, values, converged_depth(depths, values, tol, stride))
    logger.debug(f"depth series {values} converged at {series.converged_at}")
    return series
