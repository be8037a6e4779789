"""Uniform lower bound for trees whose root-to-leaf degree products grow.

If along every root-to-leaf path prod_{k<=n} (d_(i_k) - 1)/3 >= C mu^n for
all n, every composition of transfer functions along the tree stays above
(C^-1 mu^-1 / (1 - mu^-1) + 1)^-1 in magnitude.
"""
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional

import networkx as nx

from src.aklt_trees.config import LOG_SLACK
from src.aklt_trees.oracle.trees import FiniteTree
from src.aklt_trees.transfer.sequence import DegreeSequence
from src.aklt_trees.utils.errors import ContractViolation, TreeError

logger = logging.getLogger(__name__)


@dataclass
class LeafPathResult:
    satisfied: bool
    lower_bound: Optional[float]
    worst_margin: float
    depth: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "satisfied": self.satisfied,
            "lower_bound": self.lower_bound,
            "worst_margin": self.worst_margin,
            "depth": self.depth,
        }


def _check_parameters(C: float, mu: float) -> None:
    if C <= 0:
        raise ContractViolation(f"C must be positive, got {C}")
    if mu <= 1:
        raise ContractViolation(f"mu must exceed 1, got {mu}")


def _result(margins: Iterable[float], C: float, mu: float, depth: int) -> LeafPathResult:
    # an empty path set holds vacuously
    worst = min(margins, default=0.0)
    satisfied = worst >= -LOG_SLACK
    bound = None
    if satisfied:
        inv = 1.0 / mu
        bound = 1.0 / (inv / (C * (1.0 - inv)) + 1.0)
    logger.debug(f"leaf-path condition C={C}, mu={mu}: margin {worst:.3e}, satisfied={satisfied}")
    return LeafPathResult(satisfied, bound, worst, depth)


def leafpath_bound(tree: FiniteTree, C: float, mu: float) -> LeafPathResult:
    """Check the degree-product growth condition on every root-to-leaf path.

    Depths run over 1..n with the root excluded; each vertex contributes its
    full degree. worst_margin is the smallest value of
    sum ln((d-1)/3) - ln C - n ln mu seen on any path prefix.
    """
    _check_parameters(C, mu)
    if not nx.is_arborescence(tree.graph):
        raise TreeError("leafpath_bound needs a rooted tree")

    log_c = math.log(C)
    log_mu = math.log(mu)

    def margins():
        # (vertex, depth below root, running log product)
        stack = [(child, 1, 0.0) for child in tree.children(tree.root)]
        while stack:
            vertex, n, acc = stack.pop()
            acc += math.log((tree.degree(vertex) - 1) / 3.0)
            yield acc - log_c - n * log_mu
            stack.extend((child, n + 1, acc) for child in tree.children(vertex))

    return _result(margins(), C, mu, tree.depth)


def leafpath_sequence_bound(seq: DegreeSequence, C: float, mu: float, layers: int) -> LeafPathResult:
    """leafpath_bound for the layered tree of `seq` with `layers` generations.

    Every root-to-leaf path of a layered tree meets the same degrees, so one
    path decides the condition and the tree is never built.
    """
    _check_parameters(C, mu)
    if layers < 1:
        raise TreeError(f"depth must be positive, got {layers}")
    log_c = math.log(C)
    log_mu = math.log(mu)

    def margins():
        acc = 0.0
        for n in range(1, layers):
            acc += math.log((seq.degree(n + 1) - 1) / 3.0)
            yield acc - log_c - n * log_mu

    return _result(margins(), C, mu, layers)
