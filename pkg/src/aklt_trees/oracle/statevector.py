"""Dense valence-bond state of a small site tree.

The state is assembled top-down: a singlet between the probe and the root's
parent leg, then at every vertex the Dicke projection of its legs onto the
physical spin, with a singlet on each child edge. What remains open are the
probe, the physical spins and the dangling half-spins, so

    R[p, p'] = sum psi[p, phi, h] B[h, h'] conj(psi[p', phi, h'])

is the probe operator of the whole tree without any transfer-map shortcut.
"""
import logging
import math
from typing import Hashable, List

import networkx as nx
import numpy as np

from src.aklt_trees.config import ORACLE_TOLERANCE, STATEVECTOR_BUDGET
from src.aklt_trees.oracle.boundary import BoundaryAssignment, leg_operators
from src.aklt_trees.oracle.sweep import root_operator
from src.aklt_trees.oracle.trees import FiniteTree, TreeKind
from src.aklt_trees.site.dense import SINGLET, dicke_state
from src.aklt_trees.utils.errors import BackendMismatchError, BudgetExceededError, ContractViolation

logger = logging.getLogger(__name__)

MAX_STATEVECTOR_SPINS = 10


def state_size(tree: FiniteTree) -> int:
    physical = math.prod(tree.degree(v) + 1 for v in tree.graph.nodes)
    return 2 * physical * 2 ** tree.dangling_count()


def _check_budget(tree: FiniteTree) -> None:
    if tree.kind is not TreeKind.SITES:
        raise ContractViolation("the dense state covers site trees only")
    if tree.spin_count > MAX_STATEVECTOR_SPINS:
        raise BudgetExceededError(
            f"tree has {tree.spin_count} spins, the dense state is limited to {MAX_STATEVECTOR_SPINS}",
            "Use the transfer sweep for larger trees.",
        )
    size = state_size(tree)
    if size > STATEVECTOR_BUDGET:
        raise BudgetExceededError(
            f"dense state needs {size} entries, budget is {STATEVECTOR_BUDGET}",
            "Use fewer dangling legs or the transfer sweep.",
        )


def build_state(tree: FiniteTree) -> tuple:
    """(psi, labels): psi has one axis per label ("probe", ("phys", v), ("leg", v, i))."""
    _check_budget(tree)
    psi = SINGLET.astype(complex)
    labels: List[Hashable] = ["probe", ("up", tree.root)]
    for v in nx.bfs_tree(tree.graph, tree.root):
        d = tree.degree(v)
        site = np.stack([dicke_state(d, k) for k in range(d + 1)]).reshape((d + 1,) + (2,) * d)
        axis = labels.index(("up", v))
        psi = np.tensordot(psi, site, axes=([axis], [1]))
        children = tree.children(v)
        labels = (
            labels[:axis] + labels[axis + 1:] + [("phys", v)]
            + [("down", c) for c in children]
            + [("leg", v, i) for i in range(len(tree.legs(v)))]
        )
        for c in children:
            axis = labels.index(("down", c))
            psi = np.tensordot(psi, SINGLET, axes=([axis], [0]))
            labels = labels[:axis] + labels[axis + 1:] + [("up", c)]
    return psi, labels


def dense_root_operator(tree: FiniteTree, b: BoundaryAssignment) -> np.ndarray:
    """Probe operator from the dense state, trace-normalized."""
    b.check_tree(tree)
    psi, labels = build_state(tree)
    order = (
        [labels.index("probe")]
        + [i for i, l in enumerate(labels) if isinstance(l, tuple) and l[0] == "phys"]
        + [i for i, l in enumerate(labels) if isinstance(l, tuple) and l[0] == "leg"]
    )
    psi = psi.transpose(order)
    labels = [labels[i] for i in order]

    applied = psi
    for axis, label in enumerate(labels):
        if isinstance(label, tuple) and label[0] == "leg":
            _, v, i = label
            op = leg_operators(tree, b, v)[i]
            applied = np.moveaxis(np.tensordot(applied, op, axes=([axis], [0])), -1, axis)
    out = applied.reshape(2, -1) @ psi.reshape(2, -1).conj().T
    return out * (2.0 / np.trace(out).real)


def check_sweep(tree: FiniteTree, b: BoundaryAssignment, tol: float = ORACLE_TOLERANCE) -> float:
    """Max entry difference between sweep and dense state; raises above tol."""
    gap = float(np.abs(root_operator(tree, b) - dense_root_operator(tree, b)).max())
    if gap > tol:
        raise BackendMismatchError(
            f"transfer sweep and dense state differ by {gap:.3e} on a {tree.size}-vertex tree"
        )
    logger.debug(f"sweep vs dense state on {tree.size} vertices: {gap:.3e}")
    return gap
